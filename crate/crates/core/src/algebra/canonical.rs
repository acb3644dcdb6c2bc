use super::CommAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::tensor::{self, BasisChange, ExtensionTensor};

/// Basis adapted to the power filtration of a nilpotent algebra.
///
/// The new basis lists a complement of `A^2` in `A`, then a complement of
/// `A^3` in `A^2`, and so on. Each complement is taken greedily from the
/// canonical basis of the current layer, so the result is deterministic and
/// a tensor that is already adapted comes back unchanged.
pub fn canonicalize(a: &CommAlgebra) -> Result<(BasisChange, ExtensionTensor)> {
    let layers = a.power_filtration();
    if layers.last().is_none_or(|l| !l.is_empty()) {
        return Err(Error::NotNilpotent);
    }
    let n = a.dim();
    let mut basis: Vec<Vector> = Vec::with_capacity(n);
    for pair in layers.windows(2) {
        let (upper, deeper) = (&pair[0], &pair[1]);
        basis.extend(linalg::complete_basis(deeper, upper, n));
    }
    debug_assert_eq!(basis.len(), n);
    let change = BasisChange::from_basis(basis)?;
    let w = tensor::transform(a.tensor(), &change)?;
    debug_assert!(tensor::is_canonical_solvable(&w));
    Ok((change, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Rational, RationalMatrix};

    fn leib3() -> ExtensionTensor {
        ExtensionTensor::from_entries(
            3,
            vec![(1, 1, 2, Rational::one()), (1, 2, 3, Rational::one())],
        )
        .unwrap()
    }

    #[test]
    fn already_canonical_is_fixed() {
        let a = CommAlgebra::new(leib3()).unwrap();
        let (b, w) = canonicalize(&a).unwrap();
        assert!(b.matrix().is_identity());
        assert_eq!(w, leib3());
    }

    #[test]
    fn shuffled_leibnitz() {
        let b0 = BasisChange::new(RationalMatrix::from_ints(&[
            &[0, 1, 1],
            &[2, 0, 1],
            &[1, 1, 0],
        ]))
        .unwrap();
        let shuffled = tensor::transform(&leib3(), &b0).unwrap();
        assert!(!tensor::is_canonical_solvable(&shuffled));
        let a = CommAlgebra::new(shuffled.clone()).unwrap();
        let (b, w) = canonicalize(&a).unwrap();
        assert!(tensor::is_canonical_solvable(&w));
        assert_eq!(tensor::transform(&shuffled, &b).unwrap(), w);
        assert_eq!(
            CommAlgebra::new(w).unwrap().filtration_dims(),
            vec![3, 2, 1, 0]
        );
    }

    #[test]
    fn zero_stays_zero() {
        let b0 = BasisChange::new(RationalMatrix::from_ints(&[&[1, 2], &[3, 4]])).unwrap();
        let z = tensor::transform(&ExtensionTensor::zero(2), &b0).unwrap();
        let (_, w) = canonicalize(&CommAlgebra::new(z).unwrap()).unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn unital_rejected() {
        let u = tensor::unitize(&leib3());
        assert_eq!(
            canonicalize(&CommAlgebra::new(u).unwrap()),
            Err(Error::NotNilpotent)
        );
    }
}
