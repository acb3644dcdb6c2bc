use super::{ExtensionTensor, TensorEntries};
use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};

/// Invertible change of basis. Row `i'` of `a` expresses the new basis
/// element `e^{i'}` in the old basis: `e^{i'} = sum_i a[i'][i] e^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    a: RationalMatrix,
    a_inv: RationalMatrix,
}

impl BasisChange {
    pub fn new(a: RationalMatrix) -> Result<Self> {
        let a_inv = a.invert()?;
        Ok(BasisChange { a, a_inv })
    }

    pub fn identity(n: usize) -> Self {
        BasisChange {
            a: RationalMatrix::identity(n),
            a_inv: RationalMatrix::identity(n),
        }
    }

    /// New basis given as a list of old-coordinate vectors.
    pub fn from_basis(vectors: Vec<Vec<Rational>>) -> Result<Self> {
        let n = vectors.len();
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: vectors.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n),
            });
        }
        Self::new(RationalMatrix::from_rows(vectors, n))
    }

    /// New basis element `i'` is old element `perm[i']` (0-based).
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut a = RationalMatrix::zeros(n, n);
        for (new, &old) in perm.iter().enumerate() {
            if old >= n {
                return Err(Error::IndexOutOfRange { index: old + 1, n });
            }
            a[(new, old)] = Rational::one();
        }
        Self::new(a)
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn inverse_matrix(&self) -> &RationalMatrix {
        &self.a_inv
    }

    pub fn inverse(&self) -> Self {
        BasisChange {
            a: self.a_inv.clone(),
            a_inv: self.a.clone(),
        }
    }

    /// Apply `self` first, then `next` (expressed in the basis produced by
    /// `self`).
    pub fn then(&self, next: &BasisChange) -> Result<Self> {
        Ok(BasisChange {
            a: next.a.mul(&self.a)?,
            a_inv: self.a_inv.mul(&next.a_inv)?,
        })
    }
}

/// `W'^{i'j'}_{k'} = sum A^{i'}_i A^{j'}_j (A^{-1})^k_{k'} W^{ij}_k`.
pub fn transform(w: &ExtensionTensor, b: &BasisChange) -> Result<ExtensionTensor> {
    let n = w.n();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.dim(),
        });
    }
    let a = b.matrix();
    let ainv = b.inverse_matrix();
    let d = w.dense();
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;

    // contract one index at a time: O(n^4)
    let mut t1 = vec![Rational::zero(); n * n * n];
    for ip in 0..n {
        for i in 0..n {
            let c = &a[(ip, i)];
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let v = &d[idx(i, j, k)];
                    if !v.is_zero() {
                        t1[idx(ip, j, k)] += c * v;
                    }
                }
            }
        }
    }
    let mut t2 = vec![Rational::zero(); n * n * n];
    for ip in 0..n {
        for jp in ip..n {
            for j in 0..n {
                let c = &a[(jp, j)];
                if c.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let v = &t1[idx(ip, j, k)];
                    if !v.is_zero() {
                        t2[idx(ip, jp, k)] += c * v;
                    }
                }
            }
        }
    }
    let mut t3 = vec![Rational::zero(); n * n * n];
    for ip in 0..n {
        for jp in ip..n {
            for k in 0..n {
                let v = &t2[idx(ip, jp, k)];
                if v.is_zero() {
                    continue;
                }
                for kp in 0..n {
                    let c = &ainv[(k, kp)];
                    if !c.is_zero() {
                        t3[idx(ip, jp, kp)] += v * c;
                    }
                }
            }
        }
    }
    let out = ExtensionTensor::from_dense(n, &t3, w.labeling());
    debug_assert_eq!(
        super::validate(w).is_valid(),
        super::validate(&out).is_valid(),
        "basis change altered validity"
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_noop() {
        let one = Rational::one();
        let w =
            ExtensionTensor::from_entries(3, vec![(1, 1, 2, one.clone()), (1, 2, 3, one)]).unwrap();
        assert_eq!(transform(&w, &BasisChange::identity(3)).unwrap(), w);
        assert!(matches!(
            transform(&w, &BasisChange::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn scaling_a_generator() {
        // e1*e1 = e2; with e1' = 2 e1 we get e1'*e1' = 4 e2
        let w = ExtensionTensor::from_entries(2, vec![(1, 1, 2, Rational::one())]).unwrap();
        let b = BasisChange::new(RationalMatrix::from_ints(&[&[2, 0], &[0, 1]])).unwrap();
        let t = transform(&w, &b).unwrap();
        assert_eq!(t.get(1, 1, 2), Rational::from_int(4));
        assert_eq!(t.nnz(), 1);
    }

    #[test]
    fn singular_change_rejected() {
        assert_eq!(
            BasisChange::new(RationalMatrix::from_ints(&[&[1, 1], &[1, 1]])),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn composition() {
        let b1 = BasisChange::new(RationalMatrix::from_ints(&[&[1, 1], &[0, 1]])).unwrap();
        let b2 = BasisChange::permutation(&[1, 0]).unwrap();
        let w = ExtensionTensor::from_entries(2, vec![(1, 1, 2, Rational::one())]).unwrap();
        let step = transform(&transform(&w, &b1).unwrap(), &b2).unwrap();
        let once = transform(&w, &b1.then(&b2).unwrap()).unwrap();
        assert_eq!(step, once);
    }
}
