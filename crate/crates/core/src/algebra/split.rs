use super::{AlgElement, CommAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Rational, RationalMatrix, Vector};
use crate::tensor::{self, BasisChange, ExtensionTensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitBlock {
    pub dim: usize,
    /// Basis of the block in the original coordinates.
    pub basis: Vec<Vector>,
    /// Structure of the block in that basis.
    pub tensor: ExtensionTensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub blocks: Vec<SplitBlock>,
    /// Rows are the concatenated block bases.
    pub change: BasisChange,
    /// False when some restricted slice has a characteristic polynomial that
    /// does not factor into rational linear factors.
    pub complete: bool,
    /// Block dimensions after every refinement step that changed the
    /// partition, in order.
    pub stages: Vec<Vec<usize>>,
}

impl SplitReport {
    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }
}

/// Restriction of `m` to the invariant subspace spanned by `basis`:
/// column `c` holds the coordinates of `m · basis[c]`.
fn restrict(m: &RationalMatrix, basis: &[Vector]) -> RationalMatrix {
    let n = m.rows();
    let images: Vec<Vector> = basis
        .iter()
        .map(|b| m.mul_vec(b).expect("square"))
        .collect();
    let coords =
        linalg::coordinates_in(basis, &images, n).expect("block is invariant under every slice");
    RationalMatrix::from_cols(&coords, basis.len())
}

enum Refinement {
    Unchanged,
    NotSplit,
    Split(Vec<Vec<Vector>>),
}

/// Generalized eigenspaces of `m` inside the block.
fn refine_block(m: &RationalMatrix, block: &[Vector]) -> Refinement {
    let n = m.rows();
    let r = restrict(m, block);
    let p = r.char_poly().expect("square");
    let roots = p.rational_roots();
    let total: usize = roots.iter().map(|(_, k)| k).sum();
    if total < block.len() {
        return Refinement::NotSplit;
    }
    if roots.len() <= 1 {
        return Refinement::Unchanged;
    }
    let parts = roots
        .iter()
        .map(|(lambda, _)| {
            let local = r.generalized_eigenspace(lambda).expect("square");
            local
                .iter()
                .map(|c| {
                    let mut v = linalg::zero_vector(n);
                    for (coef, b) in c.iter().zip(block) {
                        linalg::add_scaled(&mut v, coef, b);
                    }
                    v
                })
                .collect()
        })
        .collect();
    Refinement::Split(parts)
}

fn assemble(
    a: &CommAlgebra,
    blocks: Vec<Vec<Vector>>,
    complete: bool,
    stages: Vec<Vec<usize>>,
) -> Result<SplitReport> {
    let rows: Vec<Vector> = blocks.iter().flatten().cloned().collect();
    let change = BasisChange::from_basis(rows)?;
    let w = tensor::transform(a.tensor(), &change)?;

    let mut owner = Vec::with_capacity(a.dim());
    let mut offsets = Vec::with_capacity(blocks.len());
    for (b, basis) in blocks.iter().enumerate() {
        offsets.push(owner.len());
        owner.extend(std::iter::repeat_n(b, basis.len()));
    }
    let mut sub: Vec<ExtensionTensor> = blocks
        .iter()
        .map(|basis| ExtensionTensor::zero(basis.len()))
        .collect();
    for (i, j, k, v) in w.entries() {
        let b = owner[i - 1];
        assert!(
            owner[j - 1] == b && owner[k - 1] == b,
            "blocks of a generalized eigenspace split are ideals"
        );
        let off = offsets[b];
        sub[b].set(i - off, j - off, k - off, v.clone());
    }
    let blocks = blocks
        .into_iter()
        .zip(sub)
        .map(|(basis, tensor)| SplitBlock {
            dim: basis.len(),
            basis,
            tensor,
        })
        .collect();
    Ok(SplitReport {
        blocks,
        change,
        complete,
        stages,
    })
}

/// Decomposes the algebra into ideals by refining the common generalized
/// eigenspaces of the slice matrices, one slice at a time. Eigenvalues are
/// taken in ascending order within each block.
pub fn split(a: &CommAlgebra) -> Result<SplitReport> {
    let n = a.dim();
    let mut blocks: Vec<Vec<Vector>> = vec![(0..n).map(|i| linalg::unit_vector(n, i)).collect()];
    let mut complete = true;
    let mut stages = Vec::new();
    for m in a.tensor().slice_matrices() {
        let mut next = Vec::with_capacity(blocks.len());
        let mut changed = false;
        for block in blocks {
            match refine_block(&m, &block) {
                Refinement::Unchanged => next.push(block),
                Refinement::NotSplit => {
                    complete = false;
                    next.push(block);
                }
                Refinement::Split(parts) => {
                    changed = true;
                    next.extend(parts);
                }
            }
        }
        blocks = next;
        if changed {
            stages.push(blocks.iter().map(Vec::len).collect());
        }
    }
    assemble(a, blocks, complete, stages)
}

/// One refinement step: generalized eigenspaces of multiplication by `x`.
pub fn split_by_element(a: &CommAlgebra, x: &AlgElement) -> Result<SplitReport> {
    let n = a.dim();
    let m = a.regular_rep(x)?;
    let whole: Vec<Vector> = (0..n).map(|i| linalg::unit_vector(n, i)).collect();
    let (blocks, complete) = match refine_block(&m, &whole) {
        Refinement::Unchanged => (vec![whole], true),
        Refinement::NotSplit => (vec![whole], false),
        Refinement::Split(parts) => (parts, true),
    };
    let stages = if blocks.len() > 1 {
        vec![blocks.iter().map(Vec::len).collect()]
    } else {
        Vec::new()
    };
    assemble(a, blocks, complete, stages)
}

/// Basis `[u, k_1, ..., k_{n-1}]` where `u` is the unit and the `k_i` span
/// the kernel of a rational character, so that [`tensor::deunitize`]
/// applies to the transformed tensor.
///
/// The character is the eigenvalue map of the largest block of the full
/// split (the first one on ties).
pub fn unit_first_basis(a: &CommAlgebra) -> Result<(BasisChange, ExtensionTensor)> {
    let unit = a.find_unit().ok_or(Error::NoUnit)?;
    let report = split(a)?;
    if !report.complete {
        return Err(Error::NoCharacter);
    }
    let n = a.dim();
    let block = report
        .blocks
        .iter()
        .rev()
        .max_by_key(|b| b.dim)
        .expect("at least one block");
    let d = Rational::from_int(block.dim as i64);
    let character: Vector = a
        .tensor()
        .slice_matrices()
        .iter()
        .map(|m| restrict(m, &block.basis).trace() / &d)
        .collect();
    let kernel = RationalMatrix::from_rows(vec![character], n).nullspace();
    let mut basis = vec![unit.coords];
    basis.extend(kernel);
    let change = BasisChange::from_basis(basis)?;
    let w = tensor::transform(a.tensor(), &change)?;
    Ok((change, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul_mod(p: usize) -> CommAlgebra {
        let mut t = ExtensionTensor::zero(p);
        for a in 0..p {
            for b in a..p {
                t.set(a + 1, b + 1, (a * b) % p + 1, Rational::one());
            }
        }
        CommAlgebra::new(t).unwrap()
    }

    fn leib(n: usize) -> CommAlgebra {
        let mut t = ExtensionTensor::zero(n);
        for i in 1..=n {
            for j in i..=n {
                if i + j <= n {
                    t.set(i, j, i + j, Rational::one());
                }
            }
        }
        CommAlgebra::new(t).unwrap()
    }

    fn cross_products_vanish(a: &CommAlgebra, r: &SplitReport) {
        for (x, bx) in r.blocks.iter().enumerate() {
            for (y, by) in r.blocks.iter().enumerate() {
                if x == y {
                    continue;
                }
                for u in &bx.basis {
                    for v in &by.basis {
                        let p = a
                            .multiply(&AlgElement::new(u.clone()), &AlgElement::new(v.clone()))
                            .unwrap();
                        assert!(p.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn z3_splits_completely() {
        let a = mul_mod(3);
        let r = split(&a).unwrap();
        assert!(r.complete);
        assert_eq!(r.dims(), vec![1, 1, 1]);
        cross_products_vanish(&a, &r);
        let w = tensor::transform(a.tensor(), &r.change).unwrap();
        for m in w.slice_matrices() {
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        assert!(m[(i, j)].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn z4_first_stage_is_one_plus_three() {
        let a = mul_mod(4);
        let r = split(&a).unwrap();
        assert!(r.complete);
        let mut first = r.stages[0].clone();
        first.sort();
        assert_eq!(first, vec![1, 3]);
        // over Q the 3-block refines further: n3*n3 = n1 gives idempotents
        assert_eq!(r.dims().iter().sum::<usize>(), 4);
        assert_eq!(r.blocks.len(), 3);
        cross_products_vanish(&a, &r);

        let once = split_by_element(&a, &AlgElement::basis(4, 1)).unwrap();
        assert_eq!(once.dims(), vec![3, 1]);
        // n^i = e^i - e^0
        assert_eq!(
            once.blocks[0].basis,
            vec![
                AlgElement::from_ints(&[-1, 1, 0, 0]).coords,
                AlgElement::from_ints(&[-1, 0, 1, 0]).coords,
                AlgElement::from_ints(&[-1, 0, 0, 1]).coords,
            ]
        );
    }

    #[test]
    fn nilpotent_single_block() {
        let r = split(&leib(4)).unwrap();
        assert!(r.complete);
        assert_eq!(r.dims(), vec![4]);
        assert!(r.stages.is_empty());
        assert_eq!(r.blocks[0].tensor, *leib(4).tensor());
    }

    #[test]
    fn irrational_eigenvalues_reported_incomplete() {
        // e1 unit, e2*e2 = 2 e1: Q(sqrt 2)
        let t = ExtensionTensor::from_entries(
            2,
            vec![
                (1, 1, 1, Rational::one()),
                (1, 2, 2, Rational::one()),
                (2, 2, 1, Rational::from_int(2)),
            ],
        )
        .unwrap();
        let a = CommAlgebra::new(t).unwrap();
        let r = split(&a).unwrap();
        assert!(!r.complete);
        assert_eq!(r.dims(), vec![2]);
        assert_eq!(unit_first_basis(&a), Err(Error::NoCharacter));
    }

    #[test]
    fn unit_first_allows_deunitize() {
        for p in [2, 3, 4] {
            let a = mul_mod(p);
            let (_, w) = unit_first_basis(&a).unwrap();
            assert!(tensor::has_unit_at_front(&w));
            let d = tensor::deunitize(&w).unwrap();
            assert!(tensor::validate(&d).is_valid());
        }
        assert_eq!(unit_first_basis(&leib(3)), Err(Error::NoUnit));
        // the unit group of Z5 is cyclic of order 4, so x^4 = 1 brings in
        // characters with values ±i
        assert_eq!(unit_first_basis(&mul_mod(5)), Err(Error::NoCharacter));
    }
}
