use serde::Serialize;

use super::TensorEntries;
use crate::linalg::{Rational, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `W^{ij}_k != W^{ji}_k`; indices `(i, j, k)`.
    Symmetry,
    /// `sum_k W^{sk}_i W^{qp}_k != sum_k W^{qk}_i W^{sp}_k`; indices `(i, s, q, p)`.
    Commutator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// 1-based internal indices.
    pub indices: Vec<usize>,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub symmetric: bool,
    pub commuting: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.symmetric && self.commuting && self.violations.is_empty()
    }
}

/// Checks both universality conditions: symmetry in the upper indices and
/// pairwise commutation of the slice matrices.
pub fn validate<T: TensorEntries + ?Sized>(w: &T) -> ValidationReport {
    let n = w.dim();
    let d = w.dense();
    let at = |i: usize, j: usize, k: usize| &d[(i * n + j) * n + k];

    let mut violations = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let (a, b) = (at(i, j, k), at(j, i, k));
                if a != b {
                    violations.push(Violation {
                        kind: ViolationKind::Symmetry,
                        indices: vec![i + 1, j + 1, k + 1],
                        lhs: a.clone(),
                        rhs: b.clone(),
                    });
                }
            }
        }
    }
    let symmetric = violations.is_empty();

    // slice s: row k, column j holds W^{sj}_k
    let slices: Vec<RationalMatrix> = (0..n)
        .map(|s| {
            let mut m = RationalMatrix::zeros(n, n);
            for j in 0..n {
                for k in 0..n {
                    m[(k, j)] = at(s, j, k).clone();
                }
            }
            m
        })
        .collect();
    let mut commuting = true;
    for s in 0..n {
        for q in (s + 1)..n {
            let sq = slices[s].mul(&slices[q]).expect("square");
            let qs = slices[q].mul(&slices[s]).expect("square");
            for i in 0..n {
                for p in 0..n {
                    if sq[(i, p)] != qs[(i, p)] {
                        commuting = false;
                        violations.push(Violation {
                            kind: ViolationKind::Commutator,
                            indices: vec![i + 1, s + 1, q + 1, p + 1],
                            lhs: sq[(i, p)].clone(),
                            rhs: qs[(i, p)].clone(),
                        });
                    }
                }
            }
        }
    }

    ValidationReport {
        symmetric,
        commuting,
        violations,
    }
}
