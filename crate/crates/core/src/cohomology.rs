//! Trivial-coefficient cochain complex of the commutative algebra, second
//! cohomology and one-dimensional central extensions.

use crate::algebra::CommAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Rational, RationalMatrix, Vector};
use crate::tensor::ExtensionTensor;

/// Highest cochain degree stored densely.
pub const MAX_DEGREE: usize = 5;

/// Multilinear form of degree `p` given on basis tuples, stored densely
/// with the first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    n: usize,
    p: usize,
    values: Vec<Rational>,
}

impl Cochain {
    pub fn zero(n: usize, p: usize) -> Result<Self> {
        if p > MAX_DEGREE {
            return Err(Error::InvalidArgument(format!(
                "cochain degree {p} exceeds {MAX_DEGREE}"
            )));
        }
        Ok(Cochain {
            n,
            p,
            values: vec![Rational::zero(); n.pow(p as u32)],
        })
    }

    pub fn from_values(n: usize, p: usize, values: Vec<Rational>) -> Result<Self> {
        let mut c = Self::zero(n, p)?;
        if values.len() != c.values.len() {
            return Err(Error::DimensionMismatch {
                expected: c.values.len(),
                got: values.len(),
            });
        }
        c.values = values;
        Ok(c)
    }

    /// Degree-1 cochain from its values on the basis.
    pub fn linear(alpha: Vector) -> Self {
        Cochain {
            n: alpha.len(),
            p: 1,
            values: alpha,
        }
    }

    /// Degree-2 cochain `(x, y) -> x^T R y`.
    pub fn bilinear(r: &RationalMatrix) -> Result<Self> {
        if !r.is_square() {
            return Err(Error::DimensionMismatch {
                expected: r.rows(),
                got: r.cols(),
            });
        }
        let n = r.rows();
        Self::from_values(n, 2, r.to_rows().into_iter().flatten().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vector(&self.values)
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.n + (i - 1))
    }

    /// Value on the basis tuple `idx` (1-based).
    pub fn get(&self, idx: &[usize]) -> &Rational {
        assert_eq!(idx.len(), self.p, "tuple length must equal the degree");
        &self.values[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Rational) {
        assert_eq!(idx.len(), self.p, "tuple length must equal the degree");
        let o = self.offset(idx);
        self.values[o] = v;
    }

    /// The matrix of a degree-2 cochain.
    pub fn to_matrix(&self) -> Option<RationalMatrix> {
        (self.p == 2).then(|| {
            RationalMatrix::from_rows(
                self.values
                    .chunks(self.n)
                    .map(<[Rational]>::to_vec)
                    .collect(),
                self.n,
            )
        })
    }
}

/// All basis tuples of length `p` in lexicographic order, 1-based.
fn tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=n).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

/// `d_p ω(a_1, ..., a_{p+1}) = sum_{k=1}^p (-1)^k ω(a_1, ..., a_k * a_{k+1}, ..., a_{p+1})`,
/// with `d_0 = 0`.
pub fn coboundary(a: &CommAlgebra, omega: &Cochain) -> Result<Cochain> {
    let n = a.dim();
    if omega.n != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: omega.n,
        });
    }
    let p = omega.p;
    let mut out = Cochain::zero(n, p + 1)?;
    if p == 0 {
        return Ok(out);
    }
    let w = a.tensor();
    for t in tuples(n, p + 1) {
        let mut total = Rational::zero();
        for k in 0..p {
            let mut term = Rational::zero();
            let mut arg: Vec<usize> = Vec::with_capacity(p);
            arg.extend_from_slice(&t[..k]);
            arg.push(0);
            arg.extend_from_slice(&t[k + 2..]);
            for s in 1..=n {
                let c = w.get(t[k], t[k + 1], s);
                if c.is_zero() {
                    continue;
                }
                arg[k] = s;
                term += &c * omega.get(&arg);
            }
            // (-1)^k with k counted from 1
            if k % 2 == 0 {
                total -= term;
            } else {
                total += term;
            }
        }
        out.set(&t, total);
    }
    Ok(out)
}

/// Pairs `(i, j)`, `i <= j`, in the coordinate order of symmetric matrices.
fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect()
}

fn sym_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // rows before i contribute n, n-1, ..., n-i+2 pairs
    (i - 1) * (2 * n + 2 - i) / 2 + (j - i)
}

/// Upper-triangle coordinates of a symmetric matrix.
pub fn sym_to_vec(r: &RationalMatrix) -> Vector {
    sym_pairs(r.rows())
        .into_iter()
        .map(|(i, j)| r[(i - 1, j - 1)].clone())
        .collect()
}

pub fn vec_to_sym(n: usize, v: &[Rational]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for (c, (i, j)) in v.iter().zip(sym_pairs(n)) {
        m[(i - 1, j - 1)] = c.clone();
        m[(j - 1, i - 1)] = c.clone();
    }
    m
}

pub fn is_symmetric(r: &RationalMatrix) -> bool {
    r.is_square() && r.transpose() == *r
}

/// Linear system whose nullspace is Z²: for each `k` and `i < j`,
/// `sum_s (R^{is} W^{jk}_s - R^{js} W^{ik}_s) = 0`.
fn cocycle_system(w: &ExtensionTensor) -> RationalMatrix {
    let n = w.n();
    let m = n * (n + 1) / 2;
    let mut rows = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in 1..=n {
                let mut row = linalg::zero_vector(m);
                for s in 1..=n {
                    let a = w.get(j, k, s);
                    if !a.is_zero() {
                        row[sym_index(n, i, s)] += a;
                    }
                    let b = w.get(i, k, s);
                    if !b.is_zero() {
                        row[sym_index(n, j, s)] -= b;
                    }
                }
                if !linalg::is_zero_vector(&row) {
                    rows.push(row);
                }
            }
        }
    }
    RationalMatrix::from_rows(rows, m)
}

pub fn is_cocycle(w: &ExtensionTensor, r: &RationalMatrix) -> bool {
    if r.rows() != w.n() || !is_symmetric(r) {
        return false;
    }
    let sys = cocycle_system(w);
    sys.mul_vec(&sym_to_vec(r))
        .map(|v| linalg::is_zero_vector(&v))
        .unwrap_or(false)
}

fn cocycle_vectors(w: &ExtensionTensor) -> Vec<Vector> {
    let n = w.n();
    let sys = cocycle_system(w);
    if sys.rows() == 0 {
        let m = n * (n + 1) / 2;
        return (0..m).map(|i| linalg::unit_vector(m, i)).collect();
    }
    sys.nullspace()
}

fn coboundary_vectors(w: &ExtensionTensor) -> Vec<Vector> {
    let n = w.n();
    let rows: Vec<Vector> = (1..=n)
        .map(|k| sym_to_vec(&w.row_matrix(k).expect("index in range")))
        .collect();
    linalg::span_basis(&rows, n * (n + 1) / 2)
}

/// Basis of the symmetric solutions of the cocycle condition.
pub fn cocycle_space2(w: &ExtensionTensor) -> Vec<RationalMatrix> {
    cocycle_vectors(w)
        .iter()
        .map(|v| vec_to_sym(w.n(), v))
        .collect()
}

/// Canonical basis of the span of the row matrices `W_(k)`.
pub fn coboundary_space2(w: &ExtensionTensor) -> Vec<RationalMatrix> {
    coboundary_vectors(w)
        .iter()
        .map(|v| vec_to_sym(w.n(), v))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Report {
    pub dim_z2: usize,
    pub dim_b2: usize,
    pub dim_h2: usize,
    /// One cocycle per basis class of H², independent modulo B².
    pub representatives: Vec<RationalMatrix>,
    pub coboundary_basis: Vec<RationalMatrix>,
}

pub fn h2(w: &ExtensionTensor) -> Result<H2Report> {
    let n = w.n();
    let m = n * (n + 1) / 2;
    let z = cocycle_vectors(w);
    let b = coboundary_vectors(w);
    let z_rank = linalg::rank_of(&z, m);
    let mut joint = z.clone();
    joint.extend(b.iter().cloned());
    if linalg::rank_of(&joint, m) != z_rank {
        return Err(Error::CoboundaryNotCocycle);
    }
    let candidates = linalg::span_basis(&z, m);
    let reps = linalg::complete_basis(&b, &candidates, m);
    Ok(H2Report {
        dim_z2: z_rank,
        dim_b2: b.len(),
        dim_h2: z_rank - b.len(),
        representatives: reps.iter().map(|v| vec_to_sym(n, v)).collect(),
        coboundary_basis: b.iter().map(|v| vec_to_sym(n, v)).collect(),
    })
}

/// Symmetric matrix known to satisfy the cocycle condition for some tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    r: RationalMatrix,
}

impl Cocycle2 {
    pub fn new(w: &ExtensionTensor, r: RationalMatrix) -> Result<Self> {
        if r.rows() != w.n() || r.cols() != w.n() {
            return Err(Error::DimensionMismatch {
                expected: w.n(),
                got: r.rows(),
            });
        }
        if !is_cocycle(w, &r) {
            return Err(Error::NotCocycle);
        }
        Ok(Cocycle2 { r })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.r
    }
}

/// `e^i * e^j = sum_k W^{ij}_k e^k + R^{ij} e^{n+1}` with `e^{n+1}`
/// annihilating everything.
pub fn extend_with_cocycle(w: &ExtensionTensor, r: &Cocycle2) -> Result<ExtensionTensor> {
    let n = w.n();
    if !is_cocycle(w, &r.r) {
        return Err(Error::NotCocycle);
    }
    let mut out = ExtensionTensor::zero(n + 1).with_labeling(w.labeling());
    for (i, j, k, v) in w.entries() {
        out.set(i, j, k, v.clone());
    }
    for i in 1..=n {
        for j in i..=n {
            let v = &r.r[(i - 1, j - 1)];
            if !v.is_zero() {
                out.set(i, j, n + 1, v.clone());
            }
        }
    }
    Ok(out)
}

/// One extension per H² basis class, or the trivial extension when H² = 0.
pub fn enumerate_extensions(w: &ExtensionTensor) -> Result<Vec<ExtensionTensor>> {
    let report = h2(w)?;
    let n = w.n();
    let reps = if report.representatives.is_empty() {
        vec![RationalMatrix::zeros(n, n)]
    } else {
        report.representatives
    };
    reps.into_iter()
        .map(|r| extend_with_cocycle(w, &Cocycle2 { r }))
        .collect()
}

/// Scalar `c != 0` with `r2 - c r1` a coboundary, if one exists.
///
/// Extensions by `r1` and `c r1` are isomorphic through `e^{n+1} -> c e^{n+1}`,
/// so such pairs give the same extended algebra even though the classes
/// differ.
pub fn rescaling_factor(
    w: &ExtensionTensor,
    r1: &RationalMatrix,
    r2: &RationalMatrix,
) -> Option<Rational> {
    let n = w.n();
    let m = n * (n + 1) / 2;
    let v1 = sym_to_vec(r1);
    let v2 = sym_to_vec(r2);
    let b = coboundary_vectors(w);
    if linalg::rank_of(&[b.clone(), vec![v1.clone()]].concat(), m) == b.len() {
        // r1 is itself a coboundary
        return None;
    }
    let mut basis = vec![v1];
    basis.extend(b);
    let coords = linalg::coordinates_in(&basis, &[v2], m)?;
    let c = coords[0][0].clone();
    (!c.is_zero()).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{self, BasisChange};

    fn q(x: i64) -> Rational {
        Rational::from_int(x)
    }

    fn leib(n: usize) -> ExtensionTensor {
        let mut t = ExtensionTensor::zero(n);
        for i in 1..=n {
            for j in i..=n {
                if i + j <= n {
                    t.set(i, j, i + j, Rational::one());
                }
            }
        }
        t
    }

    fn crmhd() -> ExtensionTensor {
        let mut t = ExtensionTensor::zero(4);
        for j in 1..=4 {
            t.set(1, j, j, Rational::one());
        }
        t.set(2, 3, 4, q(-1));
        t
    }

    fn alg(w: &ExtensionTensor) -> CommAlgebra {
        CommAlgebra::new(w.clone()).unwrap()
    }

    #[test]
    fn sym_coordinates() {
        let n = 3;
        for (pos, (i, j)) in sym_pairs(n).into_iter().enumerate() {
            assert_eq!(sym_index(n, i, j), pos);
            assert_eq!(sym_index(n, j, i), pos);
        }
        let r = RationalMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 5], &[3, 5, 6]]);
        assert_eq!(vec_to_sym(3, &sym_to_vec(&r)), r);
    }

    #[test]
    fn d0_and_d1() {
        let a = alg(&leib(2));
        let lam = Cochain::from_values(2, 0, vec![q(7)]).unwrap();
        let d = coboundary(&a, &lam).unwrap();
        assert_eq!(d.degree(), 1);
        assert!(d.is_zero());

        let alpha = Cochain::linear(vec![q(3), q(5)]);
        let d = coboundary(&a, &alpha).unwrap().to_matrix().unwrap();
        let expect = leib(2).row_matrix(2).unwrap().scale(&q(-5));
        assert_eq!(d, expect);

        let dd = coboundary(&a, &coboundary(&a, &alpha).unwrap()).unwrap();
        assert_eq!(dd.degree(), 3);
        assert!(dd.is_zero());

        assert!(coboundary(&a, &Cochain::linear(vec![q(1)])).is_err());
        assert!(Cochain::zero(2, 6).is_err());
    }

    #[test]
    fn spaces_small() {
        let z = ExtensionTensor::zero(2);
        assert_eq!(cocycle_space2(&z).len(), 3);
        assert!(coboundary_space2(&z).is_empty());
        let r = h2(&z).unwrap();
        assert_eq!((r.dim_z2, r.dim_b2, r.dim_h2), (3, 0, 3));

        let l2 = leib(2);
        let zs = cocycle_space2(&l2);
        assert_eq!(zs.len(), 2);
        assert!(zs.iter().all(|m| m[(1, 1)].is_zero()));
        assert_eq!(
            coboundary_space2(&l2),
            vec![RationalMatrix::from_ints(&[&[1, 0], &[0, 0]])]
        );
        let r = h2(&l2).unwrap();
        assert_eq!((r.dim_z2, r.dim_b2, r.dim_h2), (2, 1, 1));
        assert_eq!(
            r.representatives,
            vec![RationalMatrix::from_ints(&[&[0, 1], &[1, 0]])]
        );

        assert_eq!(coboundary_space2(&leib(3)).len(), 2);
    }

    #[test]
    fn row_matrices_are_cocycles() {
        for w in [leib(4), crmhd()] {
            for k in 1..=w.n() {
                assert!(is_cocycle(&w, &w.row_matrix(k).unwrap()));
            }
        }
        assert!(!is_cocycle(
            &leib(2),
            &RationalMatrix::from_ints(&[&[0, 0], &[0, 1]])
        ));
        assert!(!is_cocycle(
            &leib(2),
            &RationalMatrix::from_ints(&[&[0, 1], &[0, 0]])
        ));
    }

    #[test]
    fn extension_examples() {
        let l2 = leib(2);
        let r = Cocycle2::new(&l2, RationalMatrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
        let w3 = extend_with_cocycle(&l2, &r).unwrap();
        assert_eq!(w3, leib(3));
        assert_eq!(tensor::reduce(&w3, 1).unwrap(), l2);

        let trivial = extend_with_cocycle(
            &crmhd(),
            &Cocycle2::new(&crmhd(), RationalMatrix::zeros(4, 4)).unwrap(),
        )
        .unwrap();
        assert_eq!(trivial.n(), 5);
        assert_eq!(trivial.nnz(), crmhd().nnz());
        assert!(trivial.slice_matrix(5).unwrap().is_zero());

        assert_eq!(
            Cocycle2::new(&l2, RationalMatrix::from_ints(&[&[0, 0], &[0, 1]])),
            Err(Error::NotCocycle)
        );
    }

    #[test]
    fn coboundary_extension_is_sheared_trivial() {
        let w = leib(3);
        let n = 3;
        let lambda = [q(2), q(-1), q(3)];
        let mut r = RationalMatrix::zeros(n, n);
        for (s, l) in lambda.iter().enumerate() {
            r = r.add(&w.row_matrix(s + 1).unwrap().scale(l)).unwrap();
        }
        let ext = extend_with_cocycle(&w, &Cocycle2::new(&w, r).unwrap()).unwrap();
        let mut rows: Vec<Vector> = (0..n)
            .map(|k| {
                let mut v = linalg::unit_vector(n + 1, k);
                v[n] = lambda[k].clone();
                v
            })
            .collect();
        rows.push(linalg::unit_vector(n + 1, n));
        let shear = BasisChange::from_basis(rows).unwrap();
        let trivial =
            extend_with_cocycle(&w, &Cocycle2::new(&w, RationalMatrix::zeros(n, n)).unwrap())
                .unwrap();
        assert_eq!(tensor::transform(&ext, &shear).unwrap(), trivial);
    }

    #[test]
    fn enumerate_examples() {
        let e1 = enumerate_extensions(&ExtensionTensor::zero(1)).unwrap();
        assert_eq!(e1, vec![leib(2)]);
        assert_eq!(enumerate_extensions(&leib(2)).unwrap(), vec![leib(3)]);
        let e2 = enumerate_extensions(&ExtensionTensor::zero(2)).unwrap();
        assert_eq!(e2.len(), 3);
        for w in e2 {
            assert!(tensor::validate(&w).is_valid());
        }
    }

    #[test]
    fn crmhd_h2_consistent() {
        let r = h2(&crmhd()).unwrap();
        assert_eq!(r.dim_h2, r.dim_z2 - r.dim_b2);
        for rep in &r.representatives {
            assert!(is_cocycle(&crmhd(), rep));
        }
    }

    #[test]
    fn rescaling() {
        let l2 = leib(2);
        let r1 = RationalMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let r2 = RationalMatrix::from_ints(&[&[5, 3], &[3, 0]]);
        assert_eq!(rescaling_factor(&l2, &r1, &r2), Some(q(3)));
        let b = RationalMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        assert_eq!(rescaling_factor(&l2, &b, &r2), None);
        assert_eq!(rescaling_factor(&l2, &r1, &b), None);
    }
}
