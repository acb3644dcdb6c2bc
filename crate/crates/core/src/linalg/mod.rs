//! Exact linear algebra over the rationals.

mod matrix;
mod poly;
mod rational;

pub use matrix::{RationalMatrix, Rref};
pub use poly::RationalPolynomial;
pub use rational::Rational;

/// Column vector helpers. Vectors are plain `Vec<Rational>` throughout the
/// crate; bases are lists of such vectors.
pub type Vector = Vec<Rational>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// Canonical basis of the span of `vectors` (nonzero rows of the rref).
pub fn span_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RationalMatrix::from_rows(vectors.to_vec(), dim);
    let r = m.rref();
    (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect()
}

pub fn rank_of(vectors: &[Vector], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RationalMatrix::from_rows(vectors.to_vec(), dim).rref().rank
}

/// Greedy completion: walk `candidates` in order and keep each one that is
/// independent of `base` plus everything kept so far.
pub fn complete_basis(base: &[Vector], candidates: &[Vector], dim: usize) -> Vec<Vector> {
    let mut current = base.to_vec();
    let mut rank = rank_of(&current, dim);
    let mut chosen = Vec::new();
    for c in candidates {
        current.push(c.clone());
        let r = rank_of(&current, dim);
        if r > rank {
            rank = r;
            chosen.push(c.clone());
        } else {
            current.pop();
        }
    }
    chosen
}

/// Coordinates of each vector in `targets` relative to the (independent)
/// columns `basis`; `None` if some target lies outside the span.
pub fn coordinates_in(basis: &[Vector], targets: &[Vector], dim: usize) -> Option<Vec<Vector>> {
    let d = basis.len();
    let t = targets.len();
    // augmented system [B | T] with B columns = basis vectors
    let mut m = RationalMatrix::zeros(dim, d + t);
    for (c, b) in basis.iter().enumerate() {
        for r in 0..dim {
            m[(r, c)] = b[r].clone();
        }
    }
    for (c, v) in targets.iter().enumerate() {
        for r in 0..dim {
            m[(r, d + c)] = v[r].clone();
        }
    }
    let red = m.rref();
    if red.pivots.iter().any(|&p| p >= d) || red.pivots.len() != d {
        return None;
    }
    Some(
        (0..t)
            .map(|c| (0..d).map(|row| red.matrix[(row, d + c)].clone()).collect())
            .collect(),
    )
}

/// One solution of `m · x = rhs` (free variables set to zero), or `None`
/// when the system is inconsistent.
pub fn solve_linear(m: &RationalMatrix, rhs: &[Rational]) -> Option<Vector> {
    let rows = m.rows();
    let cols = m.cols();
    assert_eq!(rhs.len(), rows, "right-hand side length");
    let mut aug = RationalMatrix::zeros(rows, cols + 1);
    for r in 0..rows {
        for c in 0..cols {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, cols)] = rhs[r].clone();
    }
    let red = aug.rref();
    if red.pivots.contains(&cols) {
        return None;
    }
    let mut x = zero_vector(cols);
    for (row, &p) in red.pivots.iter().enumerate() {
        x[p] = red.matrix[(row, cols)].clone();
    }
    Some(x)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add_scaled(acc: &mut [Rational], scale: &Rational, v: &[Rational]) {
    if scale.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += scale * x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn completion_picks_earliest() {
        let base = vec![v(&[0, 1, 0])];
        let cands = vec![v(&[0, 2, 0]), v(&[1, 0, 0]), v(&[1, 1, 0]), v(&[0, 0, 1])];
        let got = complete_basis(&base, &cands, 3);
        assert_eq!(got, vec![v(&[1, 0, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = RationalMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_linear(&m, &v(&[3, 6])), Some(v(&[3, 0])));
        assert_eq!(solve_linear(&m, &v(&[3, 5])), None);
    }

    #[test]
    fn coordinates_round_trip() {
        let basis = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        let target = v(&[2, 5, 3]);
        let c = coordinates_in(&basis, &[target], 3).unwrap();
        assert_eq!(c[0], v(&[2, 3]));
        assert!(coordinates_in(&basis, &[v(&[1, 0, 0])], 3).is_none());
    }
}
