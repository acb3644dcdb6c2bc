//! Fixtures, random generators and independent oracles shared by the
//! integration tests. Oracles here deliberately avoid the library's own
//! algorithms (rref, contraction, filtrations) so they can check them.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uext::linalg::{Rational, RationalMatrix};
use uext::monoid;
use uext::tensor::{self, BasisChange, ExtensionTensor, TensorEntries};

pub fn q(x: i64) -> Rational {
    Rational::from_int(x)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(r: &mut ChaCha8Rng) -> Rational {
    Rational::new(r.gen_range(-4..=4), r.gen_range(1..=3))
}

pub fn small_int(r: &mut ChaCha8Rng) -> Rational {
    q(r.gen_range(-3..=3))
}

/// Random invertible matrix with small integer entries.
pub fn random_change(r: &mut ChaCha8Rng, n: usize) -> BasisChange {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| small_int(r)).collect())
            .collect();
        if let Ok(b) = BasisChange::new(RationalMatrix::from_rows(rows, n)) {
            return b;
        }
    }
}

/// Every fixture tensor named by the generators, plus the SE census up to
/// `max_census_n` and unitized copies of the solvable ones.
pub fn fixture_tensors(max_census_n: usize) -> Vec<(String, ExtensionTensor)> {
    let mut out = Vec::new();
    for p in 2..=5 {
        out.push((
            format!("zp-add({p})"),
            monoid::monoid_to_tensor(&monoid::zp_additive(p).unwrap()).unwrap(),
        ));
        out.push((
            format!("zp-mul({p})"),
            monoid::monoid_to_tensor(&monoid::zp_multiplicative(p).unwrap()).unwrap(),
        ));
    }
    for n in 1..=5 {
        out.push((format!("leibnitz({n})"), monoid::leibnitz(n, &q(1))));
        out.push((
            format!("leibnitz({n}, -2/3)"),
            monoid::leibnitz(n, &Rational::new(-2, 3)),
        ));
        out.push((format!("zero({n})"), ExtensionTensor::zero(n)));
    }
    for n in 2..=4 {
        out.push((
            format!("lambda({n}, 1, 1)"),
            monoid::lambda_family(n, &q(1), &q(1)).unwrap(),
        ));
        out.push((
            format!("lambda({n}, 2, -1/2)"),
            monoid::lambda_family(n, &q(2), &Rational::new(-1, 2)).unwrap(),
        ));
    }
    for beta in [q(1), q(2), Rational::new(-3, 2)] {
        out.push((format!("crmhd({beta})"), monoid::crmhd(&beta)));
    }
    for n in 1..=max_census_n {
        for (idx, t) in monoid::enumerate_se(n, None)
            .unwrap()
            .tables
            .iter()
            .enumerate()
        {
            out.push((
                format!("se({n})#{idx}"),
                monoid::monoid_to_tensor(t).unwrap(),
            ));
        }
    }
    let solvable: Vec<_> = out
        .iter()
        .filter(|(_, w)| w.n() <= 3 && tensor::is_canonical_solvable(w))
        .map(|(name, w)| (format!("unitize({name})"), tensor::unitize(w)))
        .collect();
    out.extend(solvable);
    out
}

/// A fixture of dimension at most `max_n` in a random basis.
pub fn random_valid_tensor(
    r: &mut ChaCha8Rng,
    pool: &[ExtensionTensor],
    max_n: usize,
) -> ExtensionTensor {
    let candidates: Vec<&ExtensionTensor> = pool.iter().filter(|w| w.n() <= max_n).collect();
    let w = candidates[r.gen_range(0..candidates.len())];
    let b = random_change(r, w.n());
    tensor::transform(w, &b).unwrap()
}

pub fn pool(max_n: usize) -> Vec<ExtensionTensor> {
    fixture_tensors(3)
        .into_iter()
        .map(|(_, w)| w)
        .filter(|w| w.n() <= max_n)
        .collect()
}

/// `(x * y)_s = sum_{i,j} W^{ij}_s x_i y_j` straight from the dense array.
pub fn oracle_product<T: TensorEntries + ?Sized>(
    w: &T,
    x: &[Rational],
    y: &[Rational],
) -> Vec<Rational> {
    let n = w.dim();
    let d = w.dense();
    let mut z = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..n {
            let c = &x[i] * &y[j];
            if c.is_zero() {
                continue;
            }
            for s in 0..n {
                z[s] += &d[(i * n + j) * n + s] * &c;
            }
        }
    }
    z
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Commutativity and associativity of the product on all basis pairs and
/// triples.
pub fn oracle_comm_assoc<T: TensorEntries + ?Sized>(w: &T) -> bool {
    let n = w.dim();
    for a in 0..n {
        for b in 0..n {
            let ab = oracle_product(w, &unit(n, a), &unit(n, b));
            if ab != oracle_product(w, &unit(n, b), &unit(n, a)) {
                return false;
            }
            for c in 0..n {
                let l = oracle_product(w, &ab, &unit(n, c));
                let bc = oracle_product(w, &unit(n, b), &unit(n, c));
                let r = oracle_product(w, &unit(n, a), &bc);
                if l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// Symmetric-bilinear invariance `R(x*y, z) = R(x, y*z)` on basis triples.
pub fn oracle_is_cocycle(w: &ExtensionTensor, r: &RationalMatrix) -> bool {
    let n = w.n();
    if r.transpose() != *r {
        return false;
    }
    let form = |x: &[Rational], y: &[Rational]| {
        let mut s = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                s += &x[i] * &r[(i, j)] * &y[j];
            }
        }
        s
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let ab = oracle_product(w, &unit(n, a), &unit(n, b));
                let bc = oracle_product(w, &unit(n, b), &unit(n, c));
                if form(&ab, &unit(n, c)) != form(&unit(n, a), &bc) {
                    return false;
                }
            }
        }
    }
    true
}

/// Determinant by cofactor expansion along the first row.
pub fn oracle_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * &oracle_det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `det(t I - M)` by cofactor expansion.
pub fn oracle_char_poly_at(m: &RationalMatrix, t: &Rational) -> Rational {
    let n = m.rows();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = if i == j { t.clone() } else { Rational::zero() };
                    d - &m[(i, j)]
                })
                .collect()
        })
        .collect();
    oracle_det(&rows)
}

/// Number of SE-functions on `I_n` by scanning every symmetric table with
/// values in `0..=n`. Property III fixes row and column 0, so the scan runs
/// over the cells `1 <= i <= j <= n`; the other three properties are
/// filters.
pub fn oracle_se_count(n: usize) -> usize {
    let size = n + 1;
    let cells: Vec<(usize, usize)> = (1..size)
        .flat_map(|i| (i..size).map(move |j| (i, j)))
        .collect();
    let mut digits = vec![0usize; cells.len()];
    let mut f = vec![vec![0usize; size]; size];
    let mut count = 0;
    loop {
        for (&(i, j), &v) in cells.iter().zip(&digits) {
            f[i][j] = v;
            f[j][i] = v;
        }
        let increasing = cells
            .iter()
            .all(|&(i, j)| f[i][j] == 0 || f[i][j] > i.max(j));
        let associative = increasing
            && (0..size)
                .all(|i| (0..size).all(|j| (0..size).all(|k| f[i][f[j][k]] == f[f[i][j]][k])));
        if associative {
            count += 1;
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return count;
            }
            digits[pos] += 1;
            if digits[pos] < size {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}
