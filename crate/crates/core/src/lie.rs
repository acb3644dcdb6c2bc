//! Finite-dimensional carrier Lie algebras, the extension bracket on
//! `G^n`, and brute-force verification of the Lie axioms.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Rational, Vector};
use crate::tensor::TensorEntries;

/// Default cap on `n · dim(G)` for exhaustive Jacobi checks.
pub const DEFAULT_MAX_DIM: usize = 24;

/// Lie algebra given by structure constants `[e_i, e_j] = sum_k c^k_{ij} e_k`
/// (1-based), stored for `i < j` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    name: String,
    c: BTreeMap<(usize, usize, usize), Rational>,
}

impl LieAlgebra {
    /// Builds from `(i, j, k, c^k_{ij})` with any orientation of `(i, j)`;
    /// antisymmetry is completed and the Jacobi identity is checked.
    pub fn new<I>(dim: usize, name: impl Into<String>, constants: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Rational)>,
    {
        let mut c: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for (i, j, k, v) in constants {
            for x in [i, j, k] {
                if x == 0 || x > dim {
                    return Err(Error::IndexOutOfRange { index: x, n: dim });
                }
            }
            if i == j {
                if !v.is_zero() {
                    return Err(Error::InvalidLieAlgebra(format!(
                        "[e{i}, e{i}] must vanish"
                    )));
                }
                continue;
            }
            let (key, val) = if i < j {
                ((i, j, k), v)
            } else {
                ((j, i, k), -v)
            };
            if let Some(prev) = c.get(&key) {
                if *prev != val {
                    return Err(Error::InvalidLieAlgebra(format!(
                        "conflicting constants for [e{i}, e{j}] along e{k}"
                    )));
                }
            } else if !val.is_zero() {
                c.insert(key, val);
            }
        }
        let alg = LieAlgebra {
            dim,
            name: name.into(),
            c,
        };
        if let Some((i, j, k)) = alg.jacobi_failure() {
            return Err(Error::InvalidLieAlgebra(format!(
                "Jacobi identity fails on (e{i}, e{j}, e{k})"
            )));
        }
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            name: format!("abelian-{dim}"),
            c: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `c^k_{ij}` for any `i, j`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Rational::zero(),
            Less => self
                .c
                .get(&(i, j, k))
                .cloned()
                .unwrap_or_else(Rational::zero),
            Greater => -self
                .c
                .get(&(j, i, k))
                .cloned()
                .unwrap_or_else(Rational::zero),
        }
    }

    /// Stored constants, `i < j`.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.c.iter().map(|(&(i, j, k), v)| (i, j, k, v))
    }

    /// `[e_i, e_j]` as a coordinate vector (1-based indices).
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        (1..=self.dim).map(|k| self.constant(i, j, k)).collect()
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: v.len(),
                });
            }
        }
        let mut out = linalg::zero_vector(self.dim);
        for (&(i, j, k), c) in &self.c {
            let coef = &x[i - 1] * &y[j - 1] - &x[j - 1] * &y[i - 1];
            if !coef.is_zero() {
                out[k - 1] += c * &coef;
            }
        }
        Ok(out)
    }

    fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        let e = |i: usize| linalg::unit_vector(d, i - 1);
        for i in 1..=d {
            for j in (i + 1)..=d {
                for k in (j + 1)..=d {
                    let t1 = self.bracket(&self.basis_bracket(i, j), &e(k)).ok()?;
                    let t2 = self.bracket(&self.basis_bracket(j, k), &e(i)).ok()?;
                    let t3 = self.bracket(&self.basis_bracket(k, i), &e(j)).ok()?;
                    if (0..d).any(|m| !(&(&t1[m] + &t2[m]) + &t3[m]).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// Names accepted by [`preset_algebra`].
pub const PRESETS: &[&str] = &["sl2", "so3", "heis3", "gl2", "abelian-k (k <= 8)"];

pub fn preset_algebra(name: &str) -> Result<LieAlgebra> {
    let q = Rational::from_int;
    match name {
        // basis H, E, F
        "sl2" => LieAlgebra::new(
            3,
            "sl2",
            vec![(1, 2, 2, q(2)), (1, 3, 3, q(-2)), (2, 3, 1, q(1))],
        ),
        "so3" => LieAlgebra::new(
            3,
            "so3",
            vec![(1, 2, 3, q(1)), (2, 3, 1, q(1)), (3, 1, 2, q(1))],
        ),
        "heis3" => LieAlgebra::new(3, "heis3", vec![(1, 2, 3, q(1))]),
        "gl2" => {
            // basis E11, E12, E21, E22; [E_ab, E_cd] = δ_bc E_ad - δ_da E_cb
            let units = [(1, 1), (1, 2), (2, 1), (2, 2)];
            let index = |a: usize, b: usize| units.iter().position(|&u| u == (a, b)).unwrap() + 1;
            let mut consts = Vec::new();
            for (x, &(a, b)) in units.iter().enumerate() {
                for (y, &(c, d)) in units.iter().enumerate() {
                    if x >= y {
                        continue;
                    }
                    let mut v = vec![Rational::zero(); 5];
                    if b == c {
                        v[index(a, d)] += q(1);
                    }
                    if d == a {
                        v[index(c, b)] -= q(1);
                    }
                    for (k, val) in v.into_iter().enumerate().skip(1) {
                        if !val.is_zero() {
                            consts.push((x + 1, y + 1, k, val));
                        }
                    }
                }
            }
            LieAlgebra::new(4, "gl2", consts)
        }
        other => {
            if let Some(k) = other.strip_prefix("abelian-") {
                if let Ok(k) = k.parse::<usize>() {
                    if (1..=8).contains(&k) {
                        return Ok(LieAlgebra::abelian(k));
                    }
                }
            }
            Err(Error::UnknownPreset(other.to_string()))
        }
    }
}

/// `x = (x_1, ..., x_n)` with every `x_i` in the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElement {
    pub parts: Vec<Vector>,
}

impl ExtElement {
    pub fn zero(n: usize, d: usize) -> Self {
        ExtElement {
            parts: vec![linalg::zero_vector(d); n],
        }
    }

    /// Carrier basis element `e_b` placed in slot `a` (both 1-based).
    pub fn basis(n: usize, d: usize, a: usize, b: usize) -> Self {
        let mut x = Self::zero(n, d);
        x.parts[a - 1][b - 1] = Rational::one();
        x
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| linalg::is_zero_vector(p))
    }

    /// Flattened coordinates, slot-major.
    pub fn flatten(&self) -> Vector {
        self.parts.iter().flatten().cloned().collect()
    }
}

/// `([x, y]_W)_s = sum_{i,j} W^{ij}_s [x_i, y_j]`.
pub fn extension_bracket<T: TensorEntries + ?Sized>(
    w: &T,
    l: &LieAlgebra,
    x: &ExtElement,
    y: &ExtElement,
) -> Result<ExtElement> {
    let n = w.dim();
    let d = l.dim();
    for e in [x, y] {
        if e.parts.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: e.parts.len(),
            });
        }
    }
    let mut out = ExtElement::zero(n, d);
    for (i, j, s, v) in w.full_entries() {
        let b = l.bracket(&x.parts[i - 1], &y.parts[j - 1])?;
        linalg::add_scaled(&mut out.parts[s - 1], &v, &b);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Antisymmetry,
    Jacobi,
}

/// Failing basis tuple; each element is `(slot, carrier basis index)`,
/// 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiWitness {
    pub kind: WitnessKind,
    pub elements: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub carrier: String,
    pub dim: usize,
    pub holds: bool,
    pub antisymmetric: bool,
    pub triples_checked: usize,
    pub witness: Option<JacobiWitness>,
}

type Sparse = Vec<(usize, Rational)>;

/// Exhaustive check of antisymmetry and the Jacobi identity of `[., .]_W`
/// on all basis pairs and triples of `G^n`.
pub fn jacobi_check<T: TensorEntries + ?Sized>(
    w: &T,
    l: &LieAlgebra,
    max_dim: Option<usize>,
) -> Result<JacobiReport> {
    let n = w.dim();
    let d = l.dim();
    let total = n * d;
    let cap = max_dim.unwrap_or(DEFAULT_MAX_DIM);
    if total > cap {
        return Err(Error::CapExceeded { size: total, cap });
    }
    let dense = w.dense();
    let at = |i: usize, j: usize, s: usize| &dense[(i * n + j) * n + s];
    let flat = |slot: usize, b: usize| slot * d + b;
    let unflat = |u: usize| (u / d + 1, u % d + 1);

    // table[u][v] = [basis u, basis v] as a sparse vector
    let mut table: Vec<Vec<Sparse>> = vec![vec![Vec::new(); total]; total];
    for i in 0..n {
        for j in 0..n {
            for s in 0..n {
                let wv = at(i, j, s);
                if wv.is_zero() {
                    continue;
                }
                for (a, b, c, cv) in l.constants() {
                    let (a, b, c) = (a - 1, b - 1, c - 1);
                    let val = wv * cv;
                    table[flat(i, a)][flat(j, b)].push((flat(s, c), val.clone()));
                    table[flat(i, b)][flat(j, a)].push((flat(s, c), -val));
                }
            }
        }
    }

    let mut report = JacobiReport {
        carrier: l.name().to_string(),
        dim: total,
        holds: true,
        antisymmetric: true,
        triples_checked: 0,
        witness: None,
    };

    // merge duplicate targets so every table cell is a sorted sparse vector
    for row in table.iter_mut() {
        for cell in row.iter_mut() {
            let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
            for (m, x) in cell.drain(..) {
                *merged.entry(m).or_insert_with(Rational::zero) += x;
            }
            cell.extend(merged.into_iter().filter(|(_, x)| !x.is_zero()));
        }
    }

    'anti: for u in 0..total {
        for v in u..total {
            let neg: Sparse = table[v][u].iter().map(|(m, x)| (*m, -x)).collect();
            if table[u][v] != neg {
                report.antisymmetric = false;
                report.holds = false;
                report.witness = Some(JacobiWitness {
                    kind: WitnessKind::Antisymmetry,
                    elements: vec![unflat(u), unflat(v)],
                });
                break 'anti;
            }
        }
    }

    let mut acc = vec![Rational::zero(); total];
    let add_double = |acc: &mut Vec<Rational>, x: usize, y: usize, z: usize| {
        // acc += [[x, y], z]
        for (m, c) in &table[x][y] {
            for (r, e) in &table[*m][z] {
                acc[*r] += c * e;
            }
        }
    };
    'jac: for u in 0..total {
        for v in 0..total {
            for x in 0..total {
                report.triples_checked += 1;
                add_double(&mut acc, u, v, x);
                add_double(&mut acc, v, x, u);
                add_double(&mut acc, x, u, v);
                if !linalg::is_zero_vector(&acc) {
                    report.holds = false;
                    if report.witness.is_none() {
                        report.witness = Some(JacobiWitness {
                            kind: WitnessKind::Jacobi,
                            elements: vec![unflat(u), unflat(v), unflat(x)],
                        });
                    }
                    break 'jac;
                }
            }
        }
    }
    Ok(report)
}
