//! Commutative monoid tables (E- and SE-functions), the tensors they
//! generate, named families and exhaustive SE enumeration.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{canonicalize, CommAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::tensor::{ExtensionTensor, Labeling};

/// Default largest `n` for [`enumerate_se`].
pub const DEFAULT_MAX_N: usize = 6;

/// Cap for exhaustive searches, overridable through `UEXT_MAX_N`.
pub fn max_n_from_env() -> usize {
    std::env::var("UEXT_MAX_N")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MonoidKind {
    /// Plain commutative associative operation.
    E,
    /// With zero element 0 and `f(i,j) > max(i,j)` whenever nonzero.
    SE,
}

/// Operation table on labels `0..=n`; `table[i][j] = f(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidTable {
    kind: MonoidKind,
    table: Vec<Vec<usize>>,
}

impl MonoidTable {
    /// Checks shape and label range only; see [`validate_efunction`] and
    /// [`validate_sefunction`] for the algebraic conditions.
    pub fn new(kind: MonoidKind, table: Vec<Vec<usize>>) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {size}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= size) {
                return Err(Error::InvalidTable(format!(
                    "value {v} in row {i} is not a label 0..{}",
                    size - 1
                )));
            }
        }
        Ok(MonoidTable { kind, table })
    }

    pub fn kind(&self) -> MonoidKind {
        self.kind
    }

    /// Largest label.
    pub fn n(&self) -> usize {
        self.table.len() - 1
    }

    pub fn f(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    fn symmetric(&self) -> bool {
        let s = self.table.len();
        (0..s).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    fn associative(&self) -> bool {
        let s = self.table.len();
        let f = |a: usize, b: usize| self.table[a][b];
        (0..s).all(|i| (0..s).all(|j| (0..s).all(|k| f(i, f(j, k)) == f(f(i, j), k))))
    }
}

pub fn validate_efunction(t: &MonoidTable) -> bool {
    t.symmetric() && t.associative()
}

pub fn validate_sefunction(t: &MonoidTable) -> bool {
    let s = t.table.len();
    let zero_absorbs = (0..s).all(|i| t.f(i, 0) == 0 && t.f(0, i) == 0);
    let increasing = (1..s).all(|i| (1..s).all(|j| t.f(i, j) == 0 || t.f(i, j) > i.max(j)));
    zero_absorbs && increasing && validate_efunction(t)
}

/// `W^{ij}_k = δ_k^{f(i,j)}`. E tables use every label (label `l` is index
/// `l + 1`, semisimple labeling); SE tables drop the zero element.
pub fn monoid_to_tensor(t: &MonoidTable) -> Result<ExtensionTensor> {
    let s = t.table.len();
    match t.kind {
        MonoidKind::E => {
            if !validate_efunction(t) {
                return Err(Error::InvalidTable("not a commutative monoid".into()));
            }
            let mut w = ExtensionTensor::zero(s).with_labeling(Labeling::Semisimple);
            for i in 0..s {
                for j in i..s {
                    w.set(i + 1, j + 1, t.f(i, j) + 1, Rational::one());
                }
            }
            Ok(w)
        }
        MonoidKind::SE => {
            if !validate_sefunction(t) {
                return Err(Error::InvalidTable("not an SE-function".into()));
            }
            if s == 1 {
                return Err(Error::InvalidTable(
                    "an SE table on I_0 has no tensor".into(),
                ));
            }
            let mut w = ExtensionTensor::zero(s - 1);
            for i in 1..s {
                for j in i..s {
                    let k = t.f(i, j);
                    if k != 0 {
                        w.set(i, j, k, Rational::one());
                    }
                }
            }
            Ok(w)
        }
    }
}

fn table_from_fn(kind: MonoidKind, size: usize, f: impl Fn(usize, usize) -> usize) -> MonoidTable {
    MonoidTable {
        kind,
        table: (0..size)
            .map(|i| (0..size).map(|j| f(i, j)).collect())
            .collect(),
    }
}

pub fn zp_additive(p: usize) -> Result<MonoidTable> {
    if p < 2 {
        return Err(Error::InvalidArgument("p must be at least 2".into()));
    }
    Ok(table_from_fn(MonoidKind::E, p, |i, j| (i + j) % p))
}

pub fn zp_multiplicative(p: usize) -> Result<MonoidTable> {
    if p < 2 {
        return Err(Error::InvalidArgument("p must be at least 2".into()));
    }
    Ok(table_from_fn(MonoidKind::E, p, |i, j| (i * j) % p))
}

/// SE table `f(i,j) = i + j` when `i + j <= n` (or `< n` with `strict`),
/// else 0.
pub fn leibnitz_table(n: usize, strict: bool) -> MonoidTable {
    table_from_fn(MonoidKind::SE, n + 1, |i, j| {
        let s = i + j;
        let inside = if strict { s < n } else { s <= n };
        if i == 0 || j == 0 || !inside {
            0
        } else {
            s
        }
    })
}

/// `W^{ij}_k = λ1` for `k = i + j <= n`.
pub fn leibnitz(n: usize, lambda1: &Rational) -> ExtensionTensor {
    let mut w = ExtensionTensor::zero(n);
    if lambda1.is_zero() {
        return w;
    }
    for i in 1..=n {
        for j in i..=n {
            if i + j <= n {
                w.set(i, j, i + j, lambda1.clone());
            }
        }
    }
    w
}

/// `(n+1)`-dimensional unital tensor on labels `0..=n`: label 0 is the unit,
/// `e^i e^j = λ1 e^{i+j}` for `i + j <= n - 1` and `λ2 e^n` for `i + j = n`.
pub fn lambda_family(n: usize, lambda1: &Rational, lambda2: &Rational) -> Result<ExtensionTensor> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let mut w = ExtensionTensor::zero(n + 1).with_labeling(Labeling::Semisimple);
    for j in 0..=n {
        w.set(1, j + 1, j + 1, Rational::one());
    }
    for i in 1..=n {
        for j in i..=n {
            let v = match i + j {
                s if s < n => lambda1,
                s if s == n => lambda2,
                _ => continue,
            };
            if !v.is_zero() {
                w.set(i + 1, j + 1, i + j + 1, v.clone());
            }
        }
    }
    Ok(w)
}

pub fn crmhd(beta: &Rational) -> ExtensionTensor {
    lambda_family(3, &Rational::zero(), &-beta).expect("n = 3")
}

/// SE table on `I_n` with `f(i,j) = n` exactly on the pairs of `pairs` and
/// their swaps, 0 elsewhere. Pairs must lie in `I_{n-1} x I_{n-1}`.
pub fn abelian_se(n: usize, pairs: &[(usize, usize)]) -> Result<MonoidTable> {
    let mut set = BTreeSet::new();
    for &(i, j) in pairs {
        if i == 0 || j == 0 || i >= n || j >= n {
            return Err(Error::InvalidTable(format!(
                "pair ({i}, {j}) must lie in 1..{}",
                n.saturating_sub(1)
            )));
        }
        set.insert((i, j));
        set.insert((j, i));
    }
    Ok(table_from_fn(MonoidKind::SE, n + 1, |i, j| {
        if set.contains(&(i, j)) {
            n
        } else {
            0
        }
    }))
}

/// Drops the top element: products landing on `n` become 0.
pub fn restrict_se(t: &MonoidTable) -> Result<MonoidTable> {
    if t.kind != MonoidKind::SE || !validate_sefunction(t) {
        return Err(Error::InvalidTable(
            "restriction needs an SE-function".into(),
        ));
    }
    let n = t.n();
    if n == 0 {
        return Err(Error::InvalidTable("nothing to restrict on I_0".into()));
    }
    Ok(table_from_fn(MonoidKind::SE, n, |i, j| {
        let v = t.f(i, j);
        if v == n {
            0
        } else {
            v
        }
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SECensus {
    pub n: usize,
    pub tables: Vec<MonoidTable>,
}

impl SECensus {
    pub fn count(&self) -> usize {
        self.tables.len()
    }
}

struct Search {
    n: usize,
    free: Vec<(usize, usize)>,
    // None for an entry not assigned yet
    f: Vec<Vec<Option<usize>>>,
    out: Vec<MonoidTable>,
}

impl Search {
    fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.f[a][b]
    }

    /// Associativity on every triple whose lookups are already determined.
    fn consistent(&self) -> bool {
        let n = self.n;
        for a in 1..=n {
            for b in 1..=n {
                let Some(ab) = self.get(a, b) else { continue };
                for c in 1..=n {
                    let Some(bc) = self.get(b, c) else { continue };
                    let (Some(l), Some(r)) = (self.get(ab, c), self.get(a, bc)) else {
                        continue;
                    };
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, pos: usize) {
        if pos == self.free.len() {
            let table = self
                .f
                .iter()
                .map(|row| row.iter().map(|v| v.expect("all assigned")).collect())
                .collect();
            self.out.push(MonoidTable {
                kind: MonoidKind::SE,
                table,
            });
            return;
        }
        let (i, j) = self.free[pos];
        let values = std::iter::once(0).chain((j + 1)..=self.n);
        for v in values {
            self.f[i][j] = Some(v);
            self.f[j][i] = Some(v);
            if self.consistent() {
                self.run(pos + 1);
            }
        }
        self.f[i][j] = None;
        self.f[j][i] = None;
    }
}

/// Every SE-function on `I_n`, in lexicographic order of the free entries
/// `f(i,j)`, `1 <= i <= j <= n-1`.
pub fn enumerate_se(n: usize, cap: Option<usize>) -> Result<SECensus> {
    let cap = cap.unwrap_or(DEFAULT_MAX_N);
    if n > cap {
        return Err(Error::CapExceeded { size: n, cap });
    }
    let mut f = vec![vec![Some(0); n + 1]; n + 1];
    let mut free = Vec::new();
    for i in 1..n {
        for j in i..n {
            f[i][j] = None;
            f[j][i] = None;
            free.push((i, j));
        }
    }
    let mut search = Search {
        n,
        free,
        f,
        out: Vec::new(),
    };
    search.run(0);
    Ok(SECensus {
        n,
        tables: search.out,
    })
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Least relabeling of `t` (over permutations of `1..=n` that keep it an
/// SE-function), compared as tables.
fn canonical_relabeling(t: &MonoidTable, perms: &[Vec<usize>]) -> MonoidTable {
    let s = t.table.len();
    let mut best = t.clone();
    for p in perms {
        // sigma(0) = 0, sigma(l) = p[l - 1]
        let sigma = |l: usize| if l == 0 { 0 } else { p[l - 1] };
        let mut table = vec![vec![0; s]; s];
        for i in 0..s {
            for j in 0..s {
                table[sigma(i)][sigma(j)] = sigma(t.f(i, j));
            }
        }
        let cand = MonoidTable {
            kind: MonoidKind::SE,
            table,
        };
        if cand < best && validate_sefunction(&cand) {
            best = cand;
        }
    }
    best
}

/// Keeps one table per relabeling class, the least one, in order of first
/// appearance.
pub fn iso_reduce(census: &SECensus) -> SECensus {
    let items: Vec<usize> = (1..=census.n).collect();
    let perms = permutations(&items);
    let mut seen = BTreeSet::new();
    let mut tables = Vec::new();
    for t in &census.tables {
        let c = canonical_relabeling(t, &perms);
        if seen.insert(c.clone()) {
            tables.push(c);
        }
    }
    SECensus {
        n: census.n,
        tables,
    }
}

/// Looks for an SE table whose tensor has the same canonical form as `w`.
///
/// Only literal equality of canonical forms is tested, so `None` does not
/// rule out a δ-form in some other basis.
pub fn find_delta_form(w: &ExtensionTensor, cap: Option<usize>) -> Result<Option<MonoidTable>> {
    let (_, target) = canonicalize(&CommAlgebra::new(w.clone())?)?;
    let census = enumerate_se(w.n(), cap)?;
    for t in census.tables {
        let tw = monoid_to_tensor(&t)?;
        let (_, cw) = canonicalize(&CommAlgebra::new(tw)?)?;
        if cw == target {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
