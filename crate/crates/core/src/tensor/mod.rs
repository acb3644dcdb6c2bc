//! Extension tensors `W^{ij}_k` and the operations that act on them
//! directly: validation, slice/row views, change of basis, and the
//! structural moves (reduction, adjoining or removing a unit).

mod basis;
mod structure;
mod validate;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};

pub use basis::{transform, BasisChange};
pub use structure::{
    abelian_tail_depth, deunitize, has_unit_at_front, is_canonical_solvable, reduce, unitize,
};
pub use validate::{validate, ValidationReport, Violation, ViolationKind};

/// How indices are shown to the outside world. Internally every tensor is
/// indexed `1..=n`; semisimple labeling displays them as `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Labeling {
    #[default]
    Solvable,
    Semisimple,
}

impl Labeling {
    /// Offset subtracted from an internal index when displaying it.
    pub fn display_offset(self) -> usize {
        match self {
            Labeling::Solvable => 0,
            Labeling::Semisimple => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Labeling::Solvable => "solvable",
            Labeling::Semisimple => "semisimple",
        }
    }
}

/// Read access to a (not necessarily symmetric) 3-index coefficient array.
///
/// Implemented by the symmetric [`ExtensionTensor`] and by [`RawTensor`],
/// which keeps whatever a file supplied so that asymmetric input can still be
/// diagnosed.
pub trait TensorEntries {
    fn dim(&self) -> usize;

    /// All nonzero `(i, j, k, W^{ij}_k)` in both orientations, 1-based.
    fn full_entries(&self) -> Vec<(usize, usize, usize, Rational)>;

    /// Dense `n^3` array indexed `[(i*n + j)*n + k]`, 0-based.
    fn dense(&self) -> Vec<Rational> {
        let n = self.dim();
        let mut d = vec![Rational::zero(); n * n * n];
        for (i, j, k, v) in self.full_entries() {
            d[((i - 1) * n + (j - 1)) * n + (k - 1)] = v;
        }
        d
    }
}

/// Symmetric `(2,1)` tensor on `1..=n` with sparse `i <= j` storage.
#[derive(Clone, Debug)]
pub struct ExtensionTensor {
    n: usize,
    entries: BTreeMap<(usize, usize, usize), Rational>,
    labeling: Labeling,
}

impl PartialEq for ExtensionTensor {
    // labeling is presentation only
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for ExtensionTensor {}

impl ExtensionTensor {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "tensor dimension must be at least 1");
        ExtensionTensor {
            n,
            entries: BTreeMap::new(),
            labeling: Labeling::Solvable,
        }
    }

    /// Builds a tensor from `(i, j, k, value)` quadruples (1-based). Either
    /// orientation of `(i, j)` may be given; giving both with different
    /// values is an error.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Rational)>,
    {
        let mut t = Self::zero(n);
        let mut seen: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for (i, j, k, v) in entries {
            t.check_index(i)?;
            t.check_index(j)?;
            t.check_index(k)?;
            let key = (i.min(j), i.max(j), k);
            if let Some(prev) = seen.get(&key) {
                if *prev != v {
                    return Err(Error::Load(format!(
                        "conflicting values for W^{{{i}{j}}}_{k}: {prev} vs {v}"
                    )));
                }
                continue;
            }
            seen.insert(key, v.clone());
            t.set(i, j, k, v);
        }
        Ok(t)
    }

    pub fn with_labeling(mut self, labeling: Labeling) -> Self {
        self.labeling = labeling;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labeling(&self) -> Labeling {
        self.labeling
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Sets `W^{ij}_k = W^{ji}_k = v` (zero removes the entry).
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j) && (1..=self.n).contains(&k),
            "index out of range"
        );
        let key = (i.min(j), i.max(j), k);
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        self.entries
            .get(&(i.min(j), i.max(j), k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Stored entries, `i <= j`, sorted by `(i, j, k)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j, k), v)| (i, j, k, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(W^{(i)})_{k,j} = W^{ij}_k`: row index `k`, column index `j`.
    pub fn slice_matrix(&self, i: usize) -> Result<RationalMatrix> {
        self.check_index(i)?;
        let mut m = RationalMatrix::zeros(self.n, self.n);
        for (a, b, k, v) in self.entries() {
            if a == i {
                m[(k - 1, b - 1)] = v.clone();
            }
            if b == i {
                m[(k - 1, a - 1)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn slice_matrices(&self) -> Vec<RationalMatrix> {
        (1..=self.n)
            .map(|i| self.slice_matrix(i).expect("index in range"))
            .collect()
    }

    /// `(W_{(k)})_{i,j} = W^{ij}_k`, a symmetric matrix.
    pub fn row_matrix(&self, k: usize) -> Result<RationalMatrix> {
        self.check_index(k)?;
        let mut m = RationalMatrix::zeros(self.n, self.n);
        for (i, j, kk, v) in self.entries() {
            if kk == k {
                m[(i - 1, j - 1)] = v.clone();
                m[(j - 1, i - 1)] = v.clone();
            }
        }
        Ok(m)
    }

    /// Product of basis elements `e^i * e^j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Rational> {
        (1..=self.n).map(|k| self.get(i, j, k)).collect()
    }

    /// Rebuilds from a dense 0-based array, reading only `i <= j`.
    pub(crate) fn from_dense(n: usize, dense: &[Rational], labeling: Labeling) -> Self {
        let mut t = Self::zero(n).with_labeling(labeling);
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let v = &dense[(i * n + j) * n + k];
                    if !v.is_zero() {
                        t.entries.insert((i + 1, j + 1, k + 1), v.clone());
                    }
                }
            }
        }
        t
    }

    pub fn to_raw(&self) -> RawTensor {
        RawTensor {
            n: self.n,
            entries: self
                .full_entries()
                .into_iter()
                .map(|(i, j, k, v)| ((i, j, k), v))
                .collect(),
            labeling: self.labeling,
        }
    }
}

impl TensorEntries for ExtensionTensor {
    fn dim(&self) -> usize {
        self.n
    }

    fn full_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::with_capacity(2 * self.entries.len());
        for (i, j, k, v) in self.entries() {
            out.push((i, j, k, v.clone()));
            if i != j {
                out.push((j, i, k, v.clone()));
            }
        }
        out
    }
}

/// Coefficients exactly as supplied, without symmetrization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTensor {
    n: usize,
    entries: BTreeMap<(usize, usize, usize), Rational>,
    labeling: Labeling,
}

impl RawTensor {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "tensor dimension must be at least 1");
        RawTensor {
            n,
            entries: BTreeMap::new(),
            labeling: Labeling::Solvable,
        }
    }

    pub fn with_labeling(mut self, labeling: Labeling) -> Self {
        self.labeling = labeling;
        self
    }

    pub fn labeling(&self) -> Labeling {
        self.labeling
    }

    /// Inserts a single orientation; a repeated `(i, j, k)` is an error.
    pub fn insert(&mut self, i: usize, j: usize, k: usize, v: Rational) -> Result<()> {
        for x in [i, j, k] {
            if x == 0 || x > self.n {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    n: self.n,
                });
            }
        }
        if self.entries.contains_key(&(i, j, k)) {
            return Err(Error::Load(format!("duplicate entry ({i},{j},{k})")));
        }
        if !v.is_zero() {
            self.entries.insert((i, j, k), v);
        }
        Ok(())
    }

    /// Overwrites one orientation only.
    pub fn set_raw(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        if v.is_zero() {
            self.entries.remove(&(i, j, k));
        } else {
            self.entries.insert((i, j, k), v);
        }
    }

    /// Symmetric completion: an entry given in one orientation only is
    /// mirrored; both orientations must agree.
    pub fn to_tensor(&self) -> Result<ExtensionTensor> {
        ExtensionTensor::from_entries(
            self.n,
            self.entries
                .iter()
                .map(|(&(i, j, k), v)| (i, j, k, v.clone())),
        )
        .map(|t| t.with_labeling(self.labeling))
    }

    /// Mirrors entries supplied in one orientation only; conflicting pairs
    /// are kept as they are so that validation can report them.
    pub fn mirrored(&self) -> RawTensor {
        let mut out = self.clone();
        for (&(i, j, k), v) in &self.entries {
            if !self.entries.contains_key(&(j, i, k)) {
                out.entries.insert((j, i, k), v.clone());
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Strict conversion: every off-diagonal entry must be present in both
    /// orientations with equal values.
    pub fn to_symmetric_tensor(&self) -> Result<ExtensionTensor> {
        for (&(i, j, k), v) in &self.entries {
            if i != j && self.entries.get(&(j, i, k)) != Some(v) {
                return Err(Error::Load(format!("asymmetric entry ({i},{j},{k})")));
            }
        }
        self.to_tensor()
    }
}

impl TensorEntries for RawTensor {
    fn dim(&self) -> usize {
        self.n
    }

    fn full_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        self.entries
            .iter()
            .map(|(&(i, j, k), v)| (i, j, k, v.clone()))
            .collect()
    }
}
