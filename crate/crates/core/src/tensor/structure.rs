use super::{ExtensionTensor, Labeling};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// True iff every nonzero `W^{ij}_k` has `k > max(i, j)`.
pub fn is_canonical_solvable(w: &ExtensionTensor) -> bool {
    w.entries().all(|(i, j, k, _)| k > i.max(j))
}

/// Quotient by the tail ideal `span{e^{n-k+1}, ..., e^n}`: keep indices
/// `1..=n-k`.
pub fn reduce(w: &ExtensionTensor, k: usize) -> Result<ExtensionTensor> {
    let n = w.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "reduction depth {k} must satisfy 1 <= k < {n}"
        )));
    }
    if !is_canonical_solvable(w) {
        return Err(Error::NotCanonical);
    }
    let m = n - k;
    let mut out = ExtensionTensor::zero(m).with_labeling(w.labeling());
    for (i, j, kk, v) in w.entries() {
        if i <= m && j <= m && kk <= m {
            out.set(i, j, kk, v.clone());
        }
    }
    Ok(out)
}

/// Adjoins a unit as the new index 1 and shifts everything else up by one.
pub fn unitize(w: &ExtensionTensor) -> ExtensionTensor {
    let n = w.n();
    let mut out = ExtensionTensor::zero(n + 1).with_labeling(Labeling::Semisimple);
    for j in 1..=n + 1 {
        out.set(1, j, j, Rational::one());
    }
    for (i, j, k, v) in w.entries() {
        out.set(i + 1, j + 1, k + 1, v.clone());
    }
    out
}

/// Whether internal index 1 acts as a two-sided unit: `W^{1j}_k = δ^j_k`.
pub fn has_unit_at_front(w: &ExtensionTensor) -> bool {
    let n = w.n();
    (1..=n).all(|j| {
        (1..=n).all(|k| {
            let v = w.get(1, j, k);
            if j == k {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    })
}

/// Drops the unit at index 1 and shifts the remaining indices down.
///
/// Besides the unit itself, the span of the other basis elements must be
/// closed under multiplication (no product may have a component along the
/// unit); otherwise cutting the first row and column does not give an
/// algebra.
pub fn deunitize(w: &ExtensionTensor) -> Result<ExtensionTensor> {
    if w.n() < 2 || !has_unit_at_front(w) {
        return Err(Error::NoUnit);
    }
    let mut out = ExtensionTensor::zero(w.n() - 1).with_labeling(Labeling::Solvable);
    for (i, j, k, v) in w.entries() {
        if i == 1 {
            continue;
        }
        if k == 1 {
            return Err(Error::NotAugmented);
        }
        out.set(i - 1, j - 1, k - 1, v.clone());
    }
    Ok(out)
}

/// Largest `k` such that `span{e^{n-k+1}, ..., e^n}` multiplies to zero
/// with itself.
pub fn abelian_tail_depth(w: &ExtensionTensor) -> Result<usize> {
    if !is_canonical_solvable(w) {
        return Err(Error::NotCanonical);
    }
    let n = w.n();
    // the tail starting at t is abelian iff no stored entry (i <= j) has i >= t
    let deepest = w.entries().map(|(i, _, _, _)| i).max();
    Ok(match deepest {
        None => n,
        Some(i) => n - i,
    })
}
