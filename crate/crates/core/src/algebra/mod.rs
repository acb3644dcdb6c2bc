//! The commutative associative algebra `e^i * e^j = sum_s W^{ij}_s e^s`
//! attached to a valid extension tensor.

mod canonical;
mod split;

use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::linalg::{self, Rational, RationalMatrix, Vector};
use crate::tensor::{self, ExtensionTensor};

pub use canonical::canonicalize;
pub use split::{split, split_by_element, unit_first_basis, SplitBlock, SplitReport};

/// Element `sum_i x_i e^i` of an algebra, coordinates 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElement {
    pub coords: Vector,
}

impl AlgElement {
    pub fn new(coords: Vector) -> Self {
        AlgElement { coords }
    }

    pub fn zero(n: usize) -> Self {
        AlgElement::new(linalg::zero_vector(n))
    }

    /// The basis element `e^i`, 1-based.
    pub fn basis(n: usize, i: usize) -> Self {
        AlgElement::new(linalg::unit_vector(n, i - 1))
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        AlgElement::new(xs.iter().map(|&x| Rational::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vector(&self.coords)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        AlgElement::new(self.coords.iter().map(|x| x * s).collect())
    }
}

impl Add for &AlgElement {
    type Output = AlgElement;
    fn add(self, rhs: &AlgElement) -> AlgElement {
        AlgElement::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &AlgElement {
    type Output = AlgElement;
    fn sub(self, rhs: &AlgElement) -> AlgElement {
        AlgElement::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

/// Commutative associative algebra backed by a validated tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    tensor: ExtensionTensor,
}

impl CommAlgebra {
    pub fn new(tensor: ExtensionTensor) -> Result<Self> {
        let report = tensor::validate(&tensor);
        if !report.is_valid() {
            return Err(Error::InvalidTensor(format!(
                "{} violation(s)",
                report.violations.len()
            )));
        }
        Ok(CommAlgebra { tensor })
    }

    pub fn tensor(&self) -> &ExtensionTensor {
        &self.tensor
    }

    pub fn dim(&self) -> usize {
        self.tensor.n()
    }

    fn check(&self, x: &AlgElement) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// `z_s = sum_{i,j} W^{ij}_s x_i y_j`.
    pub fn multiply(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(AlgElement::new(self.product_coords(&x.coords, &y.coords)))
    }

    pub(crate) fn product_coords(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut z = linalg::zero_vector(self.dim());
        for (i, j, k, v) in self.tensor.entries() {
            let (xi, yj) = (&x[i - 1], &y[j - 1]);
            let mut c = xi * yj;
            if i != j {
                c += &x[j - 1] * &y[i - 1];
            }
            if !c.is_zero() {
                z[k - 1] += v * &c;
            }
        }
        z
    }

    /// Matrix of `y -> x * y`; for `x = e^i` this is the slice matrix `W^{(i)}`.
    pub fn regular_rep(&self, x: &AlgElement) -> Result<RationalMatrix> {
        self.check(x)?;
        let n = self.dim();
        let mut m = RationalMatrix::zeros(n, n);
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let s = self.tensor.slice_matrix(i + 1)?;
            m = m.add(&s.scale(xi))?;
        }
        Ok(m)
    }

    /// Canonical bases of `A ⊇ A^2 ⊇ A^3 ⊇ ...`, ending at the first zero
    /// space or the first repeated dimension.
    pub fn power_filtration(&self) -> Vec<Vec<Vector>> {
        let n = self.dim();
        let mut layers: Vec<Vec<Vector>> =
            vec![(0..n).map(|i| linalg::unit_vector(n, i)).collect()];
        loop {
            let prev = layers.last().expect("nonempty");
            if prev.is_empty() {
                break;
            }
            let mut products = Vec::with_capacity(prev.len() * n);
            for x in prev {
                for j in 0..n {
                    let z = self.product_coords(x, &linalg::unit_vector(n, j));
                    if !linalg::is_zero_vector(&z) {
                        products.push(z);
                    }
                }
            }
            let next = linalg::span_basis(&products, n);
            let same = next.len() == prev.len();
            layers.push(next);
            if same {
                break;
            }
        }
        layers
    }

    pub fn filtration_dims(&self) -> Vec<usize> {
        self.power_filtration().iter().map(Vec::len).collect()
    }

    /// `Some(m)` with the least `m` such that `A^m = 0`, or `None`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let dims = self.filtration_dims();
        (dims.last() == Some(&0)).then_some(dims.len())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    /// The element `u` with `u * e^j = e^j` for all `j`, if it exists.
    pub fn find_unit(&self) -> Option<AlgElement> {
        let n = self.dim();
        // unknowns u_i; equation (j, k): sum_i u_i W^{ij}_k = δ_jk
        let mut m = RationalMatrix::zeros(n * n, n);
        let mut rhs = linalg::zero_vector(n * n);
        for j in 0..n {
            for k in 0..n {
                let row = j * n + k;
                for i in 0..n {
                    m[(row, i)] = self.tensor.get(i + 1, j + 1, k + 1);
                }
                if j == k {
                    rhs[row] = Rational::one();
                }
            }
        }
        linalg::solve_linear(&m, &rhs).map(AlgElement::new)
    }
}
