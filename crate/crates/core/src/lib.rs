//! Exact construction, validation and classification of universal Lie
//! algebra extension tensors, through their commutative associative
//! algebras and commutative monoids.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod monoid;
pub mod tensor;

pub use error::{Error, Result};
pub use linalg::{Rational, RationalMatrix, RationalPolynomial};
pub use tensor::{BasisChange, ExtensionTensor, Labeling, RawTensor};
