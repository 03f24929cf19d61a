//! Rational homotopy of mapping spaces from configuration spaces of Euclidean
//! space into spheres.

pub mod algebra;
pub mod coalgebra;
pub mod cochains;
pub mod components;
pub mod config_space;
pub mod descriptor;
pub mod error;
pub mod gca;
pub mod linalg;
pub mod mapping;
pub mod recognizer;
pub mod scalar;
pub mod selftest;
pub mod serial;
pub mod thom;

pub use error::{Error, Result};
pub use gca::{Cdga, Generator, Monomial, Polynomial, Sign};
pub use scalar::Scalar;
