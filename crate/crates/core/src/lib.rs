//! Exact computations with minimal Sullivan algebras over the rationals.

pub mod catalog;
pub mod classify;
pub mod cohomology;
pub mod gca;
pub mod linalg;
pub mod model;
pub mod random;
pub mod series;
pub mod unravel;

pub use gca::{basis, Generator, Monomial, Poly, Rational, Universe};
pub use model::{IsoRecord, ModelError, SullivanAlgebra, ValidationReport};
