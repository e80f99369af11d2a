//! Exact scalar and polynomial arithmetic.

pub mod bipoly;
pub mod field;
pub mod gaussian;
pub mod hpoly;
pub mod modp;
pub mod number_field;
pub mod roots;
pub mod unipoly;

pub use bipoly::BiPoly;
pub use field::{ExactField, Field};
pub use gaussian::GaussianRational;
pub use hpoly::{restrict_to_line, HomogeneousPoly3, TCurve};
pub use modp::{Fp, ModularContext};
pub use number_field::{AlgebraicNumber, NumberField};
pub use roots::{isolate_real_roots, largest_real_root, RootApprox};
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("degree mismatch")]
    DegreeMismatch,
    #[error("inexact division")]
    InexactDivision,
    #[error("all components vanish identically on the line")]
    IdenticallyZero,
    #[error("polynomial has non-real coefficients")]
    NonRealCoefficients,
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("zero polynomial")]
    ZeroPolynomial,
}
