//! Discriminants of plane branches under the morphism `(x, f)`: exact
//! computation, equisingularity type, and closed-form predictions for
//! branches of low multiplicity.

pub mod algebra;
pub mod classifier;
pub mod discriminant;
pub mod error;
pub mod invariants;
pub mod newton_polygon;
pub mod normal_forms;
pub mod puiseux;
pub mod scalar;

pub use algebra::Poly;
pub use classifier::{classify, verify, BranchDescriptor, Family, VerificationReport};
pub use error::{Error, Result};
pub use scalar::{BigFloat, Quadratic, Rat};

/// Polynomial with rational coefficients.
pub type RatPoly = Poly<Rat>;
/// Arbitrary precision complex number.
pub type BigComplex = num_complex::Complex<BigFloat>;
