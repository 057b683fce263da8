//! Coefficient rings and fields.
//!
//! Exact layers are generic over [`Field`] (rationals, or the quadratic field
//! Q(sqrt 6) needed for the algebraic thresholds of the multiplicity-four
//! normal forms). Numeric layers are generic over [`Real`].

mod bigfloat;
mod quadratic;
mod real;

pub use bigfloat::BigFloat;
pub use quadratic::Quadratic;
pub use real::{cplx, Real};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

pub type Rat = BigRational;

/// Commutative ring with unit, characteristic zero.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_int(n: i64) -> Self;
}

/// Exact division: `a.exact_div(b)` is `Some(q)` with `q * b == a`, or `None`.
pub trait ExactDiv: Ring {
    fn exact_div(&self, d: &Self) -> Option<Self>;
}

/// Integral domain with gcd and a canonical unit normalization.
pub trait GcdDomain: ExactDiv {
    fn gcd(a: &Self, b: &Self) -> Self;
    /// The unit `u` such that `self / u` is unit-normal (zero maps to one).
    fn unit_part(&self) -> Self;
}

/// Exact coefficient field of characteristic zero.
pub trait Field: GcdDomain + Display + std::ops::Div<Output = Self> {
    fn from_rat(r: &Rat) -> Self;
    fn to_rat(&self) -> Option<Rat>;
    fn to_complex<R: Real>(&self, prec: u32) -> num_complex::Complex<R>;
    /// Rough magnitude, for diagnostics only.
    fn approx(&self) -> f64;
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

impl Ring for Rat {
    fn from_int(n: i64) -> Self {
        rat_int(n)
    }
}

impl ExactDiv for Rat {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            None
        } else {
            Some(self / d)
        }
    }
}

impl GcdDomain for Rat {
    fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() && b.is_zero() {
            Rat::zero()
        } else {
            Rat::one()
        }
    }
    fn unit_part(&self) -> Self {
        if self.is_zero() {
            Rat::one()
        } else {
            self.clone()
        }
    }
}

impl Field for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn to_complex<R: Real>(&self, prec: u32) -> num_complex::Complex<R> {
        num_complex::Complex::new(R::from_rat(self, prec), R::from_int(0, prec))
    }
    fn approx(&self) -> f64 {
        rat_to_f64(self)
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            let ln = r.numer().bits() as i64 - r.denom().bits() as i64;
            let s = if r.is_negative() { -1.0 } else { 1.0 };
            s * 2f64.powi(ln.clamp(-1000, 1000) as i32)
        }
    }
}

/// Floor of a rational.
pub fn rat_floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}
