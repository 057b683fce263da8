use super::{rat_int, rat_to_f64, ExactDiv, Field, GcdDomain, Rat, Real, Ring};
use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Element `a + b*sqrt(D)` of the quadratic field Q(sqrt D), D squarefree and
/// not a square.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quadratic<const D: i64> {
    pub a: Rat,
    pub b: Rat,
}

impl<const D: i64> Quadratic<D> {
    pub fn new(a: Rat, b: Rat) -> Self {
        Quadratic { a, b }
    }

    /// The generator `sqrt(D)`.
    pub fn sqrt_d() -> Self {
        Quadratic { a: Rat::zero(), b: Rat::one() }
    }

    pub fn conj(&self) -> Self {
        Quadratic { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a^2 - D b^2`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - rat_int(D) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl<const D: i64> From<Rat> for Quadratic<D> {
    fn from(a: Rat) -> Self {
        Quadratic { a, b: Rat::zero() }
    }
}

impl<const D: i64> Zero for Quadratic<D> {
    fn zero() -> Self {
        Quadratic { a: Rat::zero(), b: Rat::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const D: i64> One for Quadratic<D> {
    fn one() -> Self {
        Quadratic { a: Rat::one(), b: Rat::zero() }
    }
}

impl<const D: i64> Add for Quadratic<D> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quadratic { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<const D: i64> Sub for Quadratic<D> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quadratic { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<const D: i64> Neg for Quadratic<D> {
    type Output = Self;
    fn neg(self) -> Self {
        Quadratic { a: -self.a, b: -self.b }
    }
}

impl<const D: i64> Mul for Quadratic<D> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.b.is_zero() && o.b.is_zero() {
            return Quadratic { a: self.a * o.a, b: Rat::zero() };
        }
        let a = &self.a * &o.a + rat_int(D) * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        Quadratic { a, b }
    }
}

impl<const D: i64> Div for Quadratic<D> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(!o.is_zero(), "division by zero in Q(sqrt {})", D);
        if o.b.is_zero() {
            return Quadratic { a: self.a / &o.a, b: self.b / &o.a };
        }
        let n = o.norm();
        let num = self * o.conj();
        Quadratic { a: num.a / &n, b: num.b / &n }
    }
}

impl<const D: i64> Ring for Quadratic<D> {
    fn from_int(n: i64) -> Self {
        Quadratic { a: rat_int(n), b: Rat::zero() }
    }
}

impl<const D: i64> ExactDiv for Quadratic<D> {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            None
        } else {
            Some(self.clone() / d.clone())
        }
    }
}

impl<const D: i64> GcdDomain for Quadratic<D> {
    fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() && b.is_zero() {
            Self::zero()
        } else {
            Self::one()
        }
    }
    fn unit_part(&self) -> Self {
        if self.is_zero() {
            Self::one()
        } else {
            self.clone()
        }
    }
}

impl<const D: i64> Field for Quadratic<D> {
    fn from_rat(r: &Rat) -> Self {
        Quadratic { a: r.clone(), b: Rat::zero() }
    }
    fn to_rat(&self) -> Option<Rat> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }
    fn to_complex<R: Real>(&self, prec: u32) -> Complex<R> {
        let s = R::from_int(D, prec).sqrt();
        let re = R::from_rat(&self.a, prec) + R::from_rat(&self.b, prec) * s;
        Complex::new(re, R::from_int(0, prec))
    }
    fn approx(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * (D as f64).sqrt()
    }
}

impl<const D: i64> fmt::Display for Quadratic<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let surd = if self.b.is_one() {
            format!("sqrt({})", D)
        } else if (-self.b.clone()).is_one() {
            format!("-sqrt({})", D)
        } else {
            format!("{}*sqrt({})", self.b, D)
        };
        if self.a.is_zero() {
            write!(f, "{}", surd)
        } else if self.b.is_negative() {
            write!(f, "{} - {}", self.a, surd.trim_start_matches('-'))
        } else {
            write!(f, "{} + {}", self.a, surd)
        }
    }
}
