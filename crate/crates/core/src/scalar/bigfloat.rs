use super::{Rat, Real};
use num_traits::{Num, One, Zero};
use rug::float::Round;
use rug::ops::Pow;
use rug::{Assign, Float};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

/// Arbitrary precision binary float. Binary operations return a value at the
/// larger of the operand precisions, so precision is never silently lowered.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigFloat(pub Float);

pub const MIN_PREC: u32 = 64;

impl BigFloat {
    pub fn with_prec(v: f64, prec: u32) -> Self {
        BigFloat(Float::with_val(prec.max(MIN_PREC), v))
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }

    fn bin(&self, o: &Self) -> u32 {
        self.0.prec().max(o.0.prec())
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_radix_round(10, Some(24), Round::Nearest))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, o: BigFloat) -> BigFloat {
                let p = self.bin(&o);
                BigFloat(Float::with_val(p, &self.0 $op &o.0))
            }
        }
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, o: &BigFloat) -> BigFloat {
                let p = self.bin(o);
                BigFloat(Float::with_val(p, &self.0 $op &o.0))
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);
binop!(Rem, rem, %);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat(Float::new(MIN_PREC))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat(Float::with_val(MIN_PREC, 1))
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = String;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        let parsed = Float::parse_radix(s, radix as i32).map_err(|e| e.to_string())?;
        Ok(BigFloat(Float::with_val(MIN_PREC.max(256), parsed)))
    }
}

fn to_rug_int(n: &num_bigint::BigInt) -> rug::Integer {
    let (sign, bytes) = n.to_bytes_le();
    let mut i = rug::Integer::from_digits(&bytes, rug::integer::Order::Lsf);
    if sign == num_bigint::Sign::Minus {
        i = -i;
    }
    i
}

impl Real for BigFloat {
    fn from_int(n: i64, prec: u32) -> Self {
        BigFloat(Float::with_val(prec.max(MIN_PREC), n))
    }
    fn from_f64(v: f64, prec: u32) -> Self {
        BigFloat(Float::with_val(prec.max(MIN_PREC), v))
    }
    fn from_rat(r: &Rat, prec: u32) -> Self {
        let q = rug::Rational::from((to_rug_int(r.numer()), to_rug_int(r.denom())));
        BigFloat(Float::with_val(prec.max(MIN_PREC), &q))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn prec(&self) -> u32 {
        self.0.prec()
    }
    fn effective_prec(requested: u32) -> u32 {
        requested.max(MIN_PREC)
    }
    fn sqrt(&self) -> Self {
        BigFloat(self.0.clone().sqrt())
    }
    fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }
    fn sin(&self) -> Self {
        BigFloat(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        BigFloat(self.0.clone().cos())
    }
    fn ln(&self) -> Self {
        BigFloat(self.0.clone().ln())
    }
    fn exp(&self) -> Self {
        BigFloat(self.0.clone().exp())
    }
    fn atan2(&self, x: &Self) -> Self {
        let p = self.bin(x);
        let mut y = Float::with_val(p, &self.0);
        y.atan2_mut(&x.0);
        BigFloat(y)
    }
    fn pi(prec: u32) -> Self {
        BigFloat(Float::with_val(prec.max(MIN_PREC), rug::float::Constant::Pi))
    }
    fn log2_abs(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (m, e) = self.0.to_f64_exp();
        m.abs().log2() + e as f64
    }
}

impl BigFloat {
    /// `self * 2^k`.
    pub fn mul_pow2(&self, k: i32) -> Self {
        let mut f = self.0.clone();
        let two = Float::with_val(f.prec(), 2).pow(k);
        f *= two;
        BigFloat(f)
    }

    pub fn set_prec(&self, prec: u32) -> Self {
        let mut f = Float::new(prec.max(MIN_PREC));
        f.assign(&self.0);
        BigFloat(f)
    }

    pub fn cmp_abs(&self, o: &Self) -> Ordering {
        self.0.cmp_abs(&o.0).unwrap_or(Ordering::Equal)
    }
}
