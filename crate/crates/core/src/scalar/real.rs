use super::{rat_to_f64, Rat};
use num_traits::Num;
use std::fmt::Debug;
use std::ops::Neg;

/// Real scalar used by the numeric layers. `prec` arguments are bits; fixed
/// precision types ignore them.
pub trait Real: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_int(n: i64, prec: u32) -> Self;
    fn from_f64(v: f64, prec: u32) -> Self;
    fn from_rat(r: &Rat, prec: u32) -> Self;
    fn to_f64(&self) -> f64;
    fn prec(&self) -> u32;
    /// Precision actually delivered when `requested` bits are asked for.
    fn effective_prec(requested: u32) -> u32;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn pi(prec: u32) -> Self;
    /// `log2 |self|`, `-inf` at zero. Never overflows.
    fn log2_abs(&self) -> f64;
}

impl Real for f64 {
    fn from_int(n: i64, _: u32) -> Self {
        n as f64
    }
    fn from_f64(v: f64, _: u32) -> Self {
        v
    }
    fn from_rat(r: &Rat, _: u32) -> Self {
        rat_to_f64(r)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn prec(&self) -> u32 {
        53
    }
    fn effective_prec(_: u32) -> u32 {
        53
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn pi(_: u32) -> Self {
        std::f64::consts::PI
    }
    fn log2_abs(&self) -> f64 {
        f64::abs(*self).log2()
    }
}

/// Helpers on `Complex<R>`.
pub mod cplx {
    use super::Real;
    use num_complex::Complex;

    pub fn zero<R: Real>(prec: u32) -> Complex<R> {
        Complex::new(R::from_int(0, prec), R::from_int(0, prec))
    }

    pub fn from_int<R: Real>(n: i64, prec: u32) -> Complex<R> {
        Complex::new(R::from_int(n, prec), R::from_int(0, prec))
    }

    pub fn is_zero<R: Real>(z: &Complex<R>) -> bool {
        let zero = R::from_int(0, 64);
        z.re == zero && z.im == zero
    }

    pub fn abs<R: Real>(z: &Complex<R>) -> R {
        z.norm_sqr().sqrt()
    }

    /// `log2 |z|`, `-inf` at zero.
    pub fn log2_abs<R: Real>(z: &Complex<R>) -> f64 {
        let a = z.re.log2_abs();
        let b = z.im.log2_abs();
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * (1.0 + (2f64).powf(2.0 * (lo - hi))).log2()
    }

    pub fn scale<R: Real>(z: &Complex<R>, s: &R) -> Complex<R> {
        Complex::new(z.re.clone() * s.clone(), z.im.clone() * s.clone())
    }

    /// `e^{2 pi i k / q}`.
    pub fn unity<R: Real>(q: u64, k: u64, prec: u32) -> Complex<R> {
        let k = k % q;
        if k == 0 {
            return from_int(1, prec);
        }
        let ang = R::pi(prec) * R::from_int(2 * k as i64, prec) / R::from_int(q as i64, prec);
        Complex::new(ang.cos(), ang.sin())
    }

    /// Principal `q`-th root.
    pub fn root<R: Real>(z: &Complex<R>, q: u64, prec: u32) -> Complex<R> {
        if q == 1 || is_zero(z) {
            return z.clone();
        }
        let r = abs(z);
        let q_r = R::from_int(q as i64, prec);
        let mag = (r.ln() / q_r.clone()).exp();
        let ang = z.im.atan2(&z.re) / q_r;
        Complex::new(mag.clone() * ang.cos(), mag * ang.sin())
    }

    pub fn powu<R: Real>(z: &Complex<R>, e: u64, prec: u32) -> Complex<R> {
        let mut acc = from_int(1, prec);
        let mut base = z.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    pub fn to_string<R: Real>(z: &Complex<R>, digits: usize) -> String {
        let re = z.re.to_f64();
        let im = z.im.to_f64();
        let tiny = 10f64.powi(-(digits as i32));
        let scale = re.abs().max(im.abs());
        if im.abs() <= tiny * scale.max(1e-300) {
            format!("{:.*e}", digits, re)
        } else if re.abs() <= tiny * scale {
            format!("{:.*e}i", digits, im)
        } else {
            format!("({:.*e}{:+.*e}i)", digits, re, digits, im)
        }
    }
}
