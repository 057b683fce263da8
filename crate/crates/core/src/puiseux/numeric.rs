//! Numeric coefficients with an error scale, and the decisions made on them.

use crate::error::{Error, Result};
use crate::scalar::{cplx, Real};
use num_complex::Complex;

/// A computed value and `log2` of the magnitude its rounding error scales
/// with (the sum of absolute values of everything that went into it).
#[derive(Clone, Debug)]
pub(crate) struct Num<R> {
    pub v: Complex<R>,
    pub mag: f64,
}

impl<R: Real> Num<R> {
    pub fn exact(v: Complex<R>) -> Self {
        let mag = cplx::log2_abs(&v);
        Num { v, mag }
    }

    pub fn zero(prec: u32) -> Self {
        Num { v: cplx::zero(prec), mag: f64::NEG_INFINITY }
    }
}

/// `log2(2^a + 2^b)`, loosely.
pub(crate) fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (1.0 + (lo - hi).exp2()).log2()
}

/// Relative zero threshold and half-width of the ambiguity band, in bits.
fn band(prec: u32) -> (f64, f64) {
    let p = prec as f64;
    (p / 2.0, p / 8.0)
}

/// Is `x` nonzero? Values within the ambiguity band around the threshold
/// are reported as exhausted precision.
pub(crate) fn nonzero<R: Real>(x: &Num<R>, prec: u32) -> Result<bool> {
    let a = cplx::log2_abs(&x.v);
    if a == f64::NEG_INFINITY {
        return Ok(false);
    }
    let rel = a - x.mag;
    let (t, w) = band(R::effective_prec(prec));
    if rel < -t - w {
        Ok(false)
    } else if rel > -t + w {
        Ok(true)
    } else {
        Err(Error::precision(prec, format!("coefficient of relative size 2^{:.1} is near the zero threshold", rel)))
    }
}

/// Do two computed coefficients agree? Tolerance `2^{-P/4}` relative, with
/// an escalation band up to `2^{-P/8}`.
pub(crate) fn same<R: Real>(a: &Complex<R>, b: &Complex<R>, prec: u32) -> Result<bool> {
    let d = cplx::log2_abs(&(a.clone() - b.clone()));
    if d == f64::NEG_INFINITY {
        return Ok(true);
    }
    let scale = cplx::log2_abs(a).max(cplx::log2_abs(b));
    let p = R::effective_prec(prec) as f64;
    let rel = d - scale;
    if rel < -p / 4.0 {
        Ok(true)
    } else if rel > -p / 8.0 {
        Ok(false)
    } else {
        Err(Error::precision(prec, format!("coefficients differ by relative 2^{:.1}", rel)))
    }
}
