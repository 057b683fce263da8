use super::numeric::{log_add, nonzero, Num};
use super::{numerators, rat_u64, PuiseuxSeries};
use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::scalar::{cplx, Field, Rat, Real};
use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};

/// Product of a sparse series (`(index, value)` pairs) with a dense one,
/// truncated at `len` terms.
fn mul_sparse<R: Real>(a: &[(usize, Num<R>)], b: &[Num<R>], len: usize, prec: u32) -> Vec<Num<R>> {
    let mut out = vec![Num::zero(prec); len];
    for (i, x) in a {
        for (j, y) in b.iter().enumerate() {
            let k = i + j;
            if k >= len {
                break;
            }
            if y.mag == f64::NEG_INFINITY {
                continue;
            }
            let slot = &mut out[k];
            if !cplx::is_zero(&y.v) {
                slot.v = slot.v.clone() + x.v.clone() * y.v.clone();
            }
            slot.mag = log_add(slot.mag, x.mag + y.mag);
        }
    }
    out
}

/// `f(x, gamma(x))` below `bound`, with `gamma` used as given.
fn evaluate<K: Field, R: Real>(f: &Poly<K>, x: &str, y: &str, gamma: &PuiseuxSeries<R>, bound: &Rat, prec: u32) -> Result<Vec<(Rat, Complex<R>)>> {
    let n = gamma.ramification as usize;
    let len = (bound * rat_u64(n as u64)).ceil().to_integer().to_usize().unwrap_or(0);
    let ks = numerators(gamma);
    let sparse: Vec<(usize, Num<R>)> = ks
        .iter()
        .zip(gamma.terms.iter())
        .filter(|(k, _)| (**k as usize) < len)
        .map(|(k, (_, c))| (*k as usize, Num::exact(c.clone())))
        .collect();
    let support = f.support2(x, y);
    let d = f.degree_in(y) as usize;
    let mut one = vec![Num::zero(prec); len];
    if len > 0 {
        one[0] = Num::exact(cplx::from_int(1, prec));
    }
    let mut pows = vec![one];
    for j in 1..=d {
        let next = mul_sparse(&sparse, &pows[j - 1], len, prec);
        pows.push(next);
    }
    let mut acc = vec![Num::<R>::zero(prec); len];
    for ((i, j), c) in &support {
        let shift = *i as usize * n;
        if shift >= len {
            continue;
        }
        let a = Num::exact(c.to_complex::<R>(prec));
        for (k, t) in pows[*j as usize].iter().enumerate() {
            if k + shift >= len {
                break;
            }
            if t.mag == f64::NEG_INFINITY {
                continue;
            }
            let slot = &mut acc[k + shift];
            if !cplx::is_zero(&t.v) {
                slot.v = slot.v.clone() + a.v.clone() * t.v.clone();
            }
            slot.mag = log_add(slot.mag, a.mag + t.mag);
        }
    }
    let mut out = vec![];
    for (k, v) in acc.into_iter().enumerate() {
        if nonzero(&v, prec)? {
            out.push((Rat::new(k.into(), n.into()), v.v));
        }
    }
    Ok(out)
}

/// The series `f(x, gamma(x))` truncated at `bound`. `gamma` must be known
/// at least up to `bound`; when it is known further, the result is also
/// computed from `gamma` cut at `bound` and both must agree.
pub fn compose<K: Field, R: Real>(f: &Poly<K>, x: &str, y: &str, gamma: &PuiseuxSeries<R>, bound: &Rat, prec: u32) -> Result<PuiseuxSeries<R>> {
    if gamma.truncation < *bound {
        return Err(Error::InsufficientTruncation(format!(
            "series known below {} but the composition is requested below {}",
            gamma.truncation, bound
        )));
    }
    if gamma.terms.iter().any(|t| t.0 < Rat::zero()) {
        return Err(Error::InvalidInput("series with negative exponents".into()));
    }
    let full = evaluate(f, x, y, gamma, bound, prec)?;
    let short = gamma.truncated(bound);
    let cut = evaluate(f, x, y, &short, bound, prec)?;
    let a = PuiseuxSeries::new(full, bound.clone());
    let b = PuiseuxSeries::new(cut, bound.clone());
    if !a.agrees(&b, prec)? {
        return Err(Error::InsufficientTruncation("composition changes when the series is extended".into()));
    }
    Ok(a)
}
