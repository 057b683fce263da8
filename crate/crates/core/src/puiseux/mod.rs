//! Newton-Puiseux expansions, Puiseux parametrizations and series
//! composition.

mod compose;
pub(crate) mod numeric;
mod tree;

pub use compose::compose;
pub use tree::{puiseux_roots, root_tree, Leaf, RootTree};

use crate::algebra::{Poly, UPoly};
use crate::error::{Error, Result};
use crate::scalar::{cplx, Field, Rat, Real};
use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Truncated fractional power series `sum c_e x^e`, exponents below
/// `truncation`.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries<R> {
    pub ramification: u64,
    pub terms: Vec<(Rat, Complex<R>)>,
    pub truncation: Rat,
}

pub(crate) fn lcm_denoms<'a>(it: impl Iterator<Item = &'a Rat>) -> u64 {
    it.fold(1u64, |acc, e| acc.lcm(&e.denom().to_u64().expect("small denominator")))
}

impl<R: Real> PuiseuxSeries<R> {
    /// Sorts terms, merges duplicates and drops exact zeros and terms at or
    /// beyond the truncation.
    pub fn new(terms: Vec<(Rat, Complex<R>)>, truncation: Rat) -> Self {
        let mut map: BTreeMap<Rat, Complex<R>> = BTreeMap::new();
        for (e, c) in terms {
            if e >= truncation || cplx::is_zero(&c) {
                continue;
            }
            match map.remove(&e) {
                Some(old) => {
                    let s = old + c;
                    if !cplx::is_zero(&s) {
                        map.insert(e, s);
                    }
                }
                None => {
                    map.insert(e, c);
                }
            }
        }
        let terms: Vec<(Rat, Complex<R>)> = map.into_iter().collect();
        let ramification = lcm_denoms(terms.iter().map(|t| &t.0));
        PuiseuxSeries { ramification, terms, truncation }
    }

    pub fn order(&self) -> Option<Rat> {
        self.terms.first().map(|t| t.0.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncated(&self, bound: &Rat) -> Self {
        let b = bound.min(&self.truncation).clone();
        Self::new(self.terms.iter().filter(|t| t.0 < b).cloned().collect(), b)
    }

    /// Image under `x^{1/n} -> e^{2 pi i k/n} x^{1/n}` with `n` the
    /// ramification.
    pub fn conjugate(&self, k: u64, prec: u32) -> Self {
        let n = self.ramification;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let num = (e * Rat::from_integer(BigInt::from(n))).to_integer();
                let r = num.mod_floor(&BigInt::from(n)).to_u64().unwrap();
                (e.clone(), c.clone() * cplx::unity::<R>(n, (k * r) % n, prec))
            })
            .collect();
        PuiseuxSeries { ramification: n, terms, truncation: self.truncation.clone() }
    }

    /// Order of `self - other` below the common truncation, `None` when they
    /// agree there.
    pub fn contact(&self, other: &Self, prec: u32) -> Result<Option<Rat>> {
        let bound = self.truncation.clone().min(other.truncation.clone());
        let mut a = self.terms.iter().filter(|t| t.0 < bound).peekable();
        let mut b = other.terms.iter().filter(|t| t.0 < bound).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ok(None),
                (Some(x), None) => return Ok(Some(x.0.clone())),
                (None, Some(y)) => return Ok(Some(y.0.clone())),
                (Some(x), Some(y)) => {
                    if x.0 < y.0 {
                        return Ok(Some(x.0.clone()));
                    }
                    if y.0 < x.0 {
                        return Ok(Some(y.0.clone()));
                    }
                    if !numeric::same(&x.1, &y.1, prec)? {
                        return Ok(Some(x.0.clone()));
                    }
                    a.next();
                    b.next();
                }
            }
        }
    }

    /// Term-by-term agreement below the common truncation.
    pub fn agrees(&self, other: &Self, prec: u32) -> Result<bool> {
        Ok(self.contact(other, prec)?.is_none())
    }

    pub fn display(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return format!("0 + O({}^{})", var, fmt_exp(&self.truncation));
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (neg, body) = fmt_coeff(c);
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if e.is_zero() {
                s.push_str(&body);
            } else {
                s.push_str(&format!("{} * {}^{}", body, var, fmt_exp(e)));
            }
        }
        s
    }
}

fn fmt_exp(e: &Rat) -> String {
    if e.is_integer() {
        e.to_string()
    } else {
        format!("({})", e)
    }
}

fn fmt_real(x: f64) -> String {
    let s = format!("{:.12}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Sign (for real coefficients) and a decimal rendering.
fn fmt_coeff<R: Real>(c: &Complex<R>) -> (bool, String) {
    let (re, im) = (c.re.to_f64(), c.im.to_f64());
    let scale = re.abs().max(im.abs());
    if im.abs() <= 1e-15 * scale {
        (re < 0.0, fmt_real(re.abs()))
    } else if re.abs() <= 1e-15 * scale {
        (im < 0.0, format!("{}i", fmt_real(im.abs())))
    } else {
        (false, format!("({}{}{}i)", fmt_real(re), if im < 0.0 { "-" } else { "+" }, fmt_real(im.abs())))
    }
}

/// `x = t^n, y = sum a_i t^i` with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization<K> {
    pub n: u32,
    pub y: BTreeMap<u32, K>,
}

impl<K: Field> Parametrization<K> {
    pub fn new(n: u32, terms: impl IntoIterator<Item = (u32, K)>) -> Self {
        let mut y: BTreeMap<u32, K> = BTreeMap::new();
        for (e, c) in terms {
            let s = y.remove(&e).map_or(c.clone(), |o| o + c);
            if !s.is_zero() {
                y.insert(e, s);
            }
        }
        Parametrization { n, y }
    }

    /// `gcd(n, exponents of y) = 1`.
    pub fn is_primitive(&self) -> bool {
        self.y.keys().fold(self.n, |g, e| g.gcd(e)) == 1
    }

    pub fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInput("x = t^0 is not a parametrization".into()));
        }
        if self.y.contains_key(&0) {
            return Err(Error::InvalidInput("y(0) must vanish".into()));
        }
        if !self.is_primitive() {
            return Err(Error::InvalidInput("parametrization is not primitive".into()));
        }
        Ok(())
    }

    pub fn y_poly(&self) -> UPoly<K> {
        let deg = self.y.keys().next_back().copied().unwrap_or(0) as usize;
        let mut c = vec![K::zero(); deg + 1];
        for (e, a) in &self.y {
            c[*e as usize] = a.clone();
        }
        UPoly::new(c)
    }

    /// The root `y = sum a_i x^{i/n}` as a series, exact below `truncation`.
    pub fn series<R: Real>(&self, truncation: Rat, prec: u32) -> PuiseuxSeries<R> {
        let n = Rat::from_integer(BigInt::from(self.n));
        let terms = self.y.iter().map(|(e, a)| (Rat::from_integer(BigInt::from(*e)) / &n, a.to_complex::<R>(prec))).collect();
        PuiseuxSeries::new(terms, truncation)
    }

    pub fn is_rational(&self) -> bool {
        self.y.values().all(|c| c.to_rat().is_some())
    }
}

impl<K: Field> fmt::Display for Parametrization<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x = t^{}; y = ", self.n)?;
        if self.y.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.y.iter().enumerate() {
            let mono = Poly::monomial(c.clone(), &[("t", *e)], &["t"]).to_string();
            match (i, mono.strip_prefix('-')) {
                (0, _) => write!(f, "{}", mono)?,
                (_, Some(rest)) => write!(f, " - {}", rest)?,
                (_, None) => write!(f, " + {}", mono)?,
            }
        }
        Ok(())
    }
}

/// Implicit equation of a primitive parametrization: the monic polynomial
/// `prod_{w^n = 1} (y - y(w t))` rewritten in `x = t^n`. Coefficients come
/// from power sums via Newton's identities.
pub fn implicitize<K: Field>(p: &Parametrization<K>) -> Result<Poly<K>> {
    p.check()?;
    let n = p.n as usize;
    let y = p.y_poly();
    let mut pow = UPoly::constant(K::one());
    let mut psum: Vec<UPoly<K>> = vec![UPoly::constant(K::from_int(n as i64))];
    for _ in 1..=n {
        pow = pow * y.clone();
        let mut c = vec![];
        for (e, a) in pow.coeffs().iter().enumerate() {
            if e % n == 0 {
                let idx = e / n;
                if c.len() <= idx {
                    c.resize(idx + 1, K::zero());
                }
                c[idx] = a.clone() * K::from_int(n as i64);
            }
        }
        psum.push(UPoly::new(c));
    }
    let mut el: Vec<UPoly<K>> = vec![UPoly::constant(K::one())];
    for k in 1..=n {
        let mut acc = UPoly::new(vec![]);
        for i in 1..=k {
            let t = el[k - i].clone() * psum[i].clone();
            acc = if i % 2 == 1 { acc + t } else { acc - t };
        }
        el.push(acc.scale(&K::from_int(k as i64).inv()));
    }
    let vars = ["x", "y"];
    let mut f = Poly::zero_in(&vars);
    for (k, e) in el.iter().enumerate() {
        let sign = if k % 2 == 0 { K::one() } else { -K::one() };
        for (i, c) in e.coeffs().iter().enumerate() {
            let t = Poly::monomial(c.clone() * sign.clone(), &[("x", i as u32), ("y", (n - k) as u32)], &vars);
            f = &f + &t;
        }
    }
    Ok(f)
}

/// Characteristic exponents `(beta_0, ..., beta_g)` of a branch with root
/// `y = sum c_k x^{k/n}`, given the numerators `k` of its nonzero terms in
/// increasing order. Tangency to the vertical axis is handled by the
/// inversion formula, so the result is always in generic coordinates.
pub fn char_from_support(n: u64, ks: &[u64]) -> Vec<u64> {
    let mut beta = vec![n];
    let mut e = n;
    for &k in ks {
        if e == 1 {
            break;
        }
        if k % e != 0 {
            beta.push(k);
            e = e.gcd(&k);
        }
    }
    if beta.len() >= 2 && beta[1] < beta[0] {
        let (b0, b1) = (beta[0], beta[1]);
        let mut out = vec![b1];
        if b0 % b1 != 0 {
            out.push(b0);
        }
        out.extend(beta[2..].iter().map(|b| b + b0 - b1));
        return out;
    }
    beta
}

/// Exponent numerators of a series over its ramification.
pub fn numerators<R>(s: &PuiseuxSeries<R>) -> Vec<u64> {
    let n = Rat::from_integer(BigInt::from(s.ramification));
    s.terms
        .iter()
        .map(|(e, _)| {
            let k = (e * &n).to_integer();
            assert!(!k.is_negative());
            k.to_u64().unwrap()
        })
        .collect()
}

pub(crate) fn rat_u64(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}
