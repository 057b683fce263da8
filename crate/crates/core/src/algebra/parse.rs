//! Text syntax: `y^3 - 3*x^5*y - x^7 - x^8`, rational or decimal coefficients,
//! `sqrt(q)` for rational `q` whose square root lies in Q(sqrt 6), variables
//! `x, y, u, v, t`.

use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::{Field, Quadratic, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q6 = Quadratic<6>;

pub const VARIABLES: [&str; 5] = ["x", "y", "u", "v", "t"];

/// Parsed polynomial plus whether any coefficient was written as a decimal.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub poly: Poly<Q6>,
    pub decimal: bool,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    decimal: bool,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { position: pos, message: msg.into() }
}

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly<Q6>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<Q6>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let t = self.unary()?;
                    acc = &acc * &t;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let t = self.unary()?;
                    let c = constant_of(&t).ok_or_else(|| err(at, "division by a non-constant"))?;
                    if c.is_zero() {
                        return Err(err(at, "division by zero"));
                    }
                    acc = acc.scale(&c.inv());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly<Q6>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly<Q6>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let at = self.pos;
            let e = self.integer()?;
            let e = e.to_u32().filter(|e| *e <= 10_000).ok_or_else(|| err(at, "exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected an integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse::<BigInt>().unwrap())
    }

    fn atom(&mut self) -> Result<Poly<Q6>> {
        let at = {
            self.ws();
            self.pos
        };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let n = self.number()?;
                Ok(Poly::constant(Q6::from(n), &[]))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                if name == "sqrt" {
                    if self.peek() != Some(b'(') {
                        return Err(err(self.pos, "expected '(' after sqrt"));
                    }
                    self.pos += 1;
                    let inner = self.expr()?;
                    if self.peek() != Some(b')') {
                        return Err(err(self.pos, "expected ')'"));
                    }
                    self.pos += 1;
                    let c = constant_of(&inner)
                        .and_then(|c| c.to_rat())
                        .ok_or_else(|| err(at, "sqrt of a non-rational expression"))?;
                    let r = sqrt_in_q6(&c).ok_or_else(|| err(at, format!("sqrt({}) is not in Q(sqrt 6)", c)))?;
                    return Ok(Poly::constant(r, &[]));
                }
                if !VARIABLES.contains(&name) {
                    return Err(err(start, format!("unknown variable '{}'", name)));
                }
                Ok(Poly::var(name, &[name]))
            }
            Some(c) => Err(err(at, format!("unexpected character '{}'", c as char))),
            None => Err(err(at, "unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Rat> {
        let start = self.pos;
        let int = if self.s[self.pos] == b'.' { BigInt::zero() } else { self.integer()? };
        let mut r = Rat::from_integer(int);
        if self.pos < self.s.len() && self.s[self.pos] == b'.' {
            self.pos += 1;
            self.decimal = true;
            let fs = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = &self.s[fs..self.pos];
            if digits.is_empty() && start + 1 == self.pos {
                return Err(err(start, "malformed number"));
            }
            if !digits.is_empty() {
                let txt = std::str::from_utf8(digits).unwrap();
                let num: BigInt = txt.parse().unwrap();
                let den = num_traits::pow(BigInt::from(10), digits.len());
                r += Rat::new(num, den);
            }
        }
        Ok(r)
    }
}

fn constant_of(p: &Poly<Q6>) -> Option<Q6> {
    if p.is_zero() {
        return Some(Q6::zero());
    }
    if p.total_degree() == 0 {
        return p.terms().next().map(|(_, c)| c.clone());
    }
    None
}

/// `sqrt(q)` when it lies in Q(sqrt 6).
pub fn sqrt_in_q6(q: &Rat) -> Option<Q6> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Q6::zero());
    }
    let ab: BigInt = q.numer() * q.denom();
    let den = q.denom().clone();
    let k = ab.sqrt();
    if &k * &k == ab {
        return Some(Q6::from(Rat::new(k, den)));
    }
    let six = BigInt::from(6);
    if (&ab % &six).is_zero() {
        let m = &ab / &six;
        let k = m.sqrt();
        if &k * &k == m {
            return Some(Q6::new(Rat::zero(), Rat::new(k, den)));
        }
    }
    None
}

/// Parse a polynomial; its variable list is `vars` extended by any other
/// variable that occurs.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<Parsed> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, decimal: false };
    let e = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(err(p.pos, "unexpected trailing input"));
    }
    let mut names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    for v in e.support_vars() {
        if !names.contains(&v) {
            names.push(v);
        }
    }
    let poly = e.with_vars(&names);
    Ok(Parsed { poly, decimal: p.decimal })
}

/// Parse a constant expression such as `4*sqrt(6)/9` or `0.5443`.
pub fn parse_constant(text: &str) -> Result<(Q6, bool)> {
    let parsed = parse_poly(text, &[])?;
    let c = constant_of(&parsed.poly).ok_or_else(|| err(0, "expected a constant"))?;
    Ok((c, parsed.decimal))
}

/// Parse a polynomial whose coefficients must be rational.
pub fn parse_rat_poly(text: &str, vars: &[&str]) -> Result<Poly<Rat>> {
    let p = parse_poly(text, vars)?;
    to_rat_poly(&p.poly).ok_or_else(|| err(0, "coefficients must be rational"))
}

pub fn to_rat_poly(p: &Poly<Q6>) -> Option<Poly<Rat>> {
    if !p.is_rational() {
        return None;
    }
    Some(p.map_coeffs(|c| c.to_rat().unwrap()))
}

fn shifted(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse { position: position + by, message },
        e => e,
    }
}

/// Parse `x = t^4; y = t^5 + t^7`. Positions in errors refer to `text`.
pub fn parse_parametrization(text: &str) -> Result<crate::puiseux::Parametrization<Q6>> {
    let mut n = None;
    let mut y = None;
    let mut offset = 0;
    for part in text.split(';') {
        let start = offset;
        offset += part.len() + 1;
        if part.trim().is_empty() {
            continue;
        }
        let eq = part.find('=').ok_or_else(|| err(start, "expected `x = ...` or `y = ...`"))?;
        let lhs = part[..eq].trim();
        let rhs_at = start + eq + 1;
        let rhs = parse_poly(&part[eq + 1..], &["t"]).map_err(|e| shifted(e, rhs_at))?.poly;
        if rhs.support_vars().iter().any(|v| v != "t") {
            return Err(err(rhs_at, "a parametrization may only involve t"));
        }
        let r = rhs.to_upoly1("t").unwrap_or_else(|| crate::algebra::UPoly::new(vec![]));
        match lhs {
            "x" => {
                let d = r.deg0();
                if r.coeffs().iter().enumerate().any(|(i, c)| if i == d { !c.is_one() } else { !c.is_zero() }) || d == 0 {
                    return Err(err(rhs_at, "x must be t^n with n >= 1"));
                }
                n = Some(d as u32);
            }
            "y" => {
                let terms: Vec<(u32, Q6)> =
                    r.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as u32, c.clone())).collect();
                y = Some(terms);
            }
            _ => return Err(err(start, format!("unknown coordinate `{}`", lhs))),
        }
    }
    let n = n.ok_or_else(|| err(text.len(), "missing `x = t^n`"))?;
    let y = y.ok_or_else(|| err(text.len(), "missing `y = ...`"))?;
    let p = crate::puiseux::Parametrization::new(n, y);
    p.check()?;
    Ok(p)
}
