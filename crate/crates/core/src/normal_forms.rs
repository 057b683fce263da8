//! Explicit members of the normal-form families: Puiseux parametrizations
//! for multiplicities two to four, implicit equations for the families with
//! small `mu - tau`.

use crate::algebra::parse::Q6;
use crate::algebra::Poly;
use crate::classifier::{BranchDescriptor, Family, Note};
use crate::error::{Error, Result};
use crate::puiseux::{implicitize, Parametrization};
use crate::scalar::{rat, rat_int, Rat};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// A generated curve: a parametrization or, for the equation families, the
/// equation itself.
#[derive(Clone, Debug, PartialEq)]
pub enum NormalForm {
    Parametric(Parametrization<Q6>),
    Implicit(Poly<Q6>),
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::Parametric(p) => write!(f, "{}", p),
            NormalForm::Implicit(g) => write!(f, "{}", g),
        }
    }
}

/// Output of [`build`]: the curve, the coefficients actually used (given or
/// drawn) and remarks about literal readings of the formulas.
#[derive(Clone, Debug)]
pub struct Built {
    pub form: NormalForm,
    pub coeffs: BTreeMap<u64, Q6>,
    pub notes: Vec<Note>,
}

impl Built {
    pub fn equation(&self) -> Result<Poly<Q6>> {
        match &self.form {
            NormalForm::Parametric(p) => implicitize(p),
            NormalForm::Implicit(f) => Ok(f.clone()),
        }
    }

    pub fn parametrization(&self) -> Option<&Parametrization<Q6>> {
        match &self.form {
            NormalForm::Parametric(p) => Some(p),
            NormalForm::Implicit(_) => None,
        }
    }
}

/// Small nonzero rational `p/q`, `1 <= |p| <= 9`, `1 <= q <= 10`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rat {
    let p: i64 = rng.gen_range(1..=9);
    let q: i64 = rng.gen_range(1..=10);
    if rng.gen_bool(0.5) {
        rat(p, q)
    } else {
        rat(-p, q)
    }
}

fn q(r: Rat) -> Q6 {
    Q6::from(r)
}

/// Given coefficients, or seeded draws for the indices in `free` that were
/// not given. `avoid` excludes one value at one index.
fn fill(d: &BranchDescriptor, free: &[u64], rng: &mut ChaCha8Rng, avoid: Option<(u64, Q6)>) -> Result<BTreeMap<u64, Q6>> {
    if let Some(i) = d.coeffs.keys().find(|i| !free.contains(i)) {
        return Err(Error::InvalidDescriptor(format!("{} has no free coefficient a_{}", d.family, i)));
    }
    let mut out = BTreeMap::new();
    for &i in free {
        let c = match d.coeffs.get(&i) {
            Some(c) => c.value.clone(),
            None => loop {
                let c = q(small_rational(rng));
                if avoid.as_ref().map_or(true, |(j, v)| *j != i || *v != c) {
                    break c;
                }
            },
        };
        out.insert(i, c);
    }
    Ok(out)
}

fn param(n: u32, terms: Vec<(u64, Q6)>) -> Result<Parametrization<Q6>> {
    let p = Parametrization::new(n, terms.into_iter().map(|(e, c)| (e as u32, c)));
    p.check()?;
    Ok(p)
}

fn xy(c: Q6, i: u64, j: u64) -> Poly<Q6> {
    Poly::monomial(c, &[("x", i as u32), ("y", j as u32)], &["x", "y"])
}

/// `3 s1 - 4([s1/4] + j + 1 - i)`, the exponent attached to `a_i` in the
/// families with `lambda = 2 s1 - 4 j`.
fn nf4_exponent(s1: u64, j: u64, i: u64) -> i64 {
    3 * s1 as i64 - 4 * ((s1 / 4) as i64 + j as i64 + 1 - i as i64)
}

/// Exponent attached to `a_i` in the family with `lambda = 3 s1 - 4 j`.
pub fn nf45_exponent(s1: u64, j: u64, i: u64) -> i64 {
    2 * s1 as i64 - 4 * (j as i64 - (s1 / 4) as i64 - i as i64)
}

fn positive(e: i64, what: &str) -> Result<u64> {
    if e <= 0 {
        return Err(Error::InvalidDescriptor(format!("{} has non-positive exponent {}", what, e)));
    }
    Ok(e as u64)
}

fn check_increasing(terms: &[(u64, Q6)], label: &str, notes: &mut Vec<Note>) {
    if terms.windows(2).any(|w| w[0].0 >= w[1].0) {
        let es: Vec<String> = terms.iter().map(|t| t.0.to_string()).collect();
        notes.push(Note::new(
            "nonincreasing-exponents",
            format!("{}: exponent sequence {} is not increasing", label, es.join(", ")),
        ));
    }
}

/// Explicit member of the family of `d`. Free coefficients not given in the
/// descriptor are drawn from a generator seeded by `seed`.
pub fn build(d: &BranchDescriptor, seed: u64) -> Result<Built> {
    d.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut notes = vec![];
    let s1 = d.s1;
    let one = Q6::one();
    let (form, coeffs) = match d.family {
        Family::Mult2 => (NormalForm::Parametric(param(2, vec![(s1, one)])?), BTreeMap::new()),
        Family::Mult3 => {
            let mut t = vec![(s1, one.clone())];
            if d.lambda() != 0 {
                t.push((d.lambda(), one));
            }
            (NormalForm::Parametric(param(3, t)?), BTreeMap::new())
        }
        Family::Mult4G2 => {
            let s2 = d.s2.unwrap();
            (NormalForm::Parametric(param(4, vec![(s1, one.clone()), (s2 - s1, one)])?), BTreeMap::new())
        }
        Family::NF4_1 => (NormalForm::Parametric(param(4, vec![(s1, one)])?), BTreeMap::new()),
        Family::NF4_2 => {
            let (j, k) = (d.j.unwrap(), d.k.unwrap());
            let c = fill(d, &[k], &mut rng, None)?;
            if c[&k].is_zero() {
                return Err(Error::InvalidDescriptor("a_k must be nonzero".into()));
            }
            // literal exponent 3 s1 - (4 [s1/4] + j + 1 - k); the listed range
            // ends at index j - [s1/4] - 2 < k, so only a_k is realized
            let e = 3 * s1 as i64 - (4 * (s1 / 4) as i64 + j as i64 + 1 - k as i64);
            let e = positive(e, "a_k")?;
            if e % 4 == 0 {
                notes.push(Note::new("sigma2-exponent", format!("the a_k exponent {} is a multiple of 4", e)));
            }
            notes.push(Note::new(
                "sigma2-range",
                format!("index range k..j-[s1/4]-2 = {}..{} is empty; only the a_k term is used", k, j as i64 - (s1 / 4) as i64 - 2),
            ));
            let t = vec![(s1, one.clone()), (d.lambda(), one), (e, c[&k].clone())];
            check_increasing(&t, "sigma_2", &mut notes);
            (NormalForm::Parametric(param(4, t)?), c)
        }
        Family::NF4_3 | Family::NF4_4 => {
            let j = d.j.unwrap();
            let q4 = s1 / 4;
            let fixed = q(rat((3 * s1 - 4 * j) as i64, (2 * s1) as i64));
            let first = q4 - j + 1;
            let (free, top): (Vec<u64>, u64) = if d.family == Family::NF4_3 {
                ((first + 1..=q4).collect(), q4)
            } else {
                ((first..q4).collect(), q4 - 1)
            };
            let avoid = (d.family == Family::NF4_4).then(|| (first, fixed.clone()));
            let mut c = fill(d, &free, &mut rng, avoid)?;
            if d.family == Family::NF4_3 {
                c.insert(first, fixed.clone());
            } else if c.get(&first) == Some(&fixed) {
                return Err(Error::InvalidDescriptor(format!("a_{} must differ from {}", first, fixed)));
            }
            let mut t = vec![(s1, one.clone()), (d.lambda(), one)];
            for i in first..=top {
                if let Some(a) = c.get(&i) {
                    t.push((positive(nf4_exponent(s1, j, i), "a_i")?, a.clone()));
                }
            }
            check_increasing(&t, if d.family == Family::NF4_3 { "sigma_3" } else { "sigma_4" }, &mut notes);
            (NormalForm::Parametric(param(4, t)?), c)
        }
        Family::NF4_5 => {
            let j = d.j.unwrap();
            let mut t = vec![(s1, one.clone()), (d.lambda(), one)];
            let c: BTreeMap<u64, Q6> =
                d.coeffs.iter().filter(|(_, c)| !c.value.is_zero()).map(|(i, c)| (*i, c.value.clone())).collect();
            for (i, a) in &c {
                t.push((positive(nf45_exponent(s1, j, *i), "a_i")?, a.clone()));
            }
            if c.len() >= 2 {
                notes.push(Note::new(
                    "sigma5-reading",
                    "a_{k+s} exponent read as 2s1-4(j-[s1/4]-k-s) and the Q term as s1-j+[s1/4]+k+s",
                ));
            }
            check_increasing(&t, "sigma_5", &mut notes);
            (NormalForm::Parametric(param(4, t)?), c)
        }
        Family::R1 | Family::R2A => {
            let s0 = d.s0.unwrap();
            let shift = if d.family == Family::R1 { 2 } else { 3 };
            let f = &(&xy(one.clone(), 0, s0) - &xy(one.clone(), s1, 0)) + &xy(one, s1 - shift, s0 - 2);
            (NormalForm::Implicit(f), BTreeMap::new())
        }
        Family::R2B => {
            let s0 = d.s0.unwrap();
            let free: Vec<u64> = (2..=2 + s1 / s0).collect();
            let c = fill(d, &free, &mut rng, None)?;
            let mut f = &(&xy(one.clone(), 0, s0) - &xy(one.clone(), s1, 0)) + &xy(one, s1 - 2, s0 - 3);
            for (k, a) in &c {
                f = &f + &xy(a.clone(), s1 - k, s0 - 2);
            }
            (NormalForm::Implicit(f), c)
        }
    };
    Ok(Built { form, coeffs, notes })
}

/// `r = mu - tau` of the equation families.
pub fn family_r(f: Family) -> Option<u64> {
    match f {
        Family::R1 => Some(1),
        Family::R2A | Family::R2B => Some(2),
        _ => None,
    }
}

/// Closed-form equation `y^3 - 3 x^{(s1+lambda)/3} y - x^{s1} - x^lambda` of
/// the multiplicity-three normal form with `lambda != 0`.
pub fn mult3_equation(s1: u64, lambda: u64) -> Option<Poly<Rat>> {
    if lambda == 0 || (s1 + lambda) % 3 != 0 {
        return None;
    }
    let m = |c: i64, i: u64, j: u64| Poly::monomial(rat_int(c), &[("x", i as u32), ("y", j as u32)], &["x", "y"]);
    let f = &(&(&m(1, 0, 3) - &m(3, (s1 + lambda) / 3, 1)) - &m(1, s1, 0)) - &m(1, lambda, 0);
    Some(f)
}
