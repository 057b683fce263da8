//! Resultants and squarefree decomposition.

use super::{Poly, UPoly};
use crate::error::{Error, Result};
use crate::scalar::{ExactDiv, Field, GcdDomain, Ring};
use num_traits::Zero;

fn rpow<R: Ring>(r: &R, e: usize) -> R {
    let mut acc = R::one();
    for _ in 0..e {
        acc = acc * r.clone();
    }
    acc
}

fn div_coeffs<R: Ring + ExactDiv>(p: &UPoly<R>, d: &R) -> UPoly<R> {
    if d.is_one() {
        return p.clone();
    }
    UPoly::new(p.coeffs().iter().map(|c| c.exact_div(d).expect("subresultant division is exact")).collect())
}

/// Sylvester resultant over an integral domain by the subresultant remainder
/// sequence (no content removal, so only exact divisions in `R` occur).
pub fn resultant_upoly<R: Ring + ExactDiv>(a: &UPoly<R>, b: &UPoly<R>) -> R {
    if a.is_zero() || b.is_zero() {
        return R::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut neg = false;
    if a.deg0() < b.deg0() {
        if a.deg0() % 2 == 1 && b.deg0() % 2 == 1 {
            neg = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg0() == 0 {
        let r = rpow(&b.lc(), a.deg0());
        return if neg { -r } else { r };
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let (da, db) = (a.deg0(), b.deg0());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            neg = !neg;
        }
        let r = a.prem(&b);
        a = b;
        let den = g.clone() * rpow(&h, delta);
        b = div_coeffs(&r, &den);
        if b.is_zero() {
            return R::zero();
        }
        g = a.lc();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => rpow(&g, delta).exact_div(&rpow(&h, delta - 1)).expect("exact"),
        };
        if b.deg0() == 0 {
            let da = a.deg0();
            let res = rpow(&b.lc(), da).exact_div(&rpow(&h, da - 1)).expect("exact");
            return if neg { -res } else { res };
        }
    }
}

/// Yun's squarefree decomposition over `R[X]`, `R` a gcd domain of
/// characteristic zero. Factors are primitive and unit-normal; factors of
/// degree zero are omitted.
pub fn squarefree_upoly<R: GcdDomain>(f: &UPoly<R>) -> Vec<(UPoly<R>, u32)> {
    let f = f.primitive();
    if f.deg0() == 0 {
        return vec![];
    }
    let fp = f.derivative();
    let a0 = f.gcd_with(&fp);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let c = fp.div_exact(&a0).expect("gcd divides");
    let mut d = c - b.derivative();
    let mut i = 1;
    let mut out = vec![];
    while b.deg0() > 0 {
        let a = b.gcd_with(&d);
        if a.deg0() > 0 {
            out.push((a.normalized(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = c - b.derivative();
        i += 1;
    }
    out
}

fn others<K: Field>(f: &Poly<K>, g: &Poly<K>, var: &str) -> Vec<String> {
    let mut out: Vec<String> = vec![];
    for p in [f, g] {
        for v in p.support_vars() {
            if v != var && !out.contains(&v) {
                out.push(v);
            }
        }
    }
    // keep the declared order of the first polynomial where possible
    let mut order: Vec<String> = f.vars().iter().chain(g.vars().iter()).cloned().collect();
    order.dedup();
    out.sort_by_key(|v| order.iter().position(|w| w == v).unwrap_or(usize::MAX));
    out
}

/// `Res_var(f, g)` as a polynomial in the remaining variables (at most two).
pub fn resultant<K: Field>(f: &Poly<K>, g: &Poly<K>, var: &str) -> Result<Poly<K>> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::InvalidInput("resultant of two zero polynomials".into()));
    }
    if f.index_of(var).is_none() && g.index_of(var).is_none() {
        return Err(Error::InvalidInput(format!("variable {} occurs in neither polynomial", var)));
    }
    let rest = others(f, g, var);
    match rest.len() {
        0 => {
            let a = f.to_upoly1(var).expect("univariate");
            let b = g.to_upoly1(var).expect("univariate");
            let r = resultant_upoly(&a, &b);
            Ok(Poly::constant(r, &[]))
        }
        1 => {
            let o = rest[0].as_str();
            let a = f.to_upoly2(var, o);
            let b = g.to_upoly2(var, o);
            let r = resultant_upoly(&a, &b);
            Ok(Poly::from_upoly1(&r, o))
        }
        2 => {
            let (o1, o2) = (rest[0].as_str(), rest[1].as_str());
            let a = to_upoly3(f, var, o2, o1);
            let b = to_upoly3(g, var, o2, o1);
            let r = resultant_upoly(&a, &b);
            Ok(Poly::from_upoly2(&r, o2, o1))
        }
        _ => Err(Error::InvalidInput("resultants are supported in at most three variables".into())),
    }
}

/// Dense nested form `K[inner][mid][main]`.
pub fn to_upoly3<K: Field>(p: &Poly<K>, main: &str, mid: &str, inner: &str) -> UPoly<UPoly<UPoly<K>>> {
    let cs = p.coeffs_in(main);
    UPoly::new(cs.iter().map(|c| c.to_upoly2(mid, inner)).collect())
}

/// `p(u0, X)` keeps its degree and is squarefree for some small `u0`, which
/// forces `p` to be squarefree in `X`.
fn specializes_squarefree<K: Field>(p: &UPoly<UPoly<K>>) -> bool {
    let lc = p.lc();
    for k in 1..=4i64 {
        let u0 = K::from_int(k);
        if lc.eval(&u0).is_zero() {
            continue;
        }
        let q = UPoly::new(p.coeffs().iter().map(|c| c.eval(&u0)).collect());
        return q.gcd_with(&q.derivative()).deg0() == 0;
    }
    false
}

/// Squarefree decomposition with respect to `var` of a polynomial in at most
/// two variables. The product of `factor^mult` equals `f` up to a constant.
pub fn squarefree_decompose<K: Field>(f: &Poly<K>, var: &str) -> Result<Vec<(Poly<K>, u32)>> {
    if f.is_zero() {
        return Err(Error::InvalidInput("squarefree decomposition of zero".into()));
    }
    let rest: Vec<String> = f.support_vars().into_iter().filter(|v| v != var).collect();
    match rest.len() {
        0 => {
            let p = f.to_upoly1(var).expect("univariate");
            Ok(squarefree_upoly(&p).into_iter().map(|(q, m)| (Poly::from_upoly1(&q, var), m)).collect())
        }
        1 => {
            let o = rest[0].as_str();
            let p = f.to_upoly2(var, o);
            let names: Vec<&str> = f.var_refs();
            let parts = if specializes_squarefree(&p) {
                vec![(p.primitive().normalized(), 1)]
            } else {
                squarefree_upoly(&p)
            };
            Ok(parts
                .into_iter()
                .map(|(q, m)| {
                    let q = Poly::from_upoly2(&q, var, o);
                    let vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
                    (q.with_vars(&vars), m)
                })
                .collect())
        }
        _ => Err(Error::InvalidInput("squarefree decomposition supports at most two variables".into())),
    }
}
