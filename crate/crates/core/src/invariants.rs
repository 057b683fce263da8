//! Characteristic exponents, semigroups of values, Milnor and Tjurina
//! numbers, the Zariski invariant and intersection multiplicities.

use crate::algebra::{resultant, Poly};
use crate::error::{escalate, Error, Result};
use crate::puiseux::{char_from_support, compose, root_tree, Parametrization, RootTree};
use crate::scalar::{BigFloat, Field, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// `(beta_0, ..., beta_g)`; `(1)` for a smooth branch.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CharExponents {
    pub beta: Vec<u64>,
}

impl CharExponents {
    pub fn new(beta: Vec<u64>) -> Result<Self> {
        if beta.is_empty() || beta[0] == 0 {
            return Err(Error::InvalidInput("characteristic exponents must start with a positive multiplicity".into()));
        }
        if beta.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("characteristic exponents must increase".into()));
        }
        if beta.iter().fold(0, |g, b| g.gcd(b)) != 1 {
            return Err(Error::InvalidInput("characteristic exponents must be coprime".into()));
        }
        if beta.len() > 1 && beta[1] % beta[0] == 0 {
            return Err(Error::InvalidInput("beta_1 is divisible by beta_0".into()));
        }
        Ok(CharExponents { beta })
    }

    pub fn smooth() -> Self {
        CharExponents { beta: vec![1] }
    }

    pub fn multiplicity(&self) -> u64 {
        self.beta[0]
    }

    pub fn genus(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn is_smooth(&self) -> bool {
        self.beta[0] == 1
    }
}

/// Orders of `alpha(w t) - alpha(t)` over the nontrivial `n`-th roots of
/// unity `w`, read off exactly from the support of `y(t)`.
pub fn characteristic_exponents<K: Field>(p: &Parametrization<K>) -> Result<CharExponents> {
    p.check()?;
    let n = p.n as u64;
    if n == 1 {
        return Ok(CharExponents::smooth());
    }
    let mut contacts: Vec<u64> = (1..n)
        .map(|k| {
            p.y.keys()
                .map(|&i| i as u64)
                .find(|i| (i * k) % n != 0)
                .expect("primitive parametrization separates conjugates")
        })
        .collect();
    contacts.sort_unstable();
    contacts.dedup();
    let mut beta = vec![n];
    beta.extend(contacts);
    // generic coordinates when the branch is tangent to x = 0
    let ks: Vec<u64> = beta[1..].to_vec();
    CharExponents::new(char_from_support(n, &ks))
}

/// Semigroup of values of a branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    pub generators: Vec<u64>,
    /// `e_k = gcd(s_0, ..., s_k)`.
    pub e: Vec<u64>,
    pub conductor: u64,
    /// Number of gaps strictly between `s_1` and the conductor.
    pub q: u64,
}

impl Semigroup {
    /// From minimal generators of a plane branch semigroup.
    pub fn from_generators(generators: Vec<u64>) -> Result<Self> {
        if generators.is_empty() || generators[0] == 0 {
            return Err(Error::InvalidInput("empty semigroup".into()));
        }
        let mut e = vec![generators[0]];
        for s in &generators[1..] {
            e.push(e.last().unwrap().gcd(s));
        }
        if *e.last().unwrap() != 1 {
            return Err(Error::InvalidInput("generators are not coprime".into()));
        }
        let mut c: i64 = 1 - generators[0] as i64;
        for k in 1..generators.len() {
            c += ((e[k - 1] / e[k]) as i64 - 1) * generators[k] as i64;
        }
        let conductor = c.max(0) as u64;
        let mut sg = Semigroup { generators, e, conductor, q: 0 };
        if sg.generators.len() > 1 {
            let mem = sg.members(conductor + 1);
            let s1 = sg.generators[1];
            sg.q = (s1 + 1..conductor).filter(|&v| !mem[v as usize]).count() as u64;
        }
        Ok(sg)
    }

    pub fn smooth() -> Self {
        Semigroup { generators: vec![1], e: vec![1], conductor: 0, q: 0 }
    }

    /// Membership table for `0..=up_to`.
    pub fn members(&self, up_to: u64) -> Vec<bool> {
        let mut m = vec![false; up_to as usize + 1];
        m[0] = true;
        for v in 1..=up_to as usize {
            m[v] = self.generators.iter().any(|&s| s as usize <= v && m[v - s as usize]);
        }
        m
    }

    pub fn contains(&self, v: u64) -> bool {
        v >= self.conductor || self.members(v)[v as usize]
    }

    pub fn gaps(&self) -> Vec<u64> {
        let m = self.members(self.conductor);
        (0..self.conductor).filter(|&v| !m[v as usize]).collect()
    }

    pub fn genus(&self) -> usize {
        self.generators.len() - 1
    }

    /// `e_{k-1} s_k < e_k s_{k+1}` for `1 <= k < g`.
    pub fn is_plane_branch(&self) -> bool {
        (1..self.genus()).all(|k| self.e[k - 1] * self.generators[k] < self.e[k] * self.generators[k + 1])
    }
}

/// `s_k = (e_{k-2}/e_{k-1}) s_{k-1} + beta_k - beta_{k-1}`.
pub fn semigroup_from_char(c: &CharExponents) -> Semigroup {
    let b = &c.beta;
    if b.len() == 1 {
        return Semigroup::smooth();
    }
    let mut e = vec![b[0]];
    for x in &b[1..] {
        e.push(e.last().unwrap().gcd(x));
    }
    let mut s = vec![b[0], b[1]];
    for k in 2..b.len() {
        s.push((e[k - 2] / e[k - 1]) * s[k - 1] + b[k] - b[k - 1]);
    }
    Semigroup::from_generators(s).expect("characteristic exponents give a semigroup")
}

/// Row echelon form keyed by leading index; records the set of leading
/// orders of a linear span.
struct Echelon<K> {
    rows: BTreeMap<usize, Vec<K>>,
}

impl<K: Field> Echelon<K> {
    fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    fn insert(&mut self, mut v: Vec<K>) {
        loop {
            let Some(lead) = v.iter().position(|c| !c.is_zero()) else {
                return;
            };
            match self.rows.get(&lead) {
                Some(r) => {
                    let f = v[lead].clone() / r[lead].clone();
                    for (a, b) in v.iter_mut().zip(r.iter()).skip(lead) {
                        if !b.is_zero() {
                            *a = a.clone() - f.clone() * b.clone();
                        }
                    }
                }
                None => {
                    self.rows.insert(lead, v);
                    return;
                }
            }
        }
    }
}

fn series_mul<K: Field>(a: &[K], b: &[K], len: usize) -> Vec<K> {
    let mut out = vec![K::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
    }
    out
}

/// Truncated pullbacks `x^a y^b` (as `t`-series of length `len`) with
/// `n a + m b < len`, where `m = ord y(t)`.
fn pulled_monomials<K: Field>(p: &Parametrization<K>, len: usize) -> Vec<((usize, usize), Vec<K>)> {
    let n = p.n as usize;
    let m = *p.y.keys().next().expect("nonzero y") as usize;
    let mut yv = vec![K::zero(); len];
    for (e, c) in &p.y {
        if (*e as usize) < len {
            yv[*e as usize] = c.clone();
        }
    }
    let mut out = vec![];
    let mut ypow = vec![K::zero(); len];
    ypow[0] = K::one();
    let mut b = 0;
    while b * m < len {
        let mut a = 0;
        while n * a + m * b < len {
            let mut v = vec![K::zero(); len];
            for (k, c) in ypow.iter().enumerate() {
                if k + n * a < len {
                    v[k + n * a] = c.clone();
                }
            }
            out.push(((a, b), v));
            a += 1;
        }
        ypow = series_mul(&ypow, &yv, len);
        b += 1;
    }
    out
}

/// Semigroup of values computed directly: leading orders of the span of
/// pulled-back monomials `h(t^n, y(t))`, reduced to echelon form so that
/// cancellations between monomials (e.g. `y^2 - x^3`) are seen.
pub fn semigroup_oracle<K: Field>(p: &Parametrization<K>, degree_bound: u64) -> Result<Semigroup> {
    p.check()?;
    let n = p.n as u64;
    if n == 1 {
        return Ok(Semigroup::smooth());
    }
    let len = (degree_bound + n + 1) as usize;
    let mut ech = Echelon::new();
    for (_, v) in pulled_monomials(p, len) {
        ech.insert(v);
    }
    let mut vals = vec![false; len];
    for &k in ech.rows.keys() {
        vals[k] = true;
    }
    // conductor: start of a run of n consecutive values reaching the end
    let mut c = None;
    let mut run = 0;
    for v in (0..len).rev() {
        if vals[v] {
            run += 1;
            if run >= n as usize {
                c = Some(v);
            }
        } else {
            break;
        }
    }
    let Some(c) = c else {
        return Err(Error::IncompleteSemigroup(format!("no run of {} consecutive values below {}", n, len)));
    };
    let mut gens = vec![];
    for v in 1..(c + n as usize).min(len) {
        if !vals[v] {
            continue;
        }
        let mut reach = vec![false; v + 1];
        reach[0] = true;
        for w in 1..=v {
            reach[w] = gens.iter().any(|&g: &usize| g <= w && reach[w - g]);
        }
        if !reach[v] {
            gens.push(v);
        }
    }
    Semigroup::from_generators(gens.into_iter().map(|g| g as u64).collect())
}

/// `min(Lambda \ S) - n` where `Lambda` is the set of values `ord(g x' + h y') + 1`
/// of pulled-back 1-forms `g dx + h dy`; 0 when `Lambda \ S` is empty.
pub fn zariski_invariant<K: Field>(p: &Parametrization<K>) -> Result<u64> {
    let ch = characteristic_exponents(p)?;
    if ch.is_smooth() {
        return Ok(0);
    }
    let sg = semigroup_from_char(&ch);
    let n = p.n as usize;
    let len = sg.conductor as usize + n + 1;
    let mons = pulled_monomials(p, len);
    let mut xd = vec![K::zero(); len];
    if n - 1 < len {
        xd[n - 1] = K::from_int(n as i64);
    }
    let mut yd = vec![K::zero(); len];
    for (e, c) in &p.y {
        let e = *e as usize;
        if e >= 1 && e - 1 < len {
            yd[e - 1] = c.clone() * K::from_int(e as i64);
        }
    }
    let mut ech = Echelon::new();
    for (_, v) in &mons {
        ech.insert(series_mul(v, &xd, len));
        ech.insert(series_mul(v, &yd, len));
    }
    let mem = sg.members(len as u64 + 1);
    let lam = ech.rows.keys().map(|k| k + 1).filter(|&v| v < sg.conductor as usize && !mem[v]).min();
    Ok(lam.map_or(0, |v| (v - n) as u64))
}

/// Which way to compute an intersection multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionMethod {
    HalphenZeuthen,
    Resultant,
}

/// `f(0, y) = c y^d` with `d = deg_y f`: every root of `f` over `x = 0`
/// lies at the origin.
fn centered<K: Field>(f: &Poly<K>, x: &str, y: &str) -> bool {
    let d = f.degree_in(y);
    let low: Vec<(u32, u32)> = f.support2(x, y).into_iter().map(|(e, _)| e).filter(|e| e.0 == 0).collect();
    low == vec![(0, d)]
}

fn ord_in<K: Field>(r: &Poly<K>, x: &str) -> Result<u64> {
    if r.is_zero() {
        return Err(Error::InfiniteIntersection("the curves share a component".into()));
    }
    let u = r.to_upoly1(x).ok_or_else(|| Error::Internal("resultant is not univariate".into()))?;
    Ok(u.order().expect("nonzero") as u64)
}

fn check_vars<K: Field>(f: &Poly<K>) -> Result<(String, String)> {
    let vs: Vec<String> = f.support_vars();
    for v in &vs {
        if v != "x" && v != "y" {
            return Err(Error::InvalidInput(format!("expected a polynomial in x, y; found {}", v)));
        }
    }
    Ok(("x".into(), "y".into()))
}

/// `i_0(f, g)` at the origin for polynomials in `x, y`.
pub fn intersection_number<K: Field>(f: &Poly<K>, g: &Poly<K>, method: IntersectionMethod) -> Result<u64> {
    check_vars(f)?;
    check_vars(g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::InfiniteIntersection("zero polynomial".into()));
    }
    let x0 = Poly::constant(K::zero(), &["x", "y"]);
    let at0 = |p: &Poly<K>| p.substitute("x", &x0).substitute("y", &x0);
    if !at0(f).is_zero() || !at0(g).is_zero() {
        return Ok(0);
    }
    // orient so that the first polynomial has all its roots over x = 0 at the origin
    for (a, b, x, y) in [(f, g, "x", "y"), (g, f, "x", "y"), (f, g, "y", "x"), (g, f, "y", "x")] {
        if centered(a, x, y) {
            let r = resultant(a, b, y)?;
            let via_res = ord_in(&r, x)?;
            return match method {
                IntersectionMethod::Resultant => Ok(via_res),
                IntersectionMethod::HalphenZeuthen => halphen_zeuthen(a, b, x, y),
            };
        }
    }
    Err(Error::InvalidInput("neither curve is in Weierstrass position in x or y".into()))
}

/// `sum ord(alpha - gamma)` over roots of `a` and roots of `b` at the
/// origin, plus the contribution of a leading coefficient of `b` vanishing
/// at the origin; `a` must be centered.
fn halphen_zeuthen<K: Field>(a: &Poly<K>, b: &Poly<K>, x: &str, y: &str) -> Result<u64> {
    let n_a = a.degree_in(y) as u64;
    if b.degree_in(y) == 0 {
        let r = b.to_upoly1(x).filter(|_| b.support_vars().iter().all(|v| v == x));
        let o = r.and_then(|u| u.order()).ok_or_else(|| Error::Internal("unexpected polynomial".into()))?;
        return Ok(n_a * o as u64);
    }
    let lc = b.coeffs_in(y).pop().unwrap();
    let lc_ord = if lc.is_zero() { 0 } else { lc.to_upoly1(x).and_then(|u| u.order()).unwrap_or(0) as u64 };
    let mut bound = Rat::from_integer(BigInt::from(8));
    loop {
        // roots of `b` escaping to infinity: use `sum ord b(x, alpha)` instead
        let step = if lc_ord > 0 { hz_composed(a, b, x, y, &bound) } else { escalate(256, |prec| hz_at(a, b, x, y, &bound, prec)) };
        if let Some(v) = step? {
            return Ok(v);
        }
        bound = &bound * Rat::from_integer(BigInt::from(2));
        if bound > Rat::from_integer(BigInt::from(1 << 14)) {
            return Err(Error::InfiniteIntersection("roots agree to very high order".into()));
        }
    }
}

fn hz_at<K: Field>(a: &Poly<K>, b: &Poly<K>, x: &str, y: &str, bound: &Rat, prec: u32) -> Result<Option<u64>> {
    let ta: RootTree<BigFloat> = root_tree(a, x, y, bound, prec)?;
    let tb: RootTree<BigFloat> = root_tree(b, x, y, bound, prec)?;
    let mut total = Rat::zero();
    for (_, la) in ta.origin_leaves() {
        for (_, lb) in tb.origin_leaves() {
            match la.series.contact(&lb.series, prec)? {
                Some(c) => total += c * Rat::from_integer(BigInt::from(la.mult * lb.mult)),
                None => return Ok(None),
            }
        }
    }
    if !total.is_integer() {
        return Err(Error::Internal(format!("non-integral intersection sum {}", total)));
    }
    Ok(Some(total.to_integer().to_u64().unwrap()))
}

fn hz_composed<K: Field>(a: &Poly<K>, b: &Poly<K>, x: &str, y: &str, bound: &Rat) -> Result<Option<u64>> {
    let run = |prec| -> Result<Option<Rat>> {
        let ta: RootTree<BigFloat> = root_tree(a, x, y, bound, prec)?;
        let mut total = Rat::zero();
        for (_, la) in ta.origin_leaves() {
            match compose(b, x, y, &la.series, bound, prec) {
                Ok(s) => match s.order() {
                    Some(o) => total += o * Rat::from_integer(BigInt::from(la.mult)),
                    None => return Ok(None),
                },
                Err(Error::InsufficientTruncation(_)) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
        Ok(Some(total))
    };
    match escalate(256, run)? {
        Some(t) if t.is_integer() => Ok(Some(t.to_integer().to_u64().unwrap())),
        Some(t) => Err(Error::Internal(format!("non-integral intersection sum {}", t))),
        None => Ok(None),
    }
}

/// `mu = i_0(f_x, f_y)`.
pub fn milnor<K: Field>(f: &Poly<K>) -> Result<u64> {
    let fx = f.derivative("x");
    let fy = f.derivative("y");
    intersection_number(&fx, &fy, IntersectionMethod::Resultant)
}

/// Sparse elimination over monomials of total degree at most `deg`,
/// columns ordered by degree.
fn jet_rank<K: Field>(gens: &[Poly<K>], deg: u32) -> (usize, usize) {
    let mut col: HashMap<(u32, u32), usize> = HashMap::new();
    let mut next = 0;
    for d in 0..=deg {
        for i in 0..=d {
            col.insert((i, d - i), next);
            next += 1;
        }
    }
    let ncols = next;
    let mut pivots: HashMap<usize, BTreeMap<usize, K>> = HashMap::new();
    for g in gens {
        let sup = g.support2("x", "y");
        let Some(ord) = sup.iter().map(|((i, j), _)| i + j).min() else {
            continue;
        };
        if ord > deg {
            continue;
        }
        for md in 0..=(deg - ord) {
            for a in 0..=md {
                let b = md - a;
                let mut row: BTreeMap<usize, K> = BTreeMap::new();
                for ((i, j), c) in &sup {
                    if i + j + md <= deg {
                        row.insert(col[&(i + a, j + b)], c.clone());
                    }
                }
                loop {
                    let Some((&lead, lc)) = row.iter().next() else {
                        break;
                    };
                    match pivots.get(&lead) {
                        Some(p) => {
                            let f = lc.clone() / p[&lead].clone();
                            for (k, v) in p {
                                let cur = row.remove(k).unwrap_or_else(K::zero) - f.clone() * v.clone();
                                if !cur.is_zero() {
                                    row.insert(*k, cur);
                                }
                            }
                        }
                        None => {
                            pivots.insert(lead, row);
                            break;
                        }
                    }
                }
            }
        }
    }
    (pivots.len(), ncols)
}

/// `tau = dim K[x,y]/(f, f_x, f_y)` localized at the origin. The Jacobian
/// ideal contains `m^mu`, so the quotient is read off jets of degree
/// `mu + 1` and checked at `mu + 2`.
pub fn tjurina<K: Field>(f: &Poly<K>, mu: u64) -> Result<u64> {
    let gens = [f.clone(), f.derivative("x"), f.derivative("y")];
    let mut out = vec![];
    for deg in [mu as u32 + 1, mu as u32 + 2] {
        let (rank, ncols) = jet_rank(&gens, deg);
        out.push((ncols - rank) as u64);
    }
    if out[0] != out[1] || out[0] > mu {
        return Err(Error::Internal(format!("jet quotient unstable: {:?} with mu = {}", out, mu)));
    }
    Ok(out[0])
}

/// Invariants of an irreducible branch.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchInvariants {
    pub char: CharExponents,
    pub semigroup: Semigroup,
    pub milnor: u64,
    pub tjurina: Option<u64>,
    pub r: Option<u64>,
    pub zariski_lambda: Option<u64>,
}

/// Largest Milnor number for which the Tjurina number is computed.
pub const TJURINA_MU_LIMIT: u64 = 64;

impl BranchInvariants {
    /// From an implicit equation of a branch with known characteristic
    /// exponents.
    pub fn of_equation<K: Field>(f: &Poly<K>, char: CharExponents) -> Result<Self> {
        let semigroup = semigroup_from_char(&char);
        let mu = milnor(f)?;
        let tjurina = if mu <= TJURINA_MU_LIMIT { Some(tjurina(f, mu)?) } else { None };
        Ok(BranchInvariants { char, semigroup, milnor: mu, tjurina, r: tjurina.map(|t| mu - t), zariski_lambda: None })
    }

    pub fn of_parametrization<K: Field>(p: &Parametrization<K>) -> Result<Self> {
        let f = crate::puiseux::implicitize(p)?;
        let char = characteristic_exponents(p)?;
        let mut inv = Self::of_equation(&f, char)?;
        inv.zariski_lambda = Some(zariski_invariant(p)?);
        Ok(inv)
    }
}
