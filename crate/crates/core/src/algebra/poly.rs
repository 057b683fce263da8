use super::UPoly;
use crate::scalar::Field;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse polynomial over `K` in named variables. Exponent vectors are indexed
/// by position in `vars`; no zero coefficients are stored.
#[derive(Clone, Debug)]
pub struct Poly<K> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, K>,
}

impl<K: Field> Poly<K> {
    pub fn zero_in(vars: &[&str]) -> Self {
        Poly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(c: K, vars: &[&str]) -> Self {
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    /// The variable `name` as a polynomial in `vars` (which must contain it).
    pub fn var(name: &str, vars: &[&str]) -> Self {
        Self::monomial(K::one(), &[(name, 1)], vars)
    }

    pub fn monomial(c: K, exps: &[(&str, u32)], vars: &[&str]) -> Self {
        let mut p = Self::zero_in(vars);
        if c.is_zero() {
            return p;
        }
        let mut e = vec![0; vars.len()];
        for (n, k) in exps {
            let i = vars.iter().position(|v| v == n).expect("variable listed");
            e[i] += k;
        }
        p.terms.insert(e, c);
        p
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, K)>) -> Self {
        let mut p = Self::zero_in(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len());
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Re-express over `vars`; variables of `self` that occur must be present.
    pub fn with_vars(&self, vars: &[String]) -> Self {
        if self.vars == vars {
            return self.clone();
        }
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let mut out = Poly { vars: vars.to_vec(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                let j = map[i].unwrap_or_else(|| panic!("variable {} dropped while reindexing", self.vars[i]));
                ne[j] += k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let mut vars = a.vars.clone();
        for v in &b.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (a.with_vars(&vars), b.with_vars(&vars))
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.index_of(name) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn coeff(&self, e: &[u32]) -> K {
        self.terms.get(e).cloned().unwrap_or_else(K::zero)
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(K::one(), &self.var_refs());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn derivative(&self, name: &str) -> Self {
        let mut out = Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        let Some(i) = self.index_of(name) else {
            return out;
        };
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c.clone() * K::from_int(e[i] as i64));
        }
        out
    }

    /// Coefficients with respect to `name`: entry `k` is the coefficient of
    /// `name^k`, a polynomial in the same variable list not involving `name`.
    pub fn coeffs_in(&self, name: &str) -> Vec<Self> {
        let d = self.degree_in(name) as usize;
        let mut out = vec![Poly { vars: self.vars.clone(), terms: BTreeMap::new() }; d + 1];
        let Some(i) = self.index_of(name) else {
            out[0] = self.clone();
            return out;
        };
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[i] as usize;
            ne[i] = 0;
            out[k].add_term(ne, c.clone());
        }
        out
    }

    /// Substitute the polynomial `g` for the variable `name`.
    pub fn substitute(&self, name: &str, g: &Self) -> Self {
        let cs = self.coeffs_in(name);
        let mut acc = Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for c in cs.iter().rev() {
            acc = &(&acc * g) + c;
        }
        acc.drop_var(name)
    }

    /// Remove a variable that does not occur.
    pub fn drop_var(&self, name: &str) -> Self {
        match self.index_of(name) {
            None => self.clone(),
            Some(i) if self.terms.keys().all(|e| e[i] == 0) => {
                let vars: Vec<String> = self.vars.iter().filter(|v| *v != name).cloned().collect();
                self.with_vars_dropping(&vars, i)
            }
            Some(_) => self.clone(),
        }
    }

    fn with_vars_dropping(&self, vars: &[String], i: usize) -> Self {
        let mut out = Poly { vars: vars.to_vec(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.remove(i);
            out.add_term(ne, c.clone());
        }
        out
    }

    pub fn rename(&self, from: &str, to: &str) -> Self {
        let mut p = self.clone();
        for v in p.vars.iter_mut() {
            if v == from {
                *v = to.to_string();
            }
        }
        p
    }

    /// Rename the variable list positionally.
    pub fn renamed(&self, names: &[&str]) -> Self {
        assert_eq!(names.len(), self.vars.len());
        Poly { vars: names.iter().map(|s| s.to_string()).collect(), terms: self.terms.clone() }
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        let mut out = Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Dense form in `outer` with coefficients dense in `inner`.
    pub fn to_upoly2(&self, outer: &str, inner: &str) -> UPoly<UPoly<K>> {
        let io = self.index_of(outer);
        let ii = self.index_of(inner);
        for (k, v) in self.vars.iter().enumerate() {
            if Some(k) != io && Some(k) != ii {
                assert!(self.terms.keys().all(|e| e[k] == 0), "unexpected variable {}", v);
            }
        }
        let dout = self.degree_in(outer) as usize;
        let din = self.degree_in(inner) as usize;
        let mut rows = vec![vec![K::zero(); din + 1]; dout + 1];
        for (e, c) in &self.terms {
            let a = io.map_or(0, |i| e[i] as usize);
            let b = ii.map_or(0, |i| e[i] as usize);
            rows[a][b] = c.clone();
        }
        UPoly::new(rows.into_iter().map(UPoly::new).collect())
    }

    pub fn from_upoly2(p: &UPoly<UPoly<K>>, outer: &str, inner: &str) -> Self {
        let mut out = Self::zero_in(&[inner, outer]);
        for (a, row) in p.coeffs().iter().enumerate() {
            for (b, c) in row.coeffs().iter().enumerate() {
                out.add_term(vec![b as u32, a as u32], c.clone());
            }
        }
        out
    }

    /// Dense univariate form; every other variable must be absent.
    pub fn to_upoly1(&self, var: &str) -> Option<UPoly<K>> {
        let i = self.index_of(var);
        let mut c = vec![K::zero(); self.degree_in(var) as usize + 1];
        for (e, a) in &self.terms {
            for (k, x) in e.iter().enumerate() {
                if Some(k) != i && *x > 0 {
                    return None;
                }
            }
            c[i.map_or(0, |i| e[i] as usize)] = a.clone();
        }
        Some(UPoly::new(c))
    }

    pub fn from_upoly1(p: &UPoly<K>, var: &str) -> Self {
        let mut out = Self::zero_in(&[var]);
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(vec![k as u32], c.clone());
        }
        out
    }

    /// Exponent pairs and coefficients for a two-variable polynomial, in the
    /// order `(a, b)` of the given names.
    pub fn support2(&self, a: &str, b: &str) -> Vec<((u32, u32), K)> {
        let ia = self.index_of(a);
        let ib = self.index_of(b);
        let mut out: BTreeMap<(u32, u32), K> = BTreeMap::new();
        for (e, c) in &self.terms {
            for (k, x) in e.iter().enumerate() {
                assert!(Some(k) == ia || Some(k) == ib || *x == 0, "unexpected variable {}", self.vars[k]);
            }
            let key = (ia.map_or(0, |i| e[i]), ib.map_or(0, |i| e[i]));
            out.insert(key, c.clone());
        }
        out.into_iter().collect()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.to_rat().is_some())
    }
}

impl<K: Field> PartialEq for Poly<K> {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = Self::unify(self, o);
        a.terms == b.terms
    }
}

impl<'a, K: Field> Add<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn add(self, o: &Poly<K>) -> Poly<K> {
        let (mut a, b) = Poly::unify(self, o);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl<'a, K: Field> Sub<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn sub(self, o: &Poly<K>) -> Poly<K> {
        let (mut a, b) = Poly::unify(self, o);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }
}

impl<'a, K: Field> Mul<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn mul(self, o: &Poly<K>) -> Poly<K> {
        let (a, b) = Poly::unify(self, o);
        let mut out = Poly { vars: a.vars.clone(), terms: BTreeMap::new() };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<K: Field> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl<K: Field> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl<K: Field> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Self {
        self.scale(&-K::one())
    }
}

fn coeff_text<K: Field>(c: &K) -> (bool, String) {
    let s = c.to_string();
    if let Some(r) = c.to_rat() {
        use num_traits::Signed;
        return (r.is_negative(), r.abs().to_string());
    }
    (false, format!("({})", s))
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.vars.len();
        let mut ts: Vec<(&Vec<u32>, &K)> = self.terms.iter().collect();
        // Descending in the last variable, then ascending in the others.
        ts.sort_by(|(a, _), (b, _)| {
            for k in (0..n).rev() {
                let ord = if k == n - 1 { b[k].cmp(&a[k]) } else { a[k].cmp(&b[k]) };
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        });
        for (idx, (e, c)) in ts.iter().enumerate() {
            let (neg, mag) = coeff_text(*c);
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| if *k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                .collect();
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono.join("*")
            } else {
                format!("{}*{}", mag, mono.join("*"))
            };
            if idx == 0 {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}

impl<K: Field> One for Poly<K> {
    fn one() -> Self {
        Poly { vars: vec![], terms: [(vec![], K::one())].into_iter().collect() }
    }
}

impl<K: Field> Zero for Poly<K> {
    fn zero() -> Self {
        Poly { vars: vec![], terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
