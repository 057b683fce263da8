use crate::scalar::{ExactDiv, Field, GcdDomain, Ring};
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial, coefficients lowest degree first, no trailing
/// zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<R> {
    c: Vec<R>,
}

impl<R: Ring> UPoly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn constant(r: R) -> Self {
        Self::new(vec![r])
    }

    /// `r * X^k`.
    pub fn monomial(r: R, k: usize) -> Self {
        if r.is_zero() {
            return Self::new(vec![]);
        }
        let mut c = vec![R::zero(); k];
        c.push(r);
        UPoly { c }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self::new(vec![]);
        }
        let c = self.c[1..]
            .iter()
            .enumerate()
            .map(|(i, a)| a.clone() * R::from_int(i as i64 + 1))
            .collect();
        Self::new(c)
    }

    pub fn scale(&self, r: &R) -> Self {
        Self::new(self.c.iter().map(|a| a.clone() * r.clone()).collect())
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for a in self.c.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero");
        let Some(da) = self.degree() else {
            return self.clone();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.lc();
        let mut r = self.clone();
        let mut e = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let t = Self::monomial(r.lc(), dr - db);
            r = r.scale(&lb) - t * b.clone();
            e -= 1;
        }
        if e > 0 {
            let mut f = R::one();
            for _ in 0..e {
                f = f * lb.clone();
            }
            r = r.scale(&f);
        }
        r
    }
}

impl<R: Ring + ExactDiv> UPoly<R> {
    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let Some(da) = self.degree() else {
            return Some(Self::zero());
        };
        if da < dd {
            return None;
        }
        let ld = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); da - dd + 1];
        for k in (0..=da - dd).rev() {
            let top = r[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let qk = top.exact_div(&ld)?;
            for (i, dc) in d.c.iter().enumerate() {
                r[k + i] = r[k + i].clone() - qk.clone() * dc.clone();
            }
            q[k] = qk;
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }
}

impl<R: GcdDomain> UPoly<R> {
    pub fn content(&self) -> R {
        let mut g = R::zero();
        for a in &self.c {
            g = R::gcd(&g, a);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive, unit-normal part.
    pub fn primitive(&self) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let g = self.content();
        let p = Self::new(self.c.iter().map(|a| a.exact_div(&g).expect("content divides")).collect());
        let u = p.lc().unit_part();
        if u.is_one() {
            p
        } else {
            Self::new(p.c.iter().map(|a| a.exact_div(&u).expect("unit divides")).collect())
        }
    }

    /// Unit-normal gcd by the primitive remainder sequence.
    pub fn gcd_with(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let c = R::gcd(&self.content(), &other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.deg0() < b.deg0() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg0() == 0 {
                b = Self::one();
                break;
            }
            let r = a.prem(&b);
            a = b;
            b = r.primitive();
        }
        let g = if b.is_zero() { a } else { b };
        (g.primitive() * Self::constant(c)).normalized()
    }

    pub fn normalized(&self) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let u = self.lc().unit_part();
        Self::new(self.c.iter().map(|a| a.exact_div(&u).expect("unit divides")).collect())
    }
}

impl<K: Field> UPoly<K> {
    pub fn monic(&self) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let l = self.lc().inv();
        self.scale(&l)
    }

    /// Division with remainder over a field.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero");
        let Some(da) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if da < dd {
            return (Self::zero(), self.clone());
        }
        let li = d.lc().inv();
        let mut r = self.c.clone();
        let mut q = vec![K::zero(); da - dd + 1];
        for k in (0..=da - dd).rev() {
            let qk = r[k + dd].clone() * li.clone();
            if qk.is_zero() {
                continue;
            }
            for (i, dc) in d.c.iter().enumerate() {
                r[k + i] = r[k + i].clone() - qk.clone() * dc.clone();
            }
            q[k] = qk;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }
}

impl<R: Ring> Zero for UPoly<R> {
    fn zero() -> Self {
        UPoly { c: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl<R: Ring> One for UPoly<R> {
    fn one() -> Self {
        UPoly { c: vec![R::one()] }
    }
}

impl<R: Ring> Add for UPoly<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (mut long, short) = if self.c.len() >= o.c.len() { (self.c, o.c) } else { (o.c, self.c) };
        for (i, b) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + b;
        }
        Self::new(long)
    }
}

impl<R: Ring> Neg for UPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        UPoly { c: self.c.into_iter().map(|a| -a).collect() }
    }
}

impl<R: Ring> Sub for UPoly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Mul for UPoly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(c)
    }
}

impl<R: Ring> Ring for UPoly<R> {
    fn from_int(n: i64) -> Self {
        Self::constant(R::from_int(n))
    }
}

impl<R: Ring + ExactDiv> ExactDiv for UPoly<R> {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }
}

impl<R: GcdDomain> GcdDomain for UPoly<R> {
    fn gcd(a: &Self, b: &Self) -> Self {
        a.gcd_with(b)
    }
    fn unit_part(&self) -> Self {
        if self.c.is_empty() {
            return Self::one();
        }
        Self::constant(self.lc().unit_part())
    }
}
