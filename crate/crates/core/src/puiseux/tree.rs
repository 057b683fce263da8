//! Numeric Newton-Puiseux expansion.
//!
//! The working polynomial is `G(T, y1)` with `T = x^{1/N}`; the original root
//! is `prefix + x^O y1`. Each compact edge of slope `p/q` (in `T`) and each
//! root `c` of its edge polynomial gives the child
//! `G(T'^q, T'^p (c + y1)) / T'^L`. Coefficients of `G` are only kept up to
//! the `T`-degree that can influence terms below the order bound.

use super::numeric::{log_add, nonzero, Num};
use super::{lcm_denoms, PuiseuxSeries};
use crate::algebra::{root_clusters, Poly};
use crate::error::{Error, Result};
use crate::newton_polygon::NewtonPolygon;
use crate::scalar::{cplx, Field, Rat, Real};
use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq)]
struct Step {
    node: usize,
    choice: (usize, usize, usize),
    exp: Rat,
}

/// A group of roots sharing all terms below the bound.
#[derive(Clone, Debug)]
pub struct Leaf<R> {
    pub series: PuiseuxSeries<R>,
    pub mult: u32,
    path: Vec<Step>,
}

/// All roots of a polynomial, with exact contact orders between roots of the
/// same expansion.
#[derive(Clone, Debug)]
pub struct RootTree<R> {
    pub leaves: Vec<Leaf<R>>,
    pub bound: Rat,
    /// Smallest order among roots through the origin.
    pub min_order: Option<Rat>,
}

impl<R: Real> RootTree<R> {
    /// `ord(leaf_a - leaf_b)`, or `None` if they agree below the bound.
    pub fn contact(&self, a: usize, b: usize) -> Option<Rat> {
        let (pa, pb) = (&self.leaves[a].path, &self.leaves[b].path);
        for (x, y) in pa.iter().zip(pb.iter()) {
            if x.choice != y.choice {
                return Some(x.exp.clone().min(y.exp.clone()));
            }
        }
        None
    }

    /// Leaves through the origin.
    pub fn origin_leaves(&self) -> impl Iterator<Item = (usize, &Leaf<R>)> {
        self.leaves.iter().enumerate().filter(|(_, l)| l.series.order().map_or(true, |o| o > Rat::zero()))
    }
}

type Rows<R> = Vec<Vec<Num<R>>>;

struct Expander<R> {
    bound: Rat,
    prec: u32,
    next_id: usize,
    leaves: Vec<Leaf<R>>,
}

fn floor_u(r: &Rat) -> usize {
    if *r <= Rat::zero() {
        return 0;
    }
    r.floor().to_integer().to_usize().expect("truncation degree fits")
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl<R: Real> Expander<R> {
    fn substitute(&self, g: &Rows<R>, p: usize, q: usize, l: usize, c: &Complex<R>, cap: usize) -> Result<Rows<R>> {
        let prec = self.prec;
        let d = g.len() - 1;
        let lc = cplx::log2_abs(c);
        let mut cpow = vec![cplx::from_int::<R>(1, prec)];
        for k in 1..=d {
            cpow.push(cpow[k - 1].clone() * c.clone());
        }
        let mut out: Rows<R> = vec![vec![Num::zero(prec); cap + 1]; d + 1];
        for (j, row) in g.iter().enumerate() {
            for (i, a) in row.iter().enumerate() {
                if a.mag == f64::NEG_INFINITY {
                    continue;
                }
                let raw = q * i + p * j;
                if raw < l {
                    if cplx::is_zero(&a.v) {
                        continue;
                    }
                    return Err(Error::Internal("support below the Newton edge".into()));
                }
                let e = raw - l;
                if e > cap {
                    continue;
                }
                let live = !cplx::is_zero(&a.v);
                for j2 in 0..=j {
                    let k = j - j2;
                    let b = binom(j, j2);
                    let mag = a.mag + b.log2() + if k == 0 { 0.0 } else { k as f64 * lc };
                    let slot = &mut out[j2][e];
                    if live {
                        let t = a.v.clone() * cpow[k].clone();
                        let t = if b == 1.0 { t } else { cplx::scale(&t, &R::from_f64(b, prec)) };
                        slot.v = slot.v.clone() + t;
                    }
                    slot.mag = log_add(slot.mag, mag);
                }
            }
        }
        Ok(out)
    }

    fn leaf(&mut self, prefix: &[(Rat, Complex<R>)], mult: usize, mut path: Vec<Step>, node: usize) {
        path.push(Step { node, choice: (usize::MAX, 0, 0), exp: self.bound.clone() });
        let series = PuiseuxSeries::new(prefix.to_vec(), self.bound.clone());
        self.leaves.push(Leaf { series, mult: mult as u32, path });
    }

    /// Expands the `m` roots of positive order of `g`. Returns the smallest
    /// edge inclination met (in units of x), if any.
    fn node(
        &mut self,
        mut g: Rows<R>,
        m: usize,
        big_n: usize,
        offset: Rat,
        prefix: Vec<(Rat, Complex<R>)>,
        path: Vec<Step>,
    ) -> Result<Option<Rat>> {
        let id = self.next_id;
        self.next_id += 1;
        let nr = Rat::from_integer(BigInt::from(big_n));
        let rho_max = (&self.bound - &offset) * &nr;
        if !nonzero(&g[m][0], self.prec)? {
            return Err(Error::precision(self.prec, "lost the vertex on the vertical axis"));
        }
        let mut pts = vec![(0u32, m as u32)];
        for (j, row) in g.iter_mut().enumerate().take(m) {
            let lim = &rho_max * Rat::from_integer(BigInt::from(m - j));
            for (i, a) in row.iter_mut().enumerate() {
                if Rat::from_integer(BigInt::from(i)) >= lim {
                    break;
                }
                if nonzero(a, self.prec)? {
                    pts.push((i as u32, j as u32));
                    break;
                }
                a.v = cplx::zero(self.prec);
            }
        }
        let poly = NewtonPolygon::from_points(&pts);
        let mut used = 0usize;
        let mut min_order = None;
        for (ei, edge) in poly.edges.iter().enumerate() {
            let rho = edge.inclination.clone();
            if min_order.is_none() {
                min_order = Some(&rho / &nr);
            }
            if rho >= rho_max {
                break;
            }
            used += edge.height() as usize;
            let p = rho.numer().to_usize().unwrap();
            let q = rho.denom().to_usize().unwrap();
            let l = q * edge.start.0 as usize + p * edge.start.1 as usize;
            let nt = edge.height() as usize / q;
            let mut pc = Vec::with_capacity(nt + 1);
            for t in 0..=nt {
                let j = edge.end.1 as usize + q * t;
                let i = (l - p * j) / q;
                let on = pts.contains(&(i as u32, j as u32));
                pc.push(if on { g[j][i].v.clone() } else { cplx::zero(self.prec) });
            }
            let clusters = root_clusters(&pc, self.prec)?;
            let exp = &offset + &rho / &nr;
            let child_n = big_n * q;
            let child_rho_max = (&self.bound - &exp) * Rat::from_integer(BigInt::from(child_n));
            for (ci, cl) in clusters.iter().enumerate() {
                let w = cplx::root(&cl.z, q as u64, self.prec);
                for k in 0..q {
                    let c = if k == 0 { w.clone() } else { w.clone() * cplx::unity::<R>(q as u64, k as u64, self.prec) };
                    let mu = cl.mult;
                    let cap = floor_u(&(&child_rho_max * Rat::from_integer(BigInt::from(mu))));
                    let mut g2 = self.substitute(&g, p, q, l, &c, cap)?;
                    for row in g2.iter_mut().take(mu) {
                        if nonzero(&row[0], self.prec)? {
                            return Err(Error::precision(self.prec, "edge root multiplicity inconsistent with expansion"));
                        }
                        row[0].v = cplx::zero(self.prec);
                    }
                    let mut pre = prefix.clone();
                    pre.push((exp.clone(), c));
                    let mut pa = path.clone();
                    pa.push(Step { node: id, choice: (ei, ci, k), exp: exp.clone() });
                    self.node(g2, mu, child_n, exp.clone(), pre, pa)?;
                }
            }
        }
        if used < m {
            self.leaf(&prefix, m - used, path, id);
        }
        Ok(min_order)
    }
}

/// Expands every finite root of `f` as a series in `x` truncated at
/// `bound`.
pub fn root_tree<K: Field, R: Real>(f: &Poly<K>, x: &str, y: &str, bound: &Rat, prec: u32) -> Result<RootTree<R>> {
    if *bound <= Rat::zero() {
        return Err(Error::InvalidInput("order bound must be positive".into()));
    }
    let support = f.support2(x, y);
    let d = f.degree_in(y) as usize;
    let mut tree = RootTree { leaves: vec![], bound: bound.clone(), min_order: None };
    if d == 0 {
        return Ok(tree);
    }
    let f0: Vec<(usize, K)> = support.iter().filter(|((i, _), _)| *i == 0).map(|((_, j), c)| (*j as usize, c.clone())).collect();
    if f0.is_empty() {
        return Err(Error::InvalidInput(format!("{} divides the polynomial", x)));
    }
    let m = f0[0].0;
    let cap = floor_u(&(bound * Rat::from_integer(BigInt::from(d))));
    let mut g: Rows<R> = vec![vec![Num::zero(prec); cap + 1]; d + 1];
    for ((i, j), c) in &support {
        if (*i as usize) <= cap {
            g[*j as usize][*i as usize] = Num::exact(c.to_complex(prec));
        }
    }
    let mut ex = Expander { bound: bound.clone(), prec, next_id: 0, leaves: vec![] };
    let root_id = ex.next_id;
    if m > 0 {
        tree.min_order = ex.node(g.clone(), m, 1, Rat::zero(), vec![], vec![])?;
    } else {
        ex.next_id += 1;
    }
    let top = f0.last().unwrap().0;
    if top > m {
        // roots with a nonzero constant term
        let mut pc = vec![cplx::zero::<R>(prec); top - m + 1];
        for (j, c) in &f0 {
            pc[j - m] = c.to_complex(prec);
        }
        let clusters = root_clusters(&pc, prec)?;
        let id = root_id;
        for (ci, cl) in clusters.iter().enumerate() {
            let cap = floor_u(&(bound * Rat::from_integer(BigInt::from(cl.mult))));
            let mut g2 = ex.substitute(&g, 0, 1, 0, &cl.z, cap)?;
            for row in g2.iter_mut().take(cl.mult) {
                row[0].v = cplx::zero(prec);
            }
            let path = vec![Step { node: id, choice: (usize::MAX - 1, ci, 0), exp: Rat::zero() }];
            ex.node(g2, cl.mult, 1, Rat::zero(), vec![(Rat::zero(), cl.z.clone())], path)?;
        }
        tree.min_order = Some(Rat::zero());
    }
    tree.leaves = ex.leaves;
    Ok(tree)
}

/// Newton-Puiseux roots of `f` in `y` as series in `x` truncated at
/// `bound`, with multiplicities. Roots at infinity are not returned.
pub fn puiseux_roots<K: Field, R: Real>(
    f: &Poly<K>,
    x: &str,
    y: &str,
    bound: &Rat,
    prec: u32,
) -> Result<Vec<(PuiseuxSeries<R>, u32)>> {
    let poly = crate::newton_polygon::polygon(f, x, y)?;
    if let Some(e) = poly.edges.first() {
        if poly.vertices[0].0 == 0 && e.inclination >= *bound {
            return Err(Error::InvalidInput(format!("order bound {} is not above the smallest root order {}", bound, e.inclination)));
        }
    }
    let tree: RootTree<R> = root_tree(f, x, y, bound, prec)?;
    Ok(tree.leaves.into_iter().map(|l| (l.series, l.mult)).collect())
}

#[allow(dead_code)]
pub(crate) fn ramification_of<R>(leaf: &Leaf<R>) -> u64 {
    lcm_denoms(leaf.series.terms.iter().map(|t| &t.0))
}
