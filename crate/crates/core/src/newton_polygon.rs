//! Newton polygons of bivariate polynomials, edge polynomials and
//! Kouchnirenko non-degeneracy.

use crate::algebra::{complex_roots, squarefree_upoly, Poly, UPoly};
use crate::error::{Error, Result};
use crate::scalar::{BigFloat, Field, Rat, Real};
use num_bigint::BigInt;
use num_complex::Complex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Upper-left endpoint.
    pub start: (u32, u32),
    /// Lower-right endpoint.
    pub end: (u32, u32),
    /// Horizontal over vertical projection.
    pub inclination: Rat,
}

impl Edge {
    pub fn new(start: (u32, u32), end: (u32, u32)) -> Self {
        let h = (end.0 - start.0) as i64;
        let v = (start.1 - end.1) as i64;
        Edge { start, end, inclination: Rat::new(BigInt::from(h), BigInt::from(v)) }
    }

    pub fn height(&self) -> u32 {
        self.start.1 - self.end.1
    }

    pub fn width(&self) -> u32 {
        self.end.0 - self.start.0
    }
}

/// Compact boundary of the Newton polygon. Coordinates are
/// `(exponent of the horizontal variable, exponent of the vertical one)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(u32, u32)>,
    pub edges: Vec<Edge>,
}

impl NewtonPolygon {
    pub fn from_vertices(vertices: Vec<(u32, u32)>) -> Self {
        let edges = vertices.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
        NewtonPolygon { vertices, edges }
    }

    /// Lower-left convex hull of a finite point set.
    pub fn from_points(points: &[(u32, u32)]) -> Self {
        let mut pts: Vec<(u32, u32)> = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.is_empty() {
            return NewtonPolygon { vertices: vec![], edges: vec![] };
        }
        let jmin = pts.iter().map(|p| p.1).min().unwrap();
        let mut hull: Vec<(u32, u32)> = Vec::new();
        for &p in &pts {
            // only points left of the first lowest point matter
            if let Some(last) = hull.last() {
                if last.1 == jmin {
                    break;
                }
                if p.1 >= last.1 {
                    continue;
                }
            }
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                let cross = (b.0 as i64 - a.0 as i64) * (p.1 as i64 - a.1 as i64)
                    - (b.1 as i64 - a.1 as i64) * (p.0 as i64 - a.0 as i64);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        Self::from_vertices(hull)
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn height(&self) -> u32 {
        self.edges.iter().map(Edge::height).sum()
    }
}

/// Newton polygon of `f` in the variables `(h, v)`.
pub fn polygon<K: Field>(f: &Poly<K>, h: &str, v: &str) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::InvalidInput("Newton polygon of the zero polynomial".into()));
    }
    let pts: Vec<(u32, u32)> = f.support2(h, v).into_iter().map(|(e, _)| e).collect();
    Ok(NewtonPolygon::from_points(&pts))
}

/// `F_L(z)`: the terms of `f` on `edge`, as a polynomial in `z = v/h^{incl}`
/// with the lowest power of `z` removed.
pub fn edge_polynomial<K: Field>(f: &Poly<K>, h: &str, v: &str, edge: &Edge) -> Result<UPoly<K>> {
    if edge.height() == 0 || edge.width() == 0 {
        return Err(Error::InvalidInput("edge is not compact".into()));
    }
    let (dh, dv) = (edge.width() as i64, edge.height() as i64);
    let mut c = vec![K::zero(); edge.height() as usize + 1];
    for ((i, j), a) in f.support2(h, v) {
        let (di, dj) = (i as i64 - edge.start.0 as i64, edge.start.1 as i64 - j as i64);
        if di * dv == dj * dh && (0..=dv).contains(&dj) {
            c[(j - edge.end.1) as usize] = a;
        }
    }
    if c[0].is_zero() || c[c.len() - 1].is_zero() {
        return Err(Error::InvalidInput("edge does not belong to the polygon".into()));
    }
    Ok(UPoly::new(c))
}

/// A compact edge whose polynomial has a repeated factor.
#[derive(Clone, Debug)]
pub struct DegeneracyWitness<K> {
    pub edge: Edge,
    pub edge_polynomial: UPoly<K>,
    /// Monic repeated factor and its multiplicity.
    pub factor: UPoly<K>,
    pub multiplicity: u32,
    /// Numeric roots of `factor`.
    pub roots: Vec<Complex<f64>>,
}

/// Non-degeneracy verdict: `Ok(())` or the first offending edge.
pub fn is_nondegenerate<K: Field>(f: &Poly<K>, h: &str, v: &str) -> Result<std::result::Result<(), DegeneracyWitness<K>>> {
    let poly = polygon(f, h, v)?;
    for e in &poly.edges {
        let fl = edge_polynomial(f, h, v, e)?;
        if let Some((q, m)) = squarefree_upoly(&fl).into_iter().find(|(_, m)| *m > 1) {
            let q = q.monic();
            let cs: Vec<Complex<BigFloat>> = q.coeffs().iter().map(|c| c.to_complex(128)).collect();
            let roots = complex_roots(&cs, 128)
                .map(|r| r.iter().map(|z| Complex::new(z.re.to_f64(), z.im.to_f64())).collect())
                .unwrap_or_default();
            return Ok(Err(DegeneracyWitness { edge: e.clone(), edge_polynomial: fl, factor: q, multiplicity: m, roots }));
        }
    }
    Ok(Ok(()))
}
