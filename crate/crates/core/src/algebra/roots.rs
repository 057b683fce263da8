//! Complex roots of univariate polynomials: Aberth iteration, clustering of
//! multiple roots, Newton refinement of each cluster on the derivative that
//! keeps it simple.

use crate::error::{Error, Result};
use crate::scalar::{cplx, Real};
use num_complex::Complex;

/// A root together with its multiplicity.
#[derive(Clone, Debug)]
pub struct RootCluster<R> {
    pub z: Complex<R>,
    pub mult: usize,
}

fn horner<R: Real>(p: &[Complex<R>], z: &Complex<R>, prec: u32) -> Complex<R> {
    let mut acc = cplx::zero(prec);
    for a in p.iter().rev() {
        acc = acc * z.clone() + a.clone();
    }
    acc
}

/// `sum |a_i| |z|^i` on a log2 scale: the natural magnitude of `p(z)`.
fn log2_scale<R: Real>(p: &[Complex<R>], z: &Complex<R>) -> f64 {
    let lz = cplx::log2_abs(z);
    let mut best = f64::NEG_INFINITY;
    for (i, a) in p.iter().enumerate() {
        let la = cplx::log2_abs(a);
        if la == f64::NEG_INFINITY {
            continue;
        }
        let t = if i == 0 { la } else if lz == f64::NEG_INFINITY { continue } else { la + i as f64 * lz };
        best = best.max(t);
    }
    best + (p.len() as f64).log2()
}

fn derivative<R: Real>(p: &[Complex<R>], prec: u32) -> Vec<Complex<R>> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| cplx::scale(a, &R::from_int(i as i64, prec)))
        .collect()
}

fn strip<R: Real>(p: &[Complex<R>]) -> Vec<Complex<R>> {
    let mut v = p.to_vec();
    while v.last().map_or(false, cplx::is_zero) {
        v.pop();
    }
    v
}

/// All roots with multiplicity (flattened).
pub fn complex_roots<R: Real>(p: &[Complex<R>], prec: u32) -> Result<Vec<Complex<R>>> {
    let cl = root_clusters(p, prec)?;
    let mut out = vec![];
    for c in cl {
        for _ in 0..c.mult {
            out.push(c.z.clone());
        }
    }
    Ok(out)
}

/// Distinct roots with multiplicities. `p` holds coefficients lowest degree
/// first.
pub fn root_clusters<R: Real>(p: &[Complex<R>], prec: u32) -> Result<Vec<RootCluster<R>>> {
    let prec_eff = R::effective_prec(prec);
    let p = strip(p);
    if p.len() < 2 {
        return Err(Error::InvalidInput("root finding needs degree at least one".into()));
    }
    let top = p.iter().map(cplx::log2_abs).fold(f64::NEG_INFINITY, f64::max);
    if cplx::log2_abs(p.last().unwrap()) < top - prec_eff as f64 / 2.0 {
        return Err(Error::precision(prec, "leading coefficient numerically zero"));
    }
    let mut out = vec![];
    let zeros = p.iter().take_while(|a| cplx::is_zero(*a)).count();
    if zeros > 0 {
        out.push(RootCluster { z: cplx::zero(prec), mult: zeros });
    }
    let q: Vec<Complex<R>> = p[zeros..].to_vec();
    let n = q.len() - 1;
    if n == 0 {
        return Ok(out);
    }
    if n == 1 {
        let z = -(q[0].clone() / q[1].clone());
        out.push(RootCluster { z, mult: 1 });
        return Ok(out);
    }
    let approx = aberth(&q, prec)?;
    out.extend(cluster_and_polish(&q, approx, prec)?);
    Ok(out)
}

fn aberth<R: Real>(q: &[Complex<R>], prec: u32) -> Result<Vec<Complex<R>>> {
    let n = q.len() - 1;
    let pe = R::effective_prec(prec) as f64;
    let ln = cplx::log2_abs(&q[n]);
    let mut lr = f64::NEG_INFINITY;
    for k in 1..=n {
        let la = cplx::log2_abs(&q[n - k]);
        if la > f64::NEG_INFINITY {
            lr = lr.max((la - ln) / k as f64);
        }
    }
    let radius = 2f64.powf(lr.clamp(-900.0, 900.0));
    let mut z: Vec<Complex<R>> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            let r = radius * (1.0 + 0.05 * k as f64 / n as f64);
            Complex::new(R::from_f64(r * ang.cos(), prec), R::from_f64(r * ang.sin(), prec))
        })
        .collect();
    let dq = derivative(q, prec);
    let max_iter = 200 + 8 * R::effective_prec(prec) as usize;
    for _ in 0..max_iter {
        let mut worst = f64::NEG_INFINITY;
        for i in 0..n {
            let pv = horner(q, &z[i], prec);
            if cplx::is_zero(&pv) {
                continue;
            }
            let dv = horner(&dq, &z[i], prec);
            let mut s = cplx::zero::<R>(prec);
            for j in 0..n {
                if j != i {
                    let d = z[i].clone() - z[j].clone();
                    if !cplx::is_zero(&d) {
                        s = s + Complex::new(R::from_int(1, prec), R::from_int(0, prec)) / d;
                    }
                }
            }
            let w = if cplx::is_zero(&dv) {
                Complex::new(R::from_f64(1e-3 * radius.max(1e-300), prec), R::from_int(0, prec))
            } else {
                let nq = pv / dv;
                let den = Complex::new(R::from_int(1, prec), R::from_int(0, prec)) - nq.clone() * s;
                if cplx::is_zero(&den) {
                    nq
                } else {
                    nq / den
                }
            };
            let rel = cplx::log2_abs(&w) - cplx::log2_abs(&z[i]).max(-pe);
            worst = worst.max(rel);
            z[i] = z[i].clone() - w;
        }
        if worst < -pe + 4.0 {
            break;
        }
    }
    Ok(z)
}

fn cluster_and_polish<R: Real>(q: &[Complex<R>], z: Vec<Complex<R>>, prec: u32) -> Result<Vec<RootCluster<R>>> {
    let n = z.len();
    let pe = R::effective_prec(prec) as f64;
    let scale: f64 = z.iter().map(cplx::log2_abs).fold(f64::NEG_INFINITY, f64::max).max(-pe);
    let tight = scale - pe / 8.0;
    let loose = scale - pe / 16.0;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = cplx::log2_abs(&(z[i].clone() - z[j].clone()));
            if d < tight {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            } else if d < loose {
                return Err(Error::precision(prec, "ambiguous root cluster"));
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![];
    let mut seen = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if seen[r] == usize::MAX {
            seen[r] = groups.len();
            groups.push(vec![]);
        }
        groups[seen[r]].push(i);
    }
    let mut derivs = vec![q.to_vec()];
    for k in 1..=n {
        let d = derivative(&derivs[k - 1], prec);
        derivs.push(d);
    }
    let mut out = vec![];
    for g in groups {
        let m = g.len();
        let mut c = cplx::zero::<R>(prec);
        for &i in &g {
            c = c + z[i].clone();
        }
        c = cplx::scale(&c, &(R::from_int(1, prec) / R::from_int(m as i64, prec)));
        let pm = &derivs[m - 1];
        let pm1 = &derivs[m];
        for _ in 0..(20 + (pe as usize).ilog2() as usize * 2) {
            let a = horner(pm, &c, prec);
            if cplx::is_zero(&a) {
                break;
            }
            let b = horner(pm1, &c, prec);
            if cplx::is_zero(&b) {
                break;
            }
            let w = a / b;
            let small = cplx::log2_abs(&w) < cplx::log2_abs(&c).max(scale - pe) - pe + 2.0;
            c = c - w;
            if small {
                break;
            }
        }
        for dk in derivs.iter().take(m) {
            let v = horner(dk, &c, prec);
            let lv = cplx::log2_abs(&v);
            if lv > log2_scale(dk, &c) - pe / 2.0 {
                return Err(Error::precision(prec, "cluster refinement did not certify"));
            }
        }
        out.push(RootCluster { z: c, mult: m });
    }
    Ok(out)
}
