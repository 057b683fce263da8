//! Polar curve and discriminant of the morphism `(x, f)`, topological types
//! of plane curves given by an equation, and the jacobian Newton polygon
//! predicted from the semigroup.

use crate::algebra::{resultant, squarefree_decompose, Poly};
use crate::error::{escalate, Error, Result};
use crate::invariants::{semigroup_from_char, CharExponents, Semigroup};
use crate::newton_polygon::NewtonPolygon;
use crate::puiseux::{char_from_support, compose, numerators, root_tree, PuiseuxSeries, RootTree};
use crate::scalar::{BigFloat, Field, Rat};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

/// Default working precision of numeric expansions, in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// `f_y`, the polar of `(x, f)`.
pub fn polar<K: Field>(f: &Poly<K>) -> Poly<K> {
    f.derivative("y")
}

/// Exact discriminant `D(u, v)` with an optional warning.
#[derive(Clone, Debug)]
pub struct Discriminant<K> {
    pub poly: Poly<K>,
    pub warning: Option<String>,
}

fn check_xy<K: Field>(f: &Poly<K>) -> Result<()> {
    if let Some(v) = f.support_vars().into_iter().find(|v| v != "x" && v != "y") {
        return Err(Error::InvalidInput(format!("expected a polynomial in x, y; found {}", v)));
    }
    Ok(())
}

/// Monic (or at least primitive) in `v` over `K[u]`.
fn normalize_in_v<K: Field>(d: &Poly<K>) -> Poly<K> {
    let p = d.to_upoly2("v", "u").primitive();
    let lc = p.lc();
    let p = if lc.degree() == Some(0) { p.scale(&crate::algebra::UPoly::constant(lc.lc().inv())) } else { p };
    Poly::from_upoly2(&p, "v", "u").with_vars(&["u".to_string(), "v".to_string()])
}

/// `D(u, v) = Res_y(f_y(u, y), v - f(u, y))`, normalized monic in `v`.
pub fn discriminant_exact<K: Field>(f: &Poly<K>) -> Result<Discriminant<K>> {
    check_xy(f)?;
    if f.degree_in("y") == 0 {
        return Err(Error::InvalidInput("the polynomial does not involve y".into()));
    }
    let vars = ["u", "v", "y"];
    let owned: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let fy = polar(f);
    if fy.degree_in("y") == 0 {
        return Ok(Discriminant {
            poly: Poly::constant(K::one(), &["u", "v"]),
            warning: Some("f_y does not involve y; the polar curve is empty".into()),
        });
    }
    let fu = f.with_vars(&["x".to_string(), "y".to_string()]).rename("x", "u").with_vars(&owned);
    let fyu = fy.with_vars(&["x".to_string(), "y".to_string()]).rename("x", "u").with_vars(&owned);
    let g = &Poly::var("v", &vars) - &fu;
    let r = resultant(&fyu, &g, "y")?;
    let r = r.with_vars(&["u".to_string(), "v".to_string()]);
    let poly = normalize_in_v(&r);
    let warning = match poly.coeffs_in("v").last() {
        Some(lc) if lc.total_degree() > 0 => Some("leading coefficient in v vanishes at the origin".into()),
        _ => None,
    };
    Ok(Discriminant { poly, warning })
}

/// One branch of a topological type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TypeBranch {
    pub char: CharExponents,
    pub mult: u32,
}

/// Topological type of a (possibly non-reduced) plane curve germ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EquisingularityType {
    pub branches: Vec<TypeBranch>,
    /// Symmetric, zero diagonal.
    pub intersections: Vec<Vec<u64>>,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl EquisingularityType {
    /// Canonical form of the given data.
    pub fn new(branches: Vec<TypeBranch>, intersections: Vec<Vec<u64>>) -> Result<Self> {
        let k = branches.len();
        if intersections.len() != k || intersections.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidInput("intersection matrix has the wrong shape".into()));
        }
        for i in 0..k {
            if intersections[i][i] != 0 {
                return Err(Error::InvalidInput("intersection matrix must have an empty diagonal".into()));
            }
            for j in 0..i {
                if intersections[i][j] != intersections[j][i] {
                    return Err(Error::InvalidInput("intersection matrix is not symmetric".into()));
                }
            }
        }
        Ok(Self::canonical(branches, intersections))
    }

    pub fn empty() -> Self {
        EquisingularityType { branches: vec![], intersections: vec![] }
    }

    fn permuted(branches: &[TypeBranch], m: &[Vec<u64>], perm: &[usize]) -> Self {
        EquisingularityType {
            branches: perm.iter().map(|&i| branches[i].clone()).collect(),
            intersections: perm.iter().map(|&i| perm.iter().map(|&j| m[i][j]).collect()).collect(),
        }
    }

    /// Sorted by branch data and sorted intersection rows; ties are broken by
    /// the lexicographically smallest matrix.
    fn canonical(branches: Vec<TypeBranch>, m: Vec<Vec<u64>>) -> Self {
        let key = |i: usize| {
            let mut row = m[i].clone();
            row.sort_unstable();
            (branches[i].clone(), row)
        };
        let mut order: Vec<usize> = (0..branches.len()).collect();
        order.sort_by_key(|&i| key(i));
        let mut groups: Vec<Vec<usize>> = vec![];
        for &i in &order {
            match groups.last_mut() {
                Some(g) if key(g[0]) == key(i) => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        let count: usize = groups.iter().map(|g| factorial(g.len())).product();
        if count == 1 || count > 40320 {
            return Self::permuted(&branches, &m, &order);
        }
        let mut best: Option<Self> = None;
        let mut cur = vec![];
        Self::search(&groups, 0, &mut cur, &branches, &m, &mut best);
        best.unwrap()
    }

    fn search(groups: &[Vec<usize>], gi: usize, cur: &mut Vec<usize>, b: &[TypeBranch], m: &[Vec<u64>], best: &mut Option<Self>) {
        if gi == groups.len() {
            let t = Self::permuted(b, m, cur);
            if best.as_ref().map_or(true, |x| t.intersections < x.intersections) {
                *best = Some(t);
            }
            return;
        }
        let g = &groups[gi];
        let mut items = g.clone();
        permutations(&mut items, 0, &mut |p| {
            let n = cur.len();
            cur.extend_from_slice(p);
            Self::search(groups, gi + 1, cur, b, m, best);
            cur.truncate(n);
        });
    }

    /// Total number of branches counted with multiplicity.
    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn semigroups(&self) -> Vec<Semigroup> {
        self.branches.iter().map(|b| semigroup_from_char(&b.char)).collect()
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

fn angle_list(xs: &[u64]) -> String {
    let s: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("<{}>", s.join(","))
}

impl fmt::Display for EquisingularityType {
    /// `D1 D2^2; S(D1)=<1>, S(D2)=<2,15>; i0(D1,D2)=6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.branches.is_empty() {
            return write!(f, "empty");
        }
        let names: Vec<String> = self
            .branches
            .iter()
            .enumerate()
            .map(|(i, b)| if b.mult == 1 { format!("D{}", i + 1) } else { format!("D{}^{}", i + 1, b.mult) })
            .collect();
        write!(f, "{}", names.join(" "))?;
        let sg: Vec<String> = self
            .semigroups()
            .iter()
            .enumerate()
            .map(|(i, s)| format!("S(D{})={}", i + 1, angle_list(&s.generators)))
            .collect();
        write!(f, "; {}", sg.join(", "))?;
        let mut pairs = vec![];
        for i in 0..self.branches.len() {
            for j in i + 1..self.branches.len() {
                pairs.push(format!("i0(D{},D{})={}", i + 1, j + 1, self.intersections[i][j]));
            }
        }
        if !pairs.is_empty() {
            write!(f, "; {}", pairs.join(", "))?;
        }
        Ok(())
    }
}

/// A branch found as a conjugacy orbit of roots of a squarefree factor.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Index into the squarefree factors.
    pub factor: usize,
    pub char: CharExponents,
    pub mult: u32,
    /// Number of roots in the orbit.
    pub ramification: u64,
    pub representative: PuiseuxSeries<BigFloat>,
}

/// Branch decomposition of a curve through the origin.
#[derive(Clone, Debug)]
pub struct Decomposition<K> {
    pub factors: Vec<(Poly<K>, u32)>,
    pub orbits: Vec<Orbit>,
    pub intersections: Vec<Vec<u64>>,
    /// Order bound used for the expansions.
    pub bound: Rat,
    pub precision: u32,
}

impl<K: Field> Decomposition<K> {
    pub fn equisingularity_type(&self) -> EquisingularityType {
        let branches = self.orbits.iter().map(|o| TypeBranch { char: o.char.clone(), mult: o.mult }).collect();
        EquisingularityType::canonical(branches, self.intersections.clone())
    }
}

fn ord_u<K: Field>(r: &Poly<K>, u: &str) -> Result<u64> {
    if r.is_zero() {
        return Err(Error::Internal("vanishing resultant of coprime factors".into()));
    }
    let p = r.to_upoly1(u).ok_or_else(|| Error::Internal("resultant is not univariate".into()))?;
    Ok(p.order().unwrap() as u64)
}

fn centered<K: Field>(f: &Poly<K>, h: &str, v: &str) -> bool {
    let d = f.degree_in(v);
    f.support2(h, v).iter().filter(|((i, _), _)| *i == 0).all(|((_, j), _)| *j == d)
}

/// Order bound above which every root of every factor is separated from
/// every other root: `ord(alpha - beta)` is at most half the order of the
/// discriminant of a factor, and at most the order of the resultant of two
/// factors.
pub fn separation_bound<K: Field>(factors: &[(Poly<K>, u32)], h: &str, v: &str) -> Result<(Rat, Vec<Vec<Option<u64>>>)> {
    let k = factors.len();
    let mut best = 0u64;
    let mut res = vec![vec![None; k]; k];
    for (i, (fi, _)) in factors.iter().enumerate() {
        if fi.degree_in(v) >= 2 {
            let disc = resultant(fi, &fi.derivative(v), v)?;
            best = best.max(ord_u(&disc, h)? / 2);
        }
        for j in 0..i {
            let r = ord_u(&resultant(fi, &factors[j].0, v)?, h)?;
            res[i][j] = Some(r);
            res[j][i] = Some(r);
            best = best.max(r);
        }
    }
    Ok((Rat::from_integer(BigInt::from(best + 1)), res))
}

/// Conjugacy orbits among the origin leaves of a squarefree tree.
fn orbits_of(tree: &RootTree<BigFloat>, prec: u32) -> Result<Vec<Vec<usize>>> {
    let leaves: Vec<usize> = tree.origin_leaves().map(|(i, _)| i).collect();
    let mut owner = vec![false; tree.leaves.len()];
    let mut out = vec![];
    for &i in &leaves {
        if owner[i] {
            continue;
        }
        let leaf = &tree.leaves[i];
        if leaf.mult != 1 {
            return Err(Error::precision(prec, "roots of a squarefree factor were not separated"));
        }
        let s = &leaf.series;
        let mut orbit = vec![i];
        owner[i] = true;
        for k in 1..s.ramification {
            let c = s.conjugate(k, prec);
            let mut found = None;
            for &j in &leaves {
                if j != i && c.agrees(&tree.leaves[j].series, prec)? {
                    found = Some(j);
                    break;
                }
            }
            match found {
                Some(j) if !owner[j] => {
                    owner[j] = true;
                    orbit.push(j);
                }
                _ => return Err(Error::precision(prec, "conjugate roots could not be matched")),
            }
        }
        out.push(orbit);
    }
    Ok(out)
}

fn rat_to_u64(r: &Rat) -> Result<u64> {
    if !r.is_integer() {
        return Err(Error::Internal(format!("non-integral intersection number {}", r)));
    }
    r.to_integer().to_u64().ok_or_else(|| Error::Internal("negative intersection number".into()))
}

fn decompose_at<K: Field>(
    factors: &[(Poly<K>, u32)],
    h: &str,
    v: &str,
    bound: &Rat,
    res: &[Vec<Option<u64>>],
    prec: u32,
) -> Result<(Vec<Orbit>, Vec<Vec<u64>>)> {
    let trees: Vec<RootTree<BigFloat>> = factors.iter().map(|(f, _)| root_tree(f, h, v, bound, prec)).collect::<Result<_>>()?;
    let mut orbits = vec![];
    let mut members: Vec<(usize, Vec<usize>)> = vec![];
    for (fi, tree) in trees.iter().enumerate() {
        for o in orbits_of(tree, prec)? {
            let s = tree.leaves[o[0]].series.clone();
            let n = s.ramification;
            let beta = char_from_support(n, &numerators(&s));
            orbits.push(Orbit {
                factor: fi,
                char: CharExponents::new(beta)?,
                mult: factors[fi].1,
                ramification: n,
                representative: s,
            });
            members.push((fi, o));
        }
    }
    let k = orbits.len();
    let mut m = vec![vec![0u64; k]; k];
    for a in 0..k {
        for b in 0..a {
            let (fa, la) = &members[a];
            let (fb, lb) = &members[b];
            let mut total = Rat::zero();
            for &i in la {
                for &j in lb {
                    let c = if fa == fb {
                        trees[*fa].contact(i, j)
                    } else {
                        trees[*fa].leaves[i].series.contact(&trees[*fb].leaves[j].series, prec)?
                    };
                    total += c.ok_or_else(|| Error::precision(prec, "distinct branches agree below the order bound"))?;
                }
            }
            let t = rat_to_u64(&total)?;
            m[a][b] = t;
            m[b][a] = t;
        }
    }
    // totals across two centered factors must reproduce the exact resultant order
    for (i, fi) in factors.iter().enumerate() {
        for (j, fj) in factors.iter().enumerate().take(i) {
            if !(centered(&fi.0, h, v) && centered(&fj.0, h, v)) {
                continue;
            }
            let mut sum = 0;
            for a in 0..k {
                for b in 0..k {
                    if members[a].0 == i && members[b].0 == j {
                        sum += m[a][b];
                    }
                }
            }
            if Some(sum) != res[i][j] {
                return Err(Error::precision(prec, "intersection sums disagree with the resultant"));
            }
        }
    }
    Ok((orbits, m))
}

/// Branches of `d` through the origin, with multiplicities from the
/// squarefree decomposition in `v` and pairwise intersection numbers.
pub fn decompose<K: Field>(d: &Poly<K>, h: &str, v: &str, prec: u32) -> Result<Decomposition<K>> {
    if d.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial has no branches".into()));
    }
    if d.degree_in(v) == 0 {
        return Ok(Decomposition { factors: vec![], orbits: vec![], intersections: vec![], bound: Rat::zero(), precision: prec });
    }
    if let Some(w) = d.support_vars().into_iter().find(|w| w != h && w != v) {
        return Err(Error::InvalidInput(format!("unexpected variable {}", w)));
    }
    let factors: Vec<(Poly<K>, u32)> =
        squarefree_decompose(d, v)?.into_iter().filter(|(f, _)| f.degree_in(v) > 0).collect();
    let (bound, res) = separation_bound(&factors, h, v)?;
    let mut used = prec;
    let (orbits, intersections) = escalate(prec, |p| {
        used = p;
        decompose_at(&factors, h, v, &bound, &res, p)
    })?;
    Ok(Decomposition { factors, orbits, intersections, bound, precision: used })
}

/// Topological type of the curve `d = 0` at the origin, `d` a polynomial in
/// `h, v` with roots `v = v(h)`.
pub fn equisingularity_type<K: Field>(d: &Poly<K>, h: &str, v: &str) -> Result<EquisingularityType> {
    Ok(decompose(d, h, v, DEFAULT_PRECISION)?.equisingularity_type())
}

/// `delta_j = f(u, gamma_j(u))` below `bound` for the roots `gamma_j` of the
/// polar, with multiplicities.
pub fn discriminant_roots<K: Field>(f: &Poly<K>, bound: &Rat, prec: u32) -> Result<Vec<(PuiseuxSeries<BigFloat>, u32)>> {
    check_xy(f)?;
    let fy = polar(f);
    if fy.degree_in("y") == 0 {
        return Ok(vec![]);
    }
    let deeper = bound + Rat::from_integer(BigInt::from(1));
    let tree: RootTree<BigFloat> = root_tree(&fy, "x", "y", &deeper, prec)?;
    tree.leaves.iter().map(|l| Ok((compose(f, "x", "y", &l.series, bound, prec)?, l.mult))).collect()
}

/// Matches the composed roots `delta_j` against the roots of the exact
/// discriminant, as multisets, below the separation bound of `D`.
pub fn cross_check_roots<K: Field>(f: &Poly<K>, d: &Poly<K>, prec: u32) -> Result<bool> {
    if d.degree_in("v") == 0 {
        return Ok(discriminant_roots(f, &Rat::from_integer(BigInt::from(1)), prec)?.is_empty());
    }
    let factors = squarefree_decompose(d, "v")?;
    let (bound, _) = separation_bound(&factors, "u", "v")?;
    escalate(prec, |p| {
        let deltas = discriminant_roots(f, &bound, p)?;
        let tree: RootTree<BigFloat> = root_tree(d, "u", "v", &bound, p)?;
        let mut left: Vec<u32> = tree.leaves.iter().map(|l| l.mult).collect();
        for (s, m) in &deltas {
            let mut need = *m;
            for (i, l) in tree.leaves.iter().enumerate() {
                if need == 0 {
                    break;
                }
                if left[i] > 0 && s.agrees(&l.series, p)? {
                    let take = need.min(left[i]);
                    left[i] -= take;
                    need -= take;
                }
            }
            if need > 0 {
                return Ok(false);
            }
        }
        Ok(left.iter().all(|&x| x == 0))
    })
}

/// Jacobian Newton polygon of `(x, f)` predicted from the semigroup: edge
/// `i` has vertical length `(e_{i-1}/e_i - 1) e_0/e_{i-1}` and horizontal
/// length `(e_{i-1}/e_i - 1) s_i`.
pub fn merle_polygon(s: &Semigroup) -> NewtonPolygon {
    let g = s.genus();
    if g == 0 {
        return NewtonPolygon::from_vertices(vec![]);
    }
    let e = &s.e;
    let (mut h, mut v) = (0u64, e[0] - 1);
    let mut vertices = vec![(0u32, v as u32)];
    for i in 1..=g {
        let r = e[i - 1] / e[i] - 1;
        h += r * s.generators[i];
        v -= r * e[0] / e[i - 1];
        vertices.push((h as u32, v as u32));
    }
    NewtonPolygon::from_vertices(vertices)
}
