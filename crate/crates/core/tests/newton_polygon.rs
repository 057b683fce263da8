use branchdisc::algebra::parse::parse_rat_poly;
use branchdisc::algebra::UPoly;
use branchdisc::newton_polygon::{edge_polynomial, is_nondegenerate, polygon, NewtonPolygon};
use branchdisc::scalar::{rat, rat_int, Rat};
use branchdisc::RatPoly;
use proptest::prelude::*;

fn p(s: &str) -> RatPoly {
    parse_rat_poly(s, &["x", "y", "u", "v"]).unwrap()
}

fn up(c: &[i64]) -> UPoly<Rat> {
    UPoly::new(c.iter().map(|x| rat_int(*x)).collect())
}

/// Brute force: a support point is a vertex iff some weight vector with
/// positive entries makes it the unique minimum.
fn brute_vertices(pts: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut out = vec![];
    for &a in pts {
        let mut is_vertex = false;
        for wa in 1..60u32 {
            for wb in 1..60u32 {
                let va = wa * a.0 + wb * a.1;
                if pts.iter().all(|&b| b == a || wa * b.0 + wb * b.1 > va) {
                    is_vertex = true;
                }
            }
        }
        if is_vertex {
            out.push(a);
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn single_edge_polygons() {
    let poly = polygon(&p("y^4 + x^3*y^2 + x^5"), "x", "y").unwrap();
    assert_eq!(poly.vertices, vec![(0, 4), (5, 0)]);
    assert_eq!(poly.edges[0].inclination, rat(5, 4));

    let f = p("y^3 - 3*x^5*y - x^7 - x^8");
    let poly = polygon(&f, "x", "y").unwrap();
    assert_eq!(poly.vertices, vec![(0, 3), (7, 0)]);
    assert_eq!(poly.edges[0].inclination, rat(7, 3));
    assert_eq!(edge_polynomial(&f, "x", "y", &poly.edges[0]).unwrap(), up(&[-1, 0, 0, 1]));

    let d = p("v^2 + 2*u^7*v + 2*u^8*v + u^14 - 2*u^15 + u^16");
    let poly = polygon(&d, "u", "v").unwrap();
    assert_eq!(poly.vertices, vec![(0, 2), (14, 0)]);
    assert_eq!(edge_polynomial(&d, "u", "v", &poly.edges[0]).unwrap(), up(&[1, 2, 1]));
}

#[test]
fn cusp_edge() {
    let f = p("y^2 - x^5");
    let poly = polygon(&f, "x", "y").unwrap();
    assert_eq!(edge_polynomial(&f, "x", "y", &poly.edges[0]).unwrap(), up(&[-1, 0, 1]));
}

#[test]
fn zero_polynomial_rejected() {
    assert!(polygon(&p("0"), "x", "y").is_err());
}

#[test]
fn degeneracy_verdicts() {
    assert!(is_nondegenerate(&p("v + u^5"), "u", "v").unwrap().is_ok());
    let d = p("v^2 + 2*u^7*v + 2*u^8*v + u^14 - 2*u^15 + u^16");
    let w = is_nondegenerate(&d, "u", "v").unwrap().unwrap_err();
    assert_eq!(w.multiplicity, 2);
    let w = is_nondegenerate(&p("(v + u^5)^3"), "u", "v").unwrap().unwrap_err();
    assert_eq!(w.multiplicity, 3);
    assert_eq!(w.factor, up(&[1, 1]));
    assert!((w.roots[0].re + 1.0).abs() < 1e-12);
}

#[test]
fn two_edge_polygon() {
    let poly = NewtonPolygon::from_points(&[(0, 3), (6, 2), (19, 0), (7, 2), (13, 1), (20, 0)]);
    assert_eq!(poly.vertices, vec![(0, 3), (6, 2), (19, 0)]);
    assert_eq!(poly.height(), 3);
}

fn poly_from(terms: &[(u32, u32, i64)]) -> RatPoly {
    let mut s = String::from("0");
    for (i, j, c) in terms {
        s.push_str(&format!(" + ({})*x^{}*y^{}", c, i, j));
    }
    p(&s)
}

fn edge_multiset(poly: &NewtonPolygon) -> Vec<(Rat, u32)> {
    let mut v: Vec<(Rat, u32)> = poly.edges.iter().map(|e| (e.inclination.clone(), e.height())).collect();
    v.sort();
    let mut out: Vec<(Rat, u32)> = vec![];
    for (r, h) in v {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += h,
            _ => out.push((r, h)),
        }
    }
    out
}

fn terms() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..7, 0u32..5, prop_oneof![-3i64..=-1, 1i64..=3]), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn hull_matches_brute_force(t in terms()) {
        let f = poly_from(&t);
        prop_assume!(!f.is_zero());
        let poly = polygon(&f, "x", "y").unwrap();
        let pts: Vec<(u32, u32)> = f.support2("x", "y").into_iter().map(|(e, _)| e).collect();
        prop_assert_eq!(poly.vertices.clone(), brute_vertices(&pts));
        for e in &poly.edges {
            let fl = edge_polynomial(&f, "x", "y", e).unwrap();
            prop_assert_eq!(fl.deg0() as u32, e.height());
        }
    }

    #[test]
    fn minkowski_sum_of_products(a in terms(), b in terms()) {
        let (f, g) = (poly_from(&a), poly_from(&b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let pf = polygon(&f, "x", "y").unwrap();
        let pg = polygon(&g, "x", "y").unwrap();
        let pfg = polygon(&(&f * &g), "x", "y").unwrap();
        let mut both = pf.edges.iter().chain(pg.edges.iter()).map(|e| (e.inclination.clone(), e.height())).collect::<Vec<_>>();
        both.sort();
        let merged = edge_multiset(&NewtonPolygon { vertices: vec![], edges: vec![] });
        prop_assert!(merged.is_empty());
        let mut acc: Vec<(Rat, u32)> = vec![];
        for (r, h) in both {
            match acc.last_mut() {
                Some(last) if last.0 == r => last.1 += h,
                _ => acc.push((r, h)),
            }
        }
        prop_assert_eq!(edge_multiset(&pfg), acc);
    }

    #[test]
    fn scaling_preserves_polygon_and_verdict(t in terms(), c in prop_oneof![-7i64..=-1, 1i64..=7]) {
        let f = poly_from(&t);
        prop_assume!(!f.is_zero());
        let g = f.scale(&rat(c, 3));
        prop_assert_eq!(polygon(&f, "x", "y").unwrap(), polygon(&g, "x", "y").unwrap());
        prop_assert_eq!(
            is_nondegenerate(&f, "x", "y").unwrap().is_ok(),
            is_nondegenerate(&g, "x", "y").unwrap().is_ok()
        );
    }
}
