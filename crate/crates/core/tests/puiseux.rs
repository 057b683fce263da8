use branchdisc::algebra::parse::parse_rat_poly;
use branchdisc::algebra::resultant;
use branchdisc::puiseux::{compose, implicitize, puiseux_roots, Parametrization, PuiseuxSeries};
use branchdisc::scalar::{rat, rat_int, BigFloat, Rat, Real};
use branchdisc::RatPoly;
use num_complex::Complex;
use proptest::prelude::*;

const P: u32 = 256;

fn p(s: &str) -> RatPoly {
    parse_rat_poly(s, &["x", "y", "u", "v", "t"]).unwrap()
}

fn param(n: u32, y: &[(u32, i64)]) -> Parametrization<Rat> {
    Parametrization::new(n, y.iter().map(|(e, c)| (*e, rat_int(*c))))
}

type S = PuiseuxSeries<BigFloat>;

/// Exact coefficients of a series as `(exponent, re, im)` with f64 parts.
fn shape(s: &S) -> Vec<(Rat, f64, f64)> {
    s.terms.iter().map(|(e, c)| (e.clone(), c.re.to_f64(), c.im.to_f64())).collect()
}

fn has_root(roots: &[(S, u32)], want: &[(Rat, f64, f64)], mult: u32) -> bool {
    roots.iter().any(|(s, m)| {
        let sh = shape(s);
        *m == mult
            && sh.len() == want.len()
            && sh.iter().zip(want).all(|(a, b)| a.0 == b.0 && (a.1 - b.1).abs() < 1e-20 && (a.2 - b.2).abs() < 1e-20)
    })
}

#[test]
fn roots_of_cusp() {
    let r = puiseux_roots::<Rat, BigFloat>(&p("y^2 - x^3"), "x", "y", &rat_int(4), P).unwrap();
    assert_eq!(r.len(), 2);
    assert!(has_root(&r, &[(rat(3, 2), 1.0, 0.0)], 1));
    assert!(has_root(&r, &[(rat(3, 2), -1.0, 0.0)], 1));
}

#[test]
fn roots_of_polar_of_multiplicity_three_form() {
    let r = puiseux_roots::<Rat, BigFloat>(&p("3*y^2 - 3*x^5"), "x", "y", &rat_int(6), P).unwrap();
    assert!(has_root(&r, &[(rat(5, 2), 1.0, 0.0)], 1));
    assert!(has_root(&r, &[(rat(5, 2), -1.0, 0.0)], 1));
}

#[test]
fn roots_of_polar_of_case_a() {
    let r = puiseux_roots::<Rat, BigFloat>(&p("4*y^3 - 8*x^3*y"), "x", "y", &rat_int(5), P).unwrap();
    assert_eq!(r.iter().map(|x| x.1).sum::<u32>(), 3);
    let s2 = 2f64.sqrt();
    assert!(has_root(&r, &[], 1));
    assert!(has_root(&r, &[(rat(3, 2), s2, 0.0)], 1));
    assert!(has_root(&r, &[(rat(3, 2), -s2, 0.0)], 1));
}

#[test]
fn repeated_roots_carry_multiplicity() {
    let r = puiseux_roots::<Rat, BigFloat>(&p("(v + u^5)^3 * (v - u^2)"), "u", "v", &rat_int(9), P).unwrap();
    assert!(has_root(&r, &[(rat_int(5), -1.0, 0.0)], 3));
    assert!(has_root(&r, &[(rat_int(2), 1.0, 0.0)], 1));
}

#[test]
fn roots_off_the_origin_are_included() {
    let r = puiseux_roots::<Rat, BigFloat>(&p("(y - 1 - x)*(y^2 - x^3)"), "x", "y", &rat_int(3), P).unwrap();
    assert_eq!(r.len(), 3);
    assert!(has_root(&r, &[(rat_int(0), 1.0, 0.0), (rat_int(1), 1.0, 0.0)], 1));
}

#[test]
fn roots_at_infinity_are_dropped() {
    let r = puiseux_roots::<Rat, BigFloat>(&p("x*y^2 + y - x^2"), "x", "y", &rat_int(4), P).unwrap();
    assert_eq!(r.iter().map(|x| x.1).sum::<u32>(), 1);
}

#[test]
fn bound_below_smallest_order_is_rejected() {
    let e = puiseux_roots::<Rat, BigFloat>(&p("y^2 - x^3"), "x", "y", &rat_int(1), P).unwrap_err();
    assert_eq!(e.kind(), "invalid-input");
}

#[test]
fn implicitize_examples() {
    assert_eq!(implicitize(&param(2, &[(5, 1)])).unwrap(), p("y^2 - x^5"));
    assert_eq!(implicitize(&param(3, &[(7, 1), (8, 1)])).unwrap(), p("y^3 - 3*x^5*y - x^7 - x^8"));
    assert!(implicitize(&param(4, &[(6, 1)])).is_err());
}

#[test]
fn implicitize_matches_resultant() {
    for (n, y) in [(4u32, vec![(5u32, 1i64), (7, 1)]), (4, vec![(6, 1), (7, 1)]), (3, vec![(4, 2), (5, -1)]), (5, vec![(6, 1), (8, 3)])] {
        let pr = param(n, &y);
        let f = implicitize(&pr).unwrap();
        let mut ys = String::from("y");
        for (e, c) in &y {
            ys.push_str(&format!(" - ({})*t^{}", c, e));
        }
        let r = resultant(&p(&format!("x - t^{}", n)), &p(&ys), "t").unwrap();
        let lc = r.coeff(&[0, n]);
        let r = r.scale(&(rat_int(1) / lc));
        assert_eq!(f, r, "n={} y={:?}", n, y);
    }
}

#[test]
fn implicitize_quartic_structure() {
    // (t^4, t^5 + t^7): y^4 + P y^2 + Q y + R with P = -4x^3 + ..., no y^3 term
    let f = implicitize(&param(4, &[(5, 1), (7, 1)])).unwrap();
    assert_eq!(f.degree_in("y"), 4);
    assert_eq!(f.coeff(&[0, 3]), rat_int(0));
    assert_eq!(f.coeff(&[3, 2]), rat_int(-4));
    assert_eq!(f.coeff(&[5, 0]), rat_int(-1));
}

fn series(terms: &[(Rat, f64)], trunc: i64) -> S {
    PuiseuxSeries::new(
        terms.iter().map(|(e, c)| (e.clone(), Complex::new(BigFloat::from_f64(*c, P), BigFloat::from_int(0, P)))).collect(),
        rat_int(trunc),
    )
}

#[test]
fn compose_examples() {
    let f = p("y^3 - 3*x^5*y - x^7 - x^8");
    let g = series(&[(rat(5, 2), 1.0)], 20);
    let d = compose(&f, "x", "y", &g, &rat_int(10), P).unwrap();
    let sh = shape(&d);
    assert_eq!(sh.iter().map(|t| t.0.clone()).collect::<Vec<_>>(), vec![rat_int(7), rat(15, 2), rat_int(8)]);
    assert!((sh[0].1 + 1.0).abs() < 1e-30 && (sh[1].1 + 2.0).abs() < 1e-30 && (sh[2].1 + 1.0).abs() < 1e-30);

    let d = compose(&p("y^2 - x^5"), "x", "y", &series(&[], 10), &rat_int(8), P).unwrap();
    assert_eq!(shape(&d), vec![(rat_int(5), -1.0, 0.0)]);
}

#[test]
fn compose_case_a() {
    // s1 = 5, j = 2, all a = 0: f5 = implicit equation of (t^4, t^5 + t^7)
    let f = implicitize(&param(4, &[(5, 1), (7, 1)])).unwrap();
    let g = series(&[(rat(3, 2), 2f64.sqrt())], 12);
    let d = compose(&f, "x", "y", &g, &rat_int(9), P).unwrap();
    let sh = shape(&d);
    assert_eq!(sh.len(), 3);
    assert_eq!((sh[0].0.clone(), sh[1].0.clone(), sh[2].0.clone()), (rat_int(5), rat_int(6), rat_int(7)));
    assert!((sh[0].1 + 1.0).abs() < 1e-12 && (sh[1].1 + 2.0).abs() < 1e-12 && (sh[2].1 + 1.0).abs() < 1e-12);
}

#[test]
fn compose_needs_enough_truncation() {
    let e = compose(&p("y^2 - x^5"), "x", "y", &series(&[(rat(5, 2), 1.0)], 3), &rat_int(8), P).unwrap_err();
    assert_eq!(e.kind(), "insufficient-truncation");
}

fn small_param() -> impl Strategy<Value = Parametrization<Rat>> {
    (2u32..5, prop::collection::vec((1u32..12, -3i64..=3), 1..4)).prop_filter_map("primitive", |(n, ts)| {
        let terms: Vec<(u32, i64)> = ts.into_iter().map(|(e, c)| (e + n, c)).filter(|t| t.1 != 0).collect();
        let pr = param(n, &terms);
        (pr.is_primitive() && !pr.y.is_empty()).then_some(pr)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn round_trip_and_conjugacy(pr in small_param()) {
        let f = implicitize(&pr).unwrap();
        let bound = rat_int(18);
        let roots = puiseux_roots::<Rat, BigFloat>(&f, "x", "y", &bound, P).unwrap();
        prop_assert_eq!(roots.iter().map(|r| r.1).sum::<u32>(), pr.n);
        let exact: S = pr.series(bound.clone(), P);
        for k in 0..pr.n as u64 {
            let c = exact.conjugate(k, P);
            prop_assert!(roots.iter().any(|(s, _)| s.agrees(&c, P).unwrap()));
        }
        for (s, _) in &roots {
            let back = compose(&f, "x", "y", s, &bound, P).unwrap();
            prop_assert!(back.is_zero(), "residual {}", back.display("x"));
        }
    }
}
