use branchdisc::algebra::parse::parse_rat_poly;
use branchdisc::invariants::{
    characteristic_exponents, intersection_number, milnor, semigroup_from_char, semigroup_oracle, tjurina,
    zariski_invariant, BranchInvariants, CharExponents, IntersectionMethod, Semigroup,
};
use branchdisc::puiseux::{implicitize, Parametrization};
use branchdisc::scalar::{rat_int, Rat};
use branchdisc::{Error, RatPoly};
use proptest::prelude::*;

fn p(s: &str) -> RatPoly {
    parse_rat_poly(s, &["x", "y"]).unwrap()
}

fn param(n: u32, y: &[(u32, i64)]) -> Parametrization<Rat> {
    Parametrization::new(n, y.iter().map(|(e, c)| (*e, rat_int(*c))))
}

fn both(f: &str, g: &str) -> (u64, u64) {
    let (f, g) = (p(f), p(g));
    (
        intersection_number(&f, &g, IntersectionMethod::Resultant).unwrap(),
        intersection_number(&f, &g, IntersectionMethod::HalphenZeuthen).unwrap(),
    )
}

/// Gaps by brute-force closure of the generators up to a large bound.
fn brute_gaps(gens: &[u64], up: u64) -> Vec<u64> {
    let mut m = vec![false; up as usize + 1];
    m[0] = true;
    for v in 1..=up as usize {
        m[v] = gens.iter().any(|&g| g as usize <= v && m[v - g as usize]);
    }
    (0..=up).filter(|&v| !m[v as usize]).collect()
}

#[test]
fn characteristic_exponent_examples() {
    assert_eq!(characteristic_exponents(&param(2, &[(5, 1)])).unwrap().beta, vec![2, 5]);
    assert_eq!(characteristic_exponents(&param(4, &[(6, 1), (7, 1)])).unwrap().beta, vec![4, 6, 7]);
    assert_eq!(characteristic_exponents(&param(3, &[(7, 1), (8, 1)])).unwrap().beta, vec![3, 7]);
    assert_eq!(characteristic_exponents(&param(1, &[(3, 1)])).unwrap(), CharExponents::smooth());
    // tangent to the vertical axis: (t^3, t^2) is the cusp (2, 3)
    assert_eq!(characteristic_exponents(&param(3, &[(2, 1)])).unwrap().beta, vec![2, 3]);
}

#[test]
fn semigroup_examples() {
    let s = semigroup_from_char(&CharExponents::new(vec![2, 5]).unwrap());
    assert_eq!((s.generators.clone(), s.conductor), (vec![2, 5], 4));
    let s = semigroup_from_char(&CharExponents::new(vec![4, 6, 7]).unwrap());
    assert_eq!((s.generators.clone(), s.conductor), (vec![4, 6, 13], 16));
    assert_eq!(s.gaps(), vec![1, 2, 3, 5, 7, 9, 11, 15]);
    assert_eq!(s.e, vec![4, 2, 1]);
    let s = semigroup_from_char(&CharExponents::new(vec![3, 7]).unwrap());
    assert_eq!((s.generators.clone(), s.conductor), (vec![3, 7], 12));
}

#[test]
fn semigroup_oracle_examples() {
    let s = semigroup_oracle(&param(4, &[(6, 1), (7, 1)]), 32).unwrap();
    assert_eq!(s.generators, vec![4, 6, 13]);
    assert_eq!(semigroup_oracle(&param(2, &[(5, 1)]), 8).unwrap().generators, vec![2, 5]);
    assert_eq!(semigroup_oracle(&param(3, &[(7, 1), (8, 1)]), 24).unwrap().generators, vec![3, 7]);
    assert!(matches!(semigroup_oracle(&param(4, &[(6, 1), (7, 1)]), 8), Err(Error::IncompleteSemigroup(_))));
}

#[test]
fn gap_count_formula_for_multiplicity_above_two() {
    for gens in [vec![3, 7], vec![3, 8], vec![4, 6, 13], vec![4, 9], vec![5, 6], vec![4, 10, 21]] {
        let s = Semigroup::from_generators(gens.clone()).unwrap();
        let (s0, s1, c) = (s.generators[0] as i64, s.generators[1] as i64, s.conductor as i64);
        assert_eq!(s.q as i64, c / 2 - s1 + s1 / s0 + 1, "{:?}", gens);
        let gaps = brute_gaps(&gens, 4 * c as u64 + 10);
        assert_eq!(*gaps.last().unwrap() as i64 + 1, c);
        assert_eq!(s.q as usize, gaps.iter().filter(|&&g| g as i64 > s1).count());
        assert!(s.is_plane_branch());
    }
}

#[test]
fn zariski_invariant_examples() {
    assert_eq!(zariski_invariant(&param(3, &[(7, 1), (8, 1)])).unwrap(), 8);
    assert_eq!(zariski_invariant(&param(2, &[(5, 1)])).unwrap(), 0);
    assert_eq!(zariski_invariant(&param(4, &[(5, 1), (7, 1)])).unwrap(), 7);
    assert_eq!(zariski_invariant(&param(3, &[(7, 1)])).unwrap(), 0);
}

#[test]
fn intersection_examples() {
    assert_eq!(both("y^2 - x^3", "y"), (3, 3));
    assert_eq!(both("y^2 - x^3", "y^3 - x^2"), (4, 4));
    assert_eq!(both("y^3 - 3*x^5*y - x^7 - x^8", "x"), (3, 3));
    assert_eq!(both("y - 1", "y^2 - x^3"), (0, 0));
    // the root of the second curve is y ~ -3 x^8; the first has a root escaping to infinity
    assert_eq!(both("y^2 - x^7 - x^7*y^3", "y - x^8*y + 3*x^8 + x^9"), (7, 7));
    let e = intersection_number(&p("y^2 - x^3"), &p("(y^2 - x^3)*(y + x)"), IntersectionMethod::Resultant);
    assert!(matches!(e, Err(Error::InfiniteIntersection(_))));
}

#[test]
fn milnor_examples() {
    assert_eq!(milnor(&p("y^2 - x^3")).unwrap(), 2);
    assert_eq!(milnor(&p("y^3 - 3*x^5*y - x^7 - x^8")).unwrap(), 12);
    let f = implicitize(&param(4, &[(6, 1), (7, 1)])).unwrap();
    assert_eq!(milnor(&f).unwrap(), 16);
}

#[test]
fn tjurina_examples() {
    assert_eq!(tjurina(&p("y^2 - x^3"), 2).unwrap(), 2);
    let f = p("y^3 - x^4 + x^2*y");
    let mu = milnor(&f).unwrap();
    // three distinct tangents: a D4 germ, quasi-homogeneous after a coordinate change
    assert_eq!((mu, tjurina(&f, mu).unwrap()), (4, 4));
    let f = p("y^5 - x^6 + x^3*y^3");
    let mu = milnor(&f).unwrap();
    assert_eq!(mu, 20);
    assert_eq!(mu - tjurina(&f, mu).unwrap(), 2);
    // quasi-homogeneous germs have tau = mu
    for s in ["y^3 - x^7", "y^4 - x^9", "y^5 - x^6", "y^2 - x^11"] {
        let f = p(s);
        let mu = milnor(&f).unwrap();
        assert_eq!(tjurina(&f, mu).unwrap(), mu, "{}", s);
    }
}

#[test]
fn branch_invariants_of_parametrization() {
    let inv = BranchInvariants::of_parametrization(&param(3, &[(7, 1), (8, 1)])).unwrap();
    assert_eq!(inv.char.beta, vec![3, 7]);
    assert_eq!(inv.milnor, inv.semigroup.conductor);
    assert_eq!(inv.zariski_lambda, Some(8));
    assert_eq!(inv.r, Some(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn recursion_matches_oracle_and_milnor(n in 2u32..5, k in 1u32..12, extra in proptest::collection::vec((1u32..14, -3i64..4), 0..3)) {
        let first = n + k;
        prop_assume!(first % n != 0);
        let mut terms = vec![(first, 1)];
        terms.extend(extra.into_iter().map(|(d, c)| (first + d, c)));
        let pa = param(n, &terms);
        prop_assume!(pa.is_primitive() && pa.y.keys().next() == Some(&first));
        let ch = characteristic_exponents(&pa).unwrap();
        let sg = semigroup_from_char(&ch);
        prop_assert!(sg.is_plane_branch());
        let oracle = semigroup_oracle(&pa, 2 * sg.conductor + 2 * n as u64).unwrap();
        prop_assert_eq!(&oracle, &sg);
        let f = implicitize(&pa).unwrap();
        prop_assert_eq!(milnor(&f).unwrap(), sg.conductor);
    }

    #[test]
    fn halphen_zeuthen_matches_resultant(
        a in 2u32..5, b in 3u32..9, c in -3i64..4,
        d in 1u32..4, e in 2u32..9, g in -3i64..4,
    ) {
        let f = p(&format!("y^{} - x^{} + ({})*x^{}*y", a, b, c, b));
        let h = p(&format!("y^{} + ({})*x^{} - x^{}", d, g, e, e + 1));
        let r = intersection_number(&f, &h, IntersectionMethod::Resultant);
        let z = intersection_number(&f, &h, IntersectionMethod::HalphenZeuthen);
        match (r, z) {
            (Ok(r), Ok(z)) => prop_assert_eq!(r, z),
            (Err(Error::InfiniteIntersection(_)), _) => {}
            (r, z) => prop_assert!(false, "{:?} {:?}", r, z),
        }
    }
}
