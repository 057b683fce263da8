use branchdisc::algebra::parse::{parse_constant, parse_poly, Q6};
use branchdisc::classifier::{BranchDescriptor, Family};
use branchdisc::invariants::{characteristic_exponents, milnor, semigroup_from_char, tjurina, zariski_invariant};
use branchdisc::normal_forms::{build, family_r, mult3_equation, small_rational, NormalForm};
use branchdisc::puiseux::{implicitize, Parametrization};
use branchdisc::scalar::{rat, rat_int, Rat};
use branchdisc::Error;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q6(s: &str) -> Q6 {
    parse_constant(s).unwrap().0
}

fn eq(s: &str) -> branchdisc::algebra::Poly<Q6> {
    parse_poly(s, &["x", "y"]).unwrap().poly
}

#[test]
fn spec_parametrizations() {
    let b = build(&BranchDescriptor::new(Family::Mult3, 7).with_lambda(8), 0).unwrap();
    assert_eq!(b.form.to_string(), "x = t^3; y = t^7 + t^8");
    let b = build(&BranchDescriptor::new(Family::NF4_5, 5).with_j(2), 0).unwrap();
    assert_eq!(b.form.to_string(), "x = t^4; y = t^5 + t^7");
    assert!(b.coeffs.is_empty());
    let b = build(&BranchDescriptor::new(Family::Mult2, 9), 0).unwrap();
    assert_eq!(b.form.to_string(), "x = t^2; y = t^9");
    let b = build(&BranchDescriptor::new(Family::Mult4G2, 6).with_s2(13), 0).unwrap();
    assert_eq!(b.form.to_string(), "x = t^4; y = t^6 + t^7");
}

#[test]
fn equation_families() {
    let b = build(&BranchDescriptor::new(Family::R2A, 6).with_s0(5), 0).unwrap();
    assert_eq!(b.form, NormalForm::Implicit(eq("y^5 - x^6 + x^3*y^3")));
    let b = build(&BranchDescriptor::new(Family::R1, 6).with_s0(5), 0).unwrap();
    assert_eq!(b.form, NormalForm::Implicit(eq("y^5 - x^6 + x^4*y^3")));
    let d = BranchDescriptor::new(Family::R2B, 7).with_s0(5).with_coeff(2, q6("1/2")).with_coeff(3, q6("-3"));
    let b = build(&d, 0).unwrap();
    assert_eq!(b.form, NormalForm::Implicit(eq("y^5 - x^7 + x^5*y^2 + 1/2*x^5*y^3 - 3*x^4*y^3")));
}

#[test]
fn sigma_five_with_coefficients() {
    let d = BranchDescriptor::new(Family::NF4_5, 13).with_j(5).with_coeff(1, q6("4*sqrt(6)/9")).with_coeff(4, q6("-4*sqrt(6)/81"));
    let b = build(&d, 0).unwrap();
    assert_eq!(b.form.to_string(), "x = t^4; y = t^13 + t^19 + (4/9*sqrt(6))*t^22 + (-4/81*sqrt(6))*t^34");
    assert!(b.notes.iter().any(|n| n.code == "sigma5-reading"));
}

#[test]
fn sigma_three_fixed_coefficient() {
    // s1 = 13, j = 2: a_2 = (39 - 8)/26 at exponent 3*13 - 4*(3 + 2 + 1 - 2) = 23, a_3 free at 27
    let d = BranchDescriptor::new(Family::NF4_3, 13).with_j(2).with_coeff(3, q6("5"));
    let b = build(&d, 0).unwrap();
    let p = b.parametrization().unwrap();
    assert_eq!(p.n, 4);
    assert_eq!(p.y.get(&23), Some(&Q6::from(rat(31, 26))));
    assert_eq!(p.y.get(&27), Some(&q6("5")));
    assert_eq!(p.y.keys().copied().collect::<Vec<_>>(), vec![13, 18, 23, 27]);
}

#[test]
fn sigma_four_rejects_the_fixed_value() {
    let d = BranchDescriptor::new(Family::NF4_4, 13).with_j(2).with_coeff(2, Q6::from(rat(31, 26)));
    assert!(matches!(build(&d, 0), Err(Error::InvalidDescriptor(_))));
    let d = BranchDescriptor::new(Family::NF4_4, 13).with_j(2);
    let b = build(&d, 3).unwrap();
    assert_ne!(b.coeffs[&2], Q6::from(rat(31, 26)));
}

#[test]
fn sigma_two_literal_exponent() {
    // 3*13 - (12 + 2 + 1 - 1) = 25
    let d = BranchDescriptor::new(Family::NF4_2, 13).with_j(2).with_k(1).with_coeff(1, q6("2"));
    let b = build(&d, 0).unwrap();
    assert_eq!(b.form.to_string(), "x = t^4; y = t^13 + t^18 + 2*t^25");
    assert!(b.notes.iter().any(|n| n.code == "sigma2-range"));
    let d = BranchDescriptor::new(Family::NF4_2, 13).with_j(2).with_k(1).with_coeff(1, q6("0"));
    assert!(build(&d, 0).is_err());
}

#[test]
fn foreign_coefficient_is_invalid() {
    let d = BranchDescriptor::new(Family::NF4_3, 13).with_j(2).with_coeff(9, Q6::one());
    assert!(matches!(build(&d, 0), Err(Error::InvalidDescriptor(_))));
    let d = BranchDescriptor::new(Family::R2B, 7).with_s0(5).with_coeff(1, Q6::one());
    assert!(matches!(build(&d, 0), Err(Error::InvalidDescriptor(_))));
}

#[test]
fn seeded_draws_are_reproducible() {
    let d = BranchDescriptor::new(Family::R2B, 11).with_s0(4);
    let a = build(&d, 7).unwrap();
    let b = build(&d, 7).unwrap();
    assert_eq!(a.form, b.form);
    assert_eq!(a.coeffs, b.coeffs);
    assert_eq!(a.coeffs.keys().copied().collect::<Vec<_>>(), vec![2, 3, 4]);
    let differs = (0..8).any(|s| build(&d, s).unwrap().coeffs != a.coeffs);
    assert!(differs);
}

#[test]
fn mult3_closed_form_matches_implicitization() {
    for (s1, l) in [(7, 8), (8, 10), (10, 11), (10, 14), (11, 13), (13, 14), (13, 17)] {
        let p = Parametrization::new(3, [(s1 as u32, rat_int(1)), (l as u32, rat_int(1))]);
        let want = mult3_equation(s1, l);
        if (s1 + l) % 3 == 0 {
            assert_eq!(implicitize(&p).unwrap(), want.unwrap(), "({}, {})", s1, l);
        } else {
            assert!(want.is_none());
        }
    }
}

fn param_of(d: &BranchDescriptor) -> Parametrization<Q6> {
    build(d, 0).unwrap().parametrization().unwrap().clone()
}

fn grid() -> Vec<BranchDescriptor> {
    let mut out = vec![];
    for s1 in [3, 5, 7, 9] {
        out.push(BranchDescriptor::new(Family::Mult2, s1));
    }
    for (s1, l) in [(7, 0), (7, 8), (8, 10), (10, 11), (10, 14), (11, 13)] {
        out.push(BranchDescriptor::new(Family::Mult3, s1).with_lambda(l));
    }
    for (s1, s2) in [(6, 13), (6, 15), (10, 21)] {
        out.push(BranchDescriptor::new(Family::Mult4G2, s1).with_s2(s2));
    }
    for s1 in [5, 7] {
        out.push(BranchDescriptor::new(Family::NF4_1, s1));
    }
    for s1 in [9, 11, 13] {
        out.push(BranchDescriptor::new(Family::NF4_3, s1).with_j(2));
        out.push(BranchDescriptor::new(Family::NF4_4, s1).with_j(2));
    }
    out.push(BranchDescriptor::new(Family::NF4_2, 13).with_j(2).with_k(1));
    for (s1, j) in [(5, 2), (9, 2), (9, 3), (9, 4), (13, 5)] {
        out.push(BranchDescriptor::new(Family::NF4_5, s1).with_j(j).with_coeff(1, Q6::one()));
    }
    out
}

#[test]
fn invariants_reproduce_the_descriptor() {
    for d in grid() {
        let p = param_of(&d);
        let c = characteristic_exponents(&p).unwrap();
        let n = match d.family {
            Family::Mult2 => 2,
            Family::Mult3 => 3,
            _ => 4,
        };
        assert_eq!(c.multiplicity(), n, "{}", d);
        let sg = semigroup_from_char(&c);
        assert_eq!(sg.generators[1], d.s1, "{}", d);
        let genus = if d.family == Family::Mult4G2 { 2 } else { 1 };
        assert_eq!(sg.genus(), genus, "{}", d);
        if let Some(s2) = d.s2 {
            assert_eq!(sg.generators, vec![4, d.s1, s2]);
        }
        if d.family != Family::Mult4G2 && d.family != Family::Mult2 {
            assert_eq!(zariski_invariant(&p).unwrap(), d.lambda(), "{}", d);
        }
    }
}

#[test]
fn tjurina_gap_of_equation_families() {
    for (fam, s0, s1) in [(Family::R1, 4, 5), (Family::R1, 5, 6), (Family::R2A, 5, 6), (Family::R2A, 4, 7), (Family::R2B, 5, 7)] {
        let f = build(&BranchDescriptor::new(fam, s1).with_s0(s0), 0).unwrap().equation().unwrap();
        let mu = milnor(&f).unwrap();
        assert_eq!(mu, (s0 - 1) * (s1 - 1));
        assert_eq!(mu - tjurina(&f, mu).unwrap(), family_r(fam).unwrap(), "{}({}, {})", fam, s0, s1);
    }
}

#[test]
fn four_fold_second_family_has_gap_three() {
    // y^4 - x^11 + x^9 y + ...: x^9 y, x^8 y^2 and x^9 y^2 survive in the
    // Milnor algebra modulo f, so mu - tau = 3 whatever the a_k
    for seed in [0, 1] {
        let f = build(&BranchDescriptor::new(Family::R2B, 11).with_s0(4), seed).unwrap().equation().unwrap();
        assert_eq!(milnor(&f).unwrap(), 30);
        assert_eq!(tjurina(&f, 30).unwrap(), 27);
    }
}

proptest! {
    #[test]
    fn small_rationals_in_range(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let r: Rat = small_rational(&mut rng);
            prop_assert!(*r.denom() >= 1.into() && *r.denom() <= 10.into());
            prop_assert!(r != rat_int(0));
            prop_assert!(*r.numer() <= 9.into() && *r.numer() >= (-9).into());
        }
    }
}
