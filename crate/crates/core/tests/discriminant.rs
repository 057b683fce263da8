use branchdisc::algebra::parse::parse_rat_poly;
use branchdisc::discriminant::{
    cross_check_roots, decompose, discriminant_exact, discriminant_roots, equisingularity_type, merle_polygon, polar,
    EquisingularityType, TypeBranch,
};
use branchdisc::invariants::{characteristic_exponents, semigroup_from_char, CharExponents, Semigroup};
use branchdisc::newton_polygon::{is_nondegenerate, polygon};
use branchdisc::puiseux::{implicitize, Parametrization};
use branchdisc::scalar::{rat, rat_int, BigFloat, Rat, Real};
use branchdisc::RatPoly;
use proptest::prelude::*;

const P: u32 = 256;

fn p(s: &str) -> RatPoly {
    parse_rat_poly(s, &["x", "y"]).unwrap()
}

fn d(s: &str) -> RatPoly {
    parse_rat_poly(s, &["u", "v"]).unwrap()
}

fn param(n: u32, y: &[(u32, i64)]) -> Parametrization<Rat> {
    Parametrization::new(n, y.iter().map(|(e, c)| (*e, rat_int(*c))))
}

fn smooth(mult: u32) -> TypeBranch {
    TypeBranch { char: CharExponents::smooth(), mult }
}

fn branch(beta: &[u64], mult: u32) -> TypeBranch {
    TypeBranch { char: CharExponents::new(beta.to_vec()).unwrap(), mult }
}

#[test]
fn polar_examples() {
    assert_eq!(polar(&p("y^2 - x^5")), p("2*y"));
    assert_eq!(polar(&p("y^3 - 3*x^5*y - x^7 - x^8")), p("3*y^2 - 3*x^5"));
    let f = implicitize(&param(4, &[(5, 1), (7, 1)])).unwrap();
    assert_eq!(polar(&f), p("4*y^3 - 8*x^3*y"));
}

#[test]
fn exact_discriminant_examples() {
    assert_eq!(discriminant_exact(&p("y^2 - x^5")).unwrap().poly, d("v + u^5"));
    assert_eq!(
        discriminant_exact(&p("y^3 - 3*x^5*y - x^7 - x^8")).unwrap().poly,
        d("v^2 + 2*(u^7 + u^8)*v + (u^7 + u^8)^2 - 4*u^15")
    );
    assert_eq!(discriminant_exact(&p("y^3 - x^4")).unwrap().poly, d("(v + u^4)^2"));
    let f = implicitize(&param(4, &[(5, 1), (7, 1)])).unwrap();
    assert_eq!(
        discriminant_exact(&f).unwrap().poly,
        d("(v + u^5 - 2*u^6 + u^7)*(v + u^5 + 2*u^6 + u^7)^2")
    );
    let lin = discriminant_exact(&p("y - x^2")).unwrap();
    assert_eq!(lin.poly, d("1"));
    assert!(lin.warning.is_some());
}

#[test]
fn exact_discriminant_matches_product_over_polar_roots() {
    // y^3 - x^4 + x^5 y: f_y = 3y^2 + x^5 has roots +-i x^{5/2}/sqrt 3, so
    // D = prod (v - f(u, gamma)) = (v + u^4)^2 + 4 u^15 / 27
    let f = p("y^3 - x^4 + x^5*y");
    assert_eq!(discriminant_exact(&f).unwrap().poly, d("(v + u^4)^2 + 4/27*u^15"));
}

#[test]
fn type_examples() {
    let t = equisingularity_type(&d("(v + u^5)^3"), "u", "v").unwrap();
    assert_eq!(t, EquisingularityType::new(vec![smooth(3)], vec![vec![0]]).unwrap());
    let dd = discriminant_exact(&p("y^3 - 3*x^5*y - x^7 - x^8")).unwrap().poly;
    let t = equisingularity_type(&dd, "u", "v").unwrap();
    assert_eq!(t, EquisingularityType::new(vec![branch(&[2, 15], 1)], vec![vec![0]]).unwrap());
    let f = implicitize(&param(4, &[(5, 1), (7, 1)])).unwrap();
    let dd = discriminant_exact(&f).unwrap().poly;
    let t = equisingularity_type(&dd, "u", "v").unwrap();
    let want = EquisingularityType::new(vec![smooth(1), smooth(2)], vec![vec![0, 6], vec![6, 0]]).unwrap();
    assert_eq!(t, want);
    assert_eq!(t.to_string(), "D1 D2^2; S(D1)=<1>, S(D2)=<1>; i0(D1,D2)=6");
}

#[test]
fn type_of_curves_by_equation() {
    // node, cusp, tacnode, and a branch tangent to the vertical axis
    let t = equisingularity_type(&p("y^2 - x^2"), "x", "y").unwrap();
    assert_eq!(t, EquisingularityType::new(vec![smooth(1), smooth(1)], vec![vec![0, 1], vec![1, 0]]).unwrap());
    let t = equisingularity_type(&p("y^2 - x^3"), "x", "y").unwrap();
    assert_eq!(t.branches, vec![branch(&[2, 3], 1)]);
    let t = equisingularity_type(&p("(y - x^2)*(y + x^2)"), "x", "y").unwrap();
    assert_eq!(t.intersections, vec![vec![0, 2], vec![2, 0]]);
    let t = equisingularity_type(&p("y^3 - x^2"), "x", "y").unwrap();
    assert_eq!(t.branches, vec![branch(&[2, 3], 1)]);
    let t = equisingularity_type(&p("(y^2 - x^3)*(y^2 - 2*x^3)"), "x", "y").unwrap();
    assert_eq!(t.branches, vec![branch(&[2, 3], 1), branch(&[2, 3], 1)]);
    assert_eq!(t.intersections, vec![vec![0, 6], vec![6, 0]]);
}

#[test]
fn canonical_form_ignores_branch_order() {
    let a = EquisingularityType::new(
        vec![smooth(1), branch(&[2, 15], 1), smooth(2)],
        vec![vec![0, 7, 3], vec![7, 0, 9], vec![3, 9, 0]],
    )
    .unwrap();
    let b = EquisingularityType::new(
        vec![smooth(2), smooth(1), branch(&[2, 15], 1)],
        vec![vec![0, 3, 9], vec![3, 0, 7], vec![9, 7, 0]],
    )
    .unwrap();
    assert_eq!(a, b);
    assert!(EquisingularityType::new(vec![smooth(1)], vec![vec![1]]).is_err());
}

#[test]
fn merle_examples() {
    let m = merle_polygon(&Semigroup::from_generators(vec![4, 6, 13]).unwrap());
    assert_eq!(m.vertices, vec![(0, 3), (6, 2), (19, 0)]);
    let m = merle_polygon(&Semigroup::from_generators(vec![2, 7]).unwrap());
    assert_eq!(m.vertices, vec![(0, 1), (7, 0)]);
    let m = merle_polygon(&Semigroup::from_generators(vec![3, 7]).unwrap());
    assert_eq!(m.vertices, vec![(0, 2), (14, 0)]);
    let dd = discriminant_exact(&implicitize(&param(3, &[(7, 1), (8, 1)])).unwrap()).unwrap().poly;
    assert_eq!(polygon(&dd, "u", "v").unwrap(), m);
    // the computed polygon of a <4,6,13> branch confirms the second vertex
    let dd = discriminant_exact(&implicitize(&param(4, &[(6, 1), (7, 1)])).unwrap()).unwrap().poly;
    assert_eq!(polygon(&dd, "u", "v").unwrap().vertices, vec![(0, 3), (6, 2), (19, 0)]);
    assert!(merle_polygon(&Semigroup::smooth()).is_empty());
}

fn shape(s: &branchdisc::puiseux::PuiseuxSeries<BigFloat>) -> Vec<(Rat, f64)> {
    s.terms.iter().map(|(e, c)| (e.clone(), c.re.to_f64())).collect()
}

#[test]
fn composed_roots_examples() {
    let f = p("y^3 - 3*x^5*y - x^7 - x^8");
    let r = discriminant_roots(&f, &rat_int(9), P).unwrap();
    let mut shapes: Vec<Vec<(Rat, f64)>> = r.iter().map(|(s, _)| shape(s)).collect();
    shapes.sort_by(|a, b| a[1].1.partial_cmp(&b[1].1).unwrap());
    assert_eq!(shapes, vec![
        vec![(rat_int(7), -1.0), (rat(15, 2), -2.0), (rat_int(8), -1.0)],
        vec![(rat_int(7), -1.0), (rat(15, 2), 2.0), (rat_int(8), -1.0)],
    ]);
    let r = discriminant_roots(&p("y^2 - x^5"), &rat_int(7), P).unwrap();
    assert_eq!(r.iter().map(|(s, m)| (shape(s), *m)).collect::<Vec<_>>(), vec![(vec![(rat_int(5), -1.0)], 1)]);
    let f = implicitize(&param(4, &[(5, 1), (7, 1)])).unwrap();
    let r = discriminant_roots(&f, &rat_int(8), P).unwrap();
    let mut got: Vec<Vec<(Rat, f64)>> = r.iter().map(|(s, _)| shape(s)).collect();
    got.sort_by(|a, b| a[1].1.partial_cmp(&b[1].1).unwrap());
    let minus = vec![(rat_int(5), -1.0), (rat_int(6), -2.0), (rat_int(7), -1.0)];
    let plus = vec![(rat_int(5), -1.0), (rat_int(6), 2.0), (rat_int(7), -1.0)];
    assert_eq!(got.len(), 3);
    assert!(got.iter().all(|g| g.len() == 3 && g.iter().zip(minus.iter()).all(|(a, b)| a.0 == b.0 && (a.1.abs() - b.1.abs()).abs() < 1e-30)));
    assert_eq!(got.iter().filter(|g| **g == plus).count(), 1);
    assert_eq!(got.iter().filter(|g| **g == minus).count(), 2);
    assert!(cross_check_roots(&f, &discriminant_exact(&f).unwrap().poly, P).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn discriminant_laws(n in 2u32..5, k in 1u32..8, extra in proptest::collection::vec((1u32..8, -2i64..3), 0..3)) {
        let first = n + k;
        prop_assume!(first % n != 0);
        let mut terms = vec![(first, 1)];
        terms.extend(extra.into_iter().map(|(e, c)| (first + e, c)));
        let pa = param(n, &terms);
        prop_assume!(pa.is_primitive() && pa.y.keys().next() == Some(&first));
        let f = implicitize(&pa).unwrap();
        let dd = discriminant_exact(&f).unwrap().poly;
        prop_assert_eq!(dd.degree_in("v"), n - 1);
        let sg = semigroup_from_char(&characteristic_exponents(&pa).unwrap());
        prop_assert_eq!(polygon(&dd, "u", "v").unwrap(), merle_polygon(&sg));
        let dec = decompose(&dd, "u", "v", P).unwrap();
        let total: u64 = dec.orbits.iter().map(|o| o.mult as u64 * o.ramification).sum();
        prop_assert_eq!(total, (n - 1) as u64);
        let t = dec.equisingularity_type();
        for i in 0..t.len() {
            for j in 0..t.len() {
                if i != j {
                    let lo = t.branches[i].char.multiplicity() * t.branches[j].char.multiplicity();
                    prop_assert!(t.intersections[i][j] >= lo);
                }
            }
        }
        let nd = is_nondegenerate(&dd, "u", "v").unwrap().is_ok();
        prop_assert_eq!(nd, n == 2 || (n == 4 && sg.genus() == 2));
        prop_assert!(cross_check_roots(&f, &dd, P).unwrap());
    }
}
