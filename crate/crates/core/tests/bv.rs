use std::sync::Arc;

use loopbracket::bv::bv_delta;
use loopbracket::formal::{rational, ratio};
use loopbracket::{
    backend, resolve_signs, verify_axioms, BVElement, BracketConfig, BracketConvention, BvAlgebra, FormalSum, H1Class,
    LoopClass, Presentation, SignConfig, TorusBracket,
};
use proptest::prelude::*;

fn torus(signs: SignConfig) -> BvAlgebra {
    BvAlgebra::new(Arc::new(TorusBracket::new()), signs)
}

fn genus_two(signs: SignConfig) -> BvAlgebra {
    BvAlgebra::new(Arc::from(backend(2, BracketConfig::default()).unwrap()), signs)
}

fn loops(sum: FormalSum) -> BVElement {
    let g = sum.genus();
    BVElement::degree_one(H1Class::zero(g), sum).unwrap()
}

#[test]
fn default_signs_pass_on_the_torus() {
    let report = verify_axioms(&torus(SignConfig::DEFAULT), 2, 200, 7).unwrap();
    for r in &report.results {
        assert!(r.passed(), "{}: {:?}", r.axiom, r.counterexample);
        assert!(r.checks > 0);
    }
}

#[test]
fn default_signs_pass_in_genus_two() {
    let report = verify_axioms(&genus_two(SignConfig::DEFAULT), 1, 12, 7).unwrap();
    assert!(report.passed(), "{:?}", report.results.iter().find(|r| !r.passed()));
}

#[test]
fn all_plus_breaks_commutativity() {
    let alg = torus(SignConfig::ALL_PLUS);
    let x = BVElement::degree_one(H1Class::unit(1, 0), FormalSum::zero(1)).unwrap();
    let y = loops(FormalSum::basis(LoopClass::Torus { p: 0, q: 1 }));
    // degree one elements anticommute
    assert_ne!(alg.cup(&x, &y).unwrap(), alg.cup(&y, &x).unwrap().neg());
    let fixed = torus(SignConfig::DEFAULT);
    assert_eq!(fixed.cup(&x, &y).unwrap(), fixed.cup(&y, &x).unwrap().neg());
    let report = verify_axioms(&alg, 2, 20, 7).unwrap();
    let r = report.result("graded_commutativity").unwrap();
    assert!(!r.passed());
    assert!(r.counterexample.is_some());
}

#[test]
fn resolution_on_the_torus() {
    let res = resolve_signs(&torus(SignConfig::DEFAULT), 2, 40, 7).unwrap();
    assert_eq!(res.default, SignConfig::DEFAULT);
    assert_eq!(res.reports.len(), 16);
    assert!(!res.passing.is_empty());
    for s in &res.passing {
        assert_eq!(s.s2, -s.s3, "{s}");
    }
    assert!(!res.passing.contains(&SignConfig::ALL_PLUS));
}

#[test]
fn literal_convention_is_not_antisymmetric() {
    let alg = torus(SignConfig::DEFAULT).with_convention(BracketConvention::Literal);
    let report = verify_axioms(&alg, 2, 20, 7).unwrap();
    assert!(!report.result("graded_antisymmetry").unwrap().passed());
}

#[test]
fn delta_examples() {
    let g0 = LoopClass::trivial(1);
    let c = LoopClass::Torus { p: 2, q: -1 };
    let mut h2 = FormalSum::single(g0, ratio(3, 2));
    h2.add_term(c.clone(), rational(-4));
    let x = BVElement::degree_two(h2);
    assert_eq!(bv_delta(&x), loops(FormalSum::single(c, rational(-4))));
    assert!(bv_delta(&bv_delta(&x)).is_zero());
    assert!(bv_delta(&BVElement::unit(1)).is_zero());
}

#[test]
fn genus_mismatch_is_an_error() {
    let alg = torus(SignConfig::DEFAULT);
    assert!(alg.cup(&BVElement::unit(2), &BVElement::unit(1)).is_err());
    assert!(alg.delta(&BVElement::unit(2)).is_err());
}

#[test]
fn graded_parts() {
    let p = Presentation::new(2).unwrap();
    let a1 = LoopClass::parse("a1", &p).unwrap();
    let x = BVElement::unit(2).add(&BVElement::degree_two(FormalSum::basis(a1))).unwrap();
    assert_eq!(x.degree(), None);
    let parts: Vec<usize> = x.components().into_iter().map(|(d, _)| d).collect();
    assert_eq!(parts, [0, 2]);
    assert_eq!(x.component(0), BVElement::unit(2));
}

proptest! {
    // On loop parts the derived bracket is the Goldman bracket with γ₀ dropped.
    #[test]
    fn bracket_of_loops_is_goldman(p in -4i64..=4, q in -4i64..=4, r in -4i64..=4, s in -4i64..=4) {
        let alg = torus(SignConfig::DEFAULT);
        let (x, y) = (LoopClass::Torus { p, q }, LoopClass::Torus { p: r, q: s });
        let goldman = alg.backend().bracket_classes(&x, &y).unwrap().without_trivial();
        let derived = alg.gerstenhaber(&loops(FormalSum::basis(x)), &loops(FormalSum::basis(y))).unwrap();
        prop_assert_eq!(derived, loops(goldman));
    }

    #[test]
    fn cup_is_bilinear(a in -3i64..=3, b in 1i64..=3, p in -3i64..=3, q in -3i64..=3) {
        let alg = torus(SignConfig::DEFAULT);
        let x = loops(FormalSum::basis(LoopClass::Torus { p, q }));
        let y = BVElement::degree_one(H1Class::from_integers(&[1, -1]), FormalSum::zero(1)).unwrap();
        let c = ratio(a, b);
        prop_assert_eq!(alg.cup(&x.scale(&c), &y).unwrap(), alg.cup(&x, &y).unwrap().scale(&c));
    }
}

#[test]
fn genus_two_loop_bracket_matches_goldman() {
    let alg = genus_two(SignConfig::DEFAULT);
    let p = alg.presentation().clone();
    let classes = p.enumerate_classes(2).unwrap();
    for x in classes.iter().step_by(5) {
        for y in classes.iter().step_by(7) {
            let goldman = alg.backend().bracket_classes(x, y).unwrap().without_trivial();
            let derived = alg
                .gerstenhaber(&loops(FormalSum::basis(x.clone())), &loops(FormalSum::basis(y.clone())))
                .unwrap();
            assert_eq!(derived, loops(goldman), "{x} {y}");
        }
    }
}
