use std::sync::OnceLock;

use loopbracket::formal::rational;
use loopbracket::goldman::{homological_defect, verify_goldman};
use loopbracket::{
    backend, intersection_pairing, torus_bracket, torus_bracket_oracle, BracketBackend, BracketConfig, FormalSum,
    Letter, LoopClass, Presentation, SurfaceBracket, Word,
};
use proptest::prelude::*;

fn genus_two() -> &'static SurfaceBracket {
    static ENGINE: OnceLock<SurfaceBracket> = OnceLock::new();
    ENGINE.get_or_init(|| SurfaceBracket::new(2, BracketConfig::default()).unwrap())
}

fn class(text: &str) -> LoopClass {
    LoopClass::parse(text, genus_two().presentation()).unwrap()
}

fn bracket(x: &str, y: &str) -> FormalSum {
    genus_two().bracket_classes(&class(x), &class(y)).unwrap()
}

#[test]
fn torus_examples() {
    let t = |p, q| LoopClass::Torus { p, q };
    assert_eq!(torus_bracket((1, 0), (0, 1)), FormalSum::single(t(1, 1), rational(1)));
    assert_eq!(torus_bracket((0, 1), (1, 0)), FormalSum::single(t(1, 1), rational(-1)));
    assert_eq!(torus_bracket((2, 1), (1, 3)), FormalSum::single(t(3, 4), rational(5)));
    assert!(torus_bracket((2, 4), (1, 2)).is_zero());
    assert!(torus_bracket((0, 0), (3, 1)).is_zero());
}

#[test]
fn handle_generators() {
    assert_eq!(bracket("a1", "b1"), FormalSum::single(class("a1 b1"), rational(1)));
    assert_eq!(bracket("b1", "a1"), FormalSum::single(class("a1 b1"), rational(-1)));
    assert!(bracket("a1", "a2").is_zero());
    assert!(bracket("a1", "a1").is_zero());
    assert!(bracket("a1", "").is_zero());
}

#[test]
fn powers_count_every_strand() {
    assert_eq!(bracket("a1 a1", "b1"), FormalSum::single(class("a1 a1 b1"), rational(2)));
    assert_eq!(bracket("a1", "b1 b1 b1"), FormalSum::single(class("a1 b1 b1 b1"), rational(3)));
}

#[test]
fn bracket_is_stable_in_depth() {
    let shallow = SurfaceBracket::new(2, BracketConfig::default()).unwrap();
    let deep = SurfaceBracket::new(
        2,
        BracketConfig {
            max_conjugator_length: 10,
            ..BracketConfig::default()
        },
    )
    .unwrap();
    for (x, y) in [("a1", "b1"), ("a1 b2", "b1 a2"), ("a1 b1", "A2 b1")] {
        let (x, y) = (class(x), class(y));
        assert_eq!(shallow.bracket_classes(&x, &y).unwrap(), deep.bracket_classes(&x, &y).unwrap());
    }
}

#[test]
fn trace_reports_crossings() {
    let t = genus_two().trace(&class("a1"), &class("b1")).unwrap();
    assert_eq!(t.crossings.len(), 1);
    assert_eq!(t.crossings[0].sign, 1);
    assert_eq!(t.y_multiplicity, 1);
    let t = genus_two().trace(&class("a1 a1"), &class("b1")).unwrap();
    assert_eq!(t.crossings.len(), 2);
}

#[test]
fn genus_two_suite_passes() {
    let report = verify_goldman(genus_two(), 1, 30, 7).unwrap();
    for c in &report.checks {
        assert!(c.passed(), "{}: {:?}", c.name, c.counterexample);
    }
}

#[test]
fn torus_suite_passes() {
    let torus = backend(1, BracketConfig::default()).unwrap();
    let report = verify_goldman(torus.as_ref(), 2, 50, 11).unwrap();
    assert!(report.passed());
    assert_eq!(report.check("torus_oracle").unwrap().checks, 11usize.pow(4));
}

#[test]
fn genus_three_generators() {
    let g3 = backend(3, BracketConfig::default()).unwrap();
    let p = Presentation::new(3).unwrap();
    let c = |s: &str| LoopClass::parse(s, &p).unwrap();
    assert_eq!(
        g3.bracket_classes(&c("a3"), &c("b3")).unwrap(),
        FormalSum::single(c("a3 b3"), rational(1))
    );
    assert!(g3.bracket_classes(&c("a1"), &c("b3")).unwrap().is_zero());
}

#[test]
fn rejects_bad_configuration() {
    let bad = BracketConfig {
        tolerance: 0.0,
        ..BracketConfig::default()
    };
    assert!(SurfaceBracket::new(2, bad).is_err());
    assert!(backend(0, BracketConfig::default()).is_err());
}

fn short_class() -> impl Strategy<Value = LoopClass> {
    prop::collection::vec(0usize..8, 1..=3).prop_map(|v| {
        let p = genus_two().presentation();
        let w = Word::from_letters(2, v.into_iter().map(Letter::from_index).collect());
        p.conjugacy_canonical(&w).unwrap()
    })
}

proptest! {
    #[test]
    fn torus_closed_form_matches_line_count(p in -9i64..=9, q in -9i64..=9, r in -9i64..=9, s in -9i64..=9) {
        prop_assert_eq!(torus_bracket((p, q), (r, s)), torus_bracket_oracle((p, q), (r, s)));
    }

    #[test]
    fn torus_total_is_intersection_number(p in -9i64..=9, q in -9i64..=9, r in -9i64..=9, s in -9i64..=9) {
        let total = torus_bracket((p, q), (r, s)).total();
        let expected = if (p, q) == (0, 0) || (r, s) == (0, 0) { 0 } else { p * s - q * r };
        prop_assert_eq!(total, rational(expected));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn genus_two_antisymmetry(x in short_class(), y in short_class()) {
        let xy = genus_two().bracket_classes(&x, &y).unwrap();
        let yx = genus_two().bracket_classes(&y, &x).unwrap();
        prop_assert_eq!(xy.clone(), yx.neg());
        let p = genus_two().presentation();
        prop_assert_eq!(homological_defect(p, &x, &y, &xy).unwrap(), rational(0));
        let ix = intersection_pairing(&p.abelianize_class(&x).unwrap(), &p.abelianize_class(&y).unwrap()).unwrap();
        prop_assert_eq!(xy.total(), ix);
    }
}
