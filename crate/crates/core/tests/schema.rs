use loopbracket::formal::ratio;
use loopbracket::schema::{
    axiom_report_to_json, bv_element_from_json, bv_element_to_json, formal_sum_from_json, formal_sum_to_json,
};
use loopbracket::{verify_axioms, BVElement, BvAlgebra, FormalSum, H1Class, Letter, LoopClass, Presentation, SignConfig, TorusBracket, Word};
use proptest::prelude::*;
use serde_json::json;

fn sum(genus: usize) -> impl Strategy<Value = FormalSum> {
    prop::collection::vec((prop::collection::vec(0..4 * genus, 0..=5), -5i64..=5, 1i64..=4), 0..=4).prop_map(
        move |terms| {
            let p = Presentation::new(genus).unwrap();
            let mut s = FormalSum::zero(genus);
            for (letters, n, d) in terms {
                let w = Word::from_letters(genus, letters.into_iter().map(Letter::from_index).collect());
                s.add_term(p.conjugacy_canonical(&w).unwrap(), ratio(n, d));
            }
            s
        },
    )
}

proptest! {
    #[test]
    fn formal_sums_round_trip(s in sum(2)) {
        prop_assert_eq!(formal_sum_from_json(&formal_sum_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn torus_sums_round_trip(s in sum(1)) {
        let v = formal_sum_to_json(&s);
        let text = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(formal_sum_from_json(&serde_json::from_str(&text).unwrap()).unwrap(), s);
    }

    #[test]
    fn elements_round_trip(h0 in -4i64..=4, a in prop::collection::vec(-3i64..=3, 4), l in sum(2), h2 in sum(2)) {
        let x = BVElement::new(ratio(h0, 3), H1Class::from_integers(&a), l.without_trivial(), h2).unwrap();
        prop_assert_eq!(bv_element_from_json(&bv_element_to_json(&x)).unwrap(), x);
    }
}

#[test]
fn input_errors() {
    assert!(formal_sum_from_json(&json!({"genus": 2, "terms": [{"coeff": "1/0", "class": "a1"}]})).is_err());
    assert!(formal_sum_from_json(&json!({"genus": 2, "terms": [{"coeff": "1", "class": "a3"}]})).is_err());
    assert!(formal_sum_from_json(&json!({"genus": 0, "terms": []})).is_err());
    assert!(formal_sum_from_json(&json!({"terms": []})).is_err());
    assert!(bv_element_from_json(&json!({"genus": 1, "h2": {"genus": 2, "terms": []}})).is_err());
}

#[test]
fn repeated_classes_are_summed() {
    let v = json!({"genus": 2, "terms": [
        {"coeff": "1/2", "class": "a1 b1"},
        {"coeff": "1/2", "class": "b1 a1"},
    ]});
    let s = formal_sum_from_json(&v).unwrap();
    let p = Presentation::new(2).unwrap();
    assert_eq!(s, FormalSum::basis(LoopClass::parse("a1 b1", &p).unwrap()));
}

#[test]
fn report_shape() {
    let alg = BvAlgebra::new(std::sync::Arc::new(TorusBracket::new()), SignConfig::DEFAULT);
    let v = axiom_report_to_json(&verify_axioms(&alg, 1, 5, 1).unwrap());
    assert_eq!(v["passed"], true);
    assert_eq!(v["signs"], "(+,+,-,+)");
    assert_eq!(v["results"].as_array().unwrap().len(), 6);
}
