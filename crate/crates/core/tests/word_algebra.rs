use loopbracket::word::cyclic_canonical;
use loopbracket::{CyclicWord, Letter, Word};
use proptest::prelude::*;

fn letters(genus: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(0..4 * genus, 0..=max_len).prop_map(|v| v.into_iter().map(Letter::from_index).collect())
}

fn word(genus: usize, max_len: usize) -> impl Strategy<Value = Word> {
    letters(genus, max_len).prop_map(move |l| Word::from_letters(genus, l))
}

#[test]
fn parse_and_display_round_trip() {
    let w = Word::parse("a1 B2 b1 A2", 2).unwrap();
    assert_eq!(w.to_string(), "a1 B2 b1 A2");
    assert_eq!(Word::parse(&w.to_string(), 2).unwrap(), w);
    assert!(Word::parse("a3", 2).is_err());
    assert!(Word::parse("c1", 2).is_err());
}

#[test]
fn letters_are_ordered_generator_first() {
    let order: Vec<String> = (0..8).map(|i| Letter::from_index(i).to_string()).collect();
    assert_eq!(order, ["a1", "A1", "b1", "B1", "a2", "A2", "b2", "B2"]);
}

proptest! {
    #[test]
    fn free_reduce_is_idempotent_and_reduced(w in word(2, 24)) {
        let r = w.free_reduce().unwrap();
        prop_assert!(r.is_reduced());
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(r.free_reduce().unwrap(), r);
    }

    #[test]
    fn inverse_cancels(w in word(3, 20)) {
        prop_assert!(w.concat(&w.invert()).unwrap().is_empty());
        prop_assert!(w.invert().concat(&w).unwrap().is_empty());
        prop_assert_eq!(w.invert().invert(), w);
    }

    #[test]
    fn concat_is_associative(x in word(2, 10), y in word(2, 10), z in word(2, 10)) {
        let left = x.concat(&y).unwrap().concat(&z).unwrap();
        let right = x.concat(&y.concat(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn cyclic_canonical_ignores_rotation(w in word(2, 16), k in 0usize..16) {
        let core = w.free_reduce().unwrap().cyclic_reduce().cyclic_word();
        let l = core.letters().to_vec();
        let mut rotated = l.clone();
        if !l.is_empty() {
            rotated.rotate_left(k % l.len());
        }
        prop_assert_eq!(cyclic_canonical(&rotated), cyclic_canonical(&l));
        let again = CyclicWord::new(&Word::from_letters(2, rotated)).unwrap();
        prop_assert_eq!(again, core);
    }

    #[test]
    fn cyclic_reduction_is_cyclically_reduced(w in word(2, 20)) {
        let c = w.free_reduce().unwrap().cyclic_reduce().cyclic_word();
        let l = c.letters();
        if l.len() >= 2 {
            prop_assert!(!l[0].is_inverse_of(l[l.len() - 1]));
        }
    }
}

proptest! {
    #[test]
    fn cyclic_reduction_recovers_word(w in word(2, 20)) {
        let r = w.free_reduce().unwrap();
        let c = r.cyclic_reduce();
        let back = c.conjugator.concat(&c.core).unwrap().concat(&c.conjugator.invert()).unwrap();
        prop_assert_eq!(back, r);
    }
}
