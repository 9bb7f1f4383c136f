//! Words in the free group on the `2g` surface generators `a1, b1, ..., ag, bg`.
//!
//! Text syntax is whitespace-separated tokens `a<k>`, `b<k>`, `A<k>`, `B<k>` with
//! `1 <= k <= g`; capitals denote inverses and the empty string is the identity.

use std::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse. Generator index `2(k-1)` is `ak`, `2(k-1)+1` is `bk`.
///
/// The derived order is generator-major with the positive letter first, so
/// `a1 < A1 < b1 < B1 < a2 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u16,
    inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter {
            generator: generator as u16,
            inverse,
        }
    }

    pub fn a(k: usize) -> Self {
        Letter::new(2 * (k - 1), false)
    }

    pub fn b(k: usize) -> Self {
        Letter::new(2 * (k - 1) + 1, false)
    }

    pub fn generator(self) -> usize {
        self.generator as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    /// Dense index in `0..4g`, following the letter order.
    pub fn index(self) -> usize {
        2 * self.generator as usize + self.inverse as usize
    }

    pub fn from_index(index: usize) -> Self {
        Letter::new(index / 2, index % 2 == 1)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.generator / 2 + 1;
        let c = match (self.generator.is_multiple_of(2), self.inverse) {
            (true, false) => 'a',
            (true, true) => 'A',
            (false, false) => 'b',
            (false, true) => 'B',
        };
        write!(f, "{c}{k}")
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// Free reduction of a raw letter sequence (no alphabet check).
pub(crate) fn reduce_letters(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        match out.last() {
            Some(&last) if last.is_inverse_of(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

pub(crate) fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inv()).collect()
}

/// Lexicographically least rotation.
pub fn cyclic_canonical(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best = 0;
    for start in 1..n {
        let cand = letters[start..].iter().chain(&letters[..start]);
        let cur = letters[best..].iter().chain(&letters[..best]);
        if cand.cmp(cur) == std::cmp::Ordering::Less {
            best = start;
        }
    }
    let mut out = letters[best..].to_vec();
    out.extend_from_slice(&letters[..best]);
    out
}

pub(crate) fn is_cyclically_reduced(letters: &[Letter]) -> bool {
    let n = letters.len();
    if n == 0 {
        return true;
    }
    let freely = letters.windows(2).all(|w| !w[0].is_inverse_of(w[1]));
    freely && (n == 1 || !letters[0].is_inverse_of(letters[n - 1]))
}

/// A finite letter sequence over the alphabet of a fixed genus. Not necessarily reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    genus: usize,
    letters: Vec<Letter>,
}

impl Word {
    /// Builds a word without checking the alphabet; [`Word::free_reduce`] does the check.
    pub fn from_letters(genus: usize, letters: Vec<Letter>) -> Self {
        Word { genus, letters }
    }

    pub fn identity(genus: usize) -> Self {
        Word {
            genus,
            letters: Vec::new(),
        }
    }

    pub fn parse(text: &str, genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidArgument("genus must be at least 1".into()));
        }
        let mut letters = Vec::new();
        let mut pos = 0;
        for token in text.split_whitespace() {
            let position = text[pos..].find(token).map_or(pos, |i| pos + i);
            pos = position + token.len();
            let mut chars = token.chars();
            let head = chars.next().unwrap();
            let (gen_offset, inverse) = match head {
                'a' => (0, false),
                'A' => (0, true),
                'b' => (1, false),
                'B' => (1, true),
                _ => {
                    return Err(Error::Parse {
                        position,
                        message: format!("unknown token `{token}`"),
                    })
                }
            };
            let k: usize = chars.as_str().parse().map_err(|_| Error::Parse {
                position,
                message: format!("unknown token `{token}`"),
            })?;
            if k == 0 || k > genus {
                return Err(Error::Parse {
                    position,
                    message: format!("index {k} in `{token}` is outside 1..={genus}"),
                });
            }
            letters.push(Letter::new(2 * (k - 1) + gen_offset, inverse));
        }
        Ok(Word { genus, letters })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn check_alphabet(&self) -> Result<()> {
        for l in &self.letters {
            if l.generator() >= 2 * self.genus {
                return Err(Error::Alphabet {
                    index: l.generator(),
                    genus: self.genus,
                });
            }
        }
        Ok(())
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].is_inverse_of(w[1]))
    }

    pub fn free_reduce(&self) -> Result<Word> {
        self.check_alphabet()?;
        Ok(Word {
            genus: self.genus,
            letters: reduce_letters(self.letters.iter().copied()),
        })
    }

    pub fn invert(&self) -> Word {
        Word {
            genus: self.genus,
            letters: invert_letters(&self.letters),
        }
    }

    /// Product in the free group: juxtaposition followed by free reduction.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        self.check_alphabet()?;
        other.check_alphabet()?;
        Ok(Word {
            genus: self.genus,
            letters: reduce_letters(self.letters.iter().chain(&other.letters).copied()),
        })
    }

    /// Splits a reduced word as `w = u c u^-1` with `c` cyclically reduced.
    pub fn cyclic_reduce(&self) -> CyclicReduction {
        let letters = reduce_letters(self.letters.iter().copied());
        let n = letters.len();
        let mut k = 0;
        while n >= 2 * k + 2 && letters[k].is_inverse_of(letters[n - 1 - k]) {
            k += 1;
        }
        CyclicReduction {
            core: Word::from_letters(self.genus, letters[k..n - k].to_vec()),
            conjugator: Word::from_letters(self.genus, letters[..k].to_vec()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

/// Result of [`Word::cyclic_reduce`]: `word = conjugator * core * conjugator^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicReduction {
    /// Cyclically reduced, in its original rotation.
    pub core: Word,
    pub conjugator: Word,
}

impl CyclicReduction {
    pub fn cyclic_word(&self) -> CyclicWord {
        CyclicWord::from_cyclically_reduced(self.core.genus, &self.core.letters)
    }
}

/// A cyclically reduced word up to rotation, stored as its least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    genus: usize,
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// Cyclically reduces `word` and stores the least rotation of the core.
    pub fn new(word: &Word) -> Result<Self> {
        word.check_alphabet()?;
        Ok(word.cyclic_reduce().cyclic_word())
    }

    pub(crate) fn from_cyclically_reduced(genus: usize, letters: &[Letter]) -> Self {
        debug_assert!(is_cyclically_reduced(letters));
        CyclicWord {
            genus,
            letters: cyclic_canonical(letters),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word::from_letters(self.genus, self.letters.clone())
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn letter_order() {
        let order: Vec<String> = (0..8).map(|i| Letter::from_index(i).to_string()).collect();
        assert_eq!(order, ["a1", "A1", "b1", "B1", "a2", "A2", "b2", "B2"]);
        let mut sorted: Vec<Letter> = (0..8).rev().map(Letter::from_index).collect();
        sorted.sort();
        assert_eq!(sorted, (0..8).map(Letter::from_index).collect::<Vec<_>>());
    }

    #[test]
    fn free_reduce_examples() {
        assert!(w("a1 A1").free_reduce().unwrap().is_empty());
        assert_eq!(w("a1 b1 B1 a1").free_reduce().unwrap(), w("a1 a1"));
        let r = w("a1 b2 A2");
        assert_eq!(r.free_reduce().unwrap(), r);
    }

    #[test]
    fn free_reduce_rejects_foreign_letters() {
        let bad = Word::from_letters(1, vec![Letter::a(2)]);
        assert!(matches!(
            bad.free_reduce(),
            Err(Error::Alphabet { index: 2, genus: 1 })
        ));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("a1 b1").invert(), w("B1 A1"));
        assert!(w("").invert().is_empty());
        assert_eq!(w("a1 B2 b1").invert().invert(), w("a1 B2 b1"));
    }

    #[test]
    fn concat_examples() {
        assert!(w("a1").concat(&w("A1")).unwrap().is_empty());
        assert_eq!(w("a1").concat(&w("b1")).unwrap(), w("a1 b1"));
        assert_eq!(w("a1 b1").concat(&w("B1")).unwrap(), w("a1"));
        let g1 = Word::parse("a1", 1).unwrap();
        assert!(matches!(
            g1.concat(&w("a1")),
            Err(Error::GenusMismatch { .. })
        ));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let r = w("b1 a1 B1").cyclic_reduce();
        assert_eq!(r.core, w("a1"));
        assert_eq!(r.conjugator, w("b1"));
        let r = w("a1 b1").cyclic_reduce();
        assert_eq!(r.core, w("a1 b1"));
        assert!(r.conjugator.is_empty());
        let r = w("A1 b2 a2 a1").cyclic_reduce();
        assert_eq!(r.core, w("b2 a2"));
        assert_eq!(r.conjugator, w("A1"));
    }

    #[test]
    fn cyclic_canonical_examples() {
        assert_eq!(cyclic_canonical(w("b1 a1").letters()), w("a1 b1").into_letters());
        assert_eq!(cyclic_canonical(w("a1").letters()), w("a1").into_letters());
        let base = w("a1 b1 a2 b2").into_letters();
        let outs: Vec<_> = (0..4)
            .map(|k| {
                let mut r = base.clone();
                r.rotate_left(k);
                cyclic_canonical(&r)
            })
            .collect();
        assert!(outs.iter().all(|o| *o == outs[0]));
    }

    #[test]
    fn parse_errors_carry_position() {
        match Word::parse("a1 a3", 2) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Word::parse("c1", 2).is_err());
        assert!(Word::parse("a0", 2).is_err());
        assert_eq!(w("a1  B2").to_string(), "a1 B2");
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..4, any::<bool>()), 0..=max_len).prop_map(|v| {
            Word::from_letters(2, v.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
        })
    }

    fn arb_cyclic(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
        arb_word(max_len).prop_map(|w| w.cyclic_reduce().core.into_letters())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn free_reduce_idempotent_and_shrinking(word in arb_word(20)) {
            let once = word.free_reduce().unwrap();
            prop_assert!(once.len() <= word.len());
            prop_assert!(once.is_reduced());
            prop_assert_eq!(once.free_reduce().unwrap(), once);
        }

        #[test]
        fn word_times_inverse_is_trivial(word in arb_word(20)) {
            prop_assert!(word.concat(&word.invert()).unwrap().is_empty());
        }

        #[test]
        fn cyclic_reduction_conjugates_back(word in arb_word(20)) {
            let reduced = word.free_reduce().unwrap();
            let r = reduced.cyclic_reduce();
            prop_assert!(is_cyclically_reduced(r.core.letters()));
            let back = r.conjugator.concat(&r.core).unwrap().concat(&r.conjugator.invert()).unwrap();
            prop_assert_eq!(back, reduced);
        }

        #[test]
        fn canonical_rotation_is_orbit_constant(core in arb_cyclic(12)) {
            let c = cyclic_canonical(&core);
            for k in 0..core.len() {
                let mut r = core.clone();
                r.rotate_left(k);
                prop_assert_eq!(&cyclic_canonical(&r), &c);
            }
        }
    }
}
