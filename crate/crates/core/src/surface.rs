//! The closed surface group `<a1, b1, ..., ag, bg | [a1,b1]...[ag,bg]>`.
//!
//! For genus at least two the standard presentation is small-cancellation, so
//! Dehn's algorithm solves the word problem; conjugacy classes are represented
//! by the least minimal-length cyclic word in the class. Genus one is
//! handled as `Z^2`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::word::{cyclic_canonical, invert_letters, is_cyclically_reduced, reduce_letters, CyclicWord, Letter, Word};

/// One-relator presentation of the genus-`g` surface group.
#[derive(Clone, Debug)]
pub struct Presentation {
    genus: usize,
    relator: Vec<Letter>,
    /// All rotations of the relator and of its inverse.
    rotations: Vec<Vec<Letter>>,
    /// `starts[letter.index()]` lists the rotations beginning with that letter.
    starts: Vec<Vec<usize>>,
}

impl Presentation {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidArgument("genus must be at least 1".into()));
        }
        let mut relator = Vec::with_capacity(4 * genus);
        for k in 1..=genus {
            relator.extend([Letter::a(k), Letter::b(k), Letter::a(k).inv(), Letter::b(k).inv()]);
        }
        let inverse = invert_letters(&relator);
        let mut rotations = Vec::with_capacity(8 * genus);
        for base in [&relator, &inverse] {
            for k in 0..base.len() {
                let mut r = base.clone();
                r.rotate_left(k);
                rotations.push(r);
            }
        }
        let mut starts = vec![Vec::new(); 4 * genus];
        for (i, r) in rotations.iter().enumerate() {
            starts[r[0].index()].push(i);
        }
        Ok(Presentation {
            genus,
            relator,
            rotations,
            starts,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn relator(&self) -> Word {
        Word::from_letters(self.genus, self.relator.clone())
    }

    fn relator_len(&self) -> usize {
        4 * self.genus
    }

    fn check(&self, w: &Word) -> Result<()> {
        if w.genus() != self.genus {
            return Err(Error::GenusMismatch {
                left: w.genus(),
                right: self.genus,
            });
        }
        w.check_alphabet()
    }

    fn require_hyperbolic(&self) -> Result<()> {
        if self.genus < 2 {
            return Err(Error::Unsupported(
                "Dehn reduction needs genus >= 2; genus 1 uses exponent vectors".into(),
            ));
        }
        Ok(())
    }

    /// Longest relator-rotation prefix matching `letters` read from `start`
    /// (cyclically when `cyclic`). Returns `(rotation, length)`.
    fn longest_piece(&self, letters: &[Letter], start: usize, cyclic: bool) -> Option<(usize, usize)> {
        let n = letters.len();
        let limit = if cyclic { n.min(self.relator_len()) } else { (n - start).min(self.relator_len()) };
        let mut best: Option<(usize, usize)> = None;
        for &ri in &self.starts[letters[start].index()] {
            let rot = &self.rotations[ri];
            let mut k = 1;
            while k < limit && letters[(start + k) % n] == rot[k] {
                k += 1;
            }
            if best.is_none_or(|(_, b)| k > b) {
                best = Some((ri, k));
            }
        }
        best
    }

    /// Dehn's algorithm: replace any subword longer than half a relator by
    /// the inverse of the complementary piece until none remains.
    pub fn dehn_reduce(&self, w: &Word) -> Result<Word> {
        self.require_hyperbolic()?;
        self.check(w)?;
        Ok(Word::from_letters(self.genus, self.dehn_letters(w.letters())))
    }

    pub(crate) fn dehn_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let half = 2 * self.genus;
        let mut cur = reduce_letters(letters.iter().copied());
        'outer: loop {
            for start in 0..cur.len() {
                if let Some((ri, k)) = self.longest_piece(&cur, start, false) {
                    if k > half {
                        let rot = &self.rotations[ri];
                        let replacement = invert_letters(&rot[k..]);
                        let next = cur[..start]
                            .iter()
                            .chain(&replacement)
                            .chain(&cur[start + k..])
                            .copied();
                        cur = reduce_letters(next);
                        continue 'outer;
                    }
                }
            }
            return cur;
        }
    }

    /// Cyclic Dehn reduction of a word viewed as a cyclic word.
    fn cyclic_dehn(&self, letters: &[Letter]) -> Vec<Letter> {
        let half = 2 * self.genus;
        let mut cur = cyclic_core(letters);
        'outer: loop {
            let n = cur.len();
            for start in 0..n {
                if let Some((ri, k)) = self.longest_piece(&cur, start, true) {
                    if k > half {
                        let rot = &self.rotations[ri];
                        let mut next = invert_letters(&rot[k..]);
                        next.extend((0..n - k).map(|i| cur[(start + k + i) % n]));
                        cur = cyclic_core(&next);
                        continue 'outer;
                    }
                }
            }
            return cur;
        }
    }

    /// All minimal-length cyclic words (least rotations) conjugate to `seed`.
    ///
    /// Conjugate cyclically Dehn-reduced words are joined by a single layer of
    /// relator cells. Walking that layer one cell at a time replaces a relator
    /// piece by its complement and never needs more than two extra letters, so
    /// the search runs over cyclic words of length at most `L + 2`. A word shorter
    /// than the seed restarts the search from it.
    fn conjugacy_closure(&self, seed: Vec<Letter>) -> BTreeSet<Vec<Letter>> {
        let g2 = 2 * self.genus;
        let min_piece = g2 - 2;
        let mut seed = cyclic_canonical(&seed);
        'restart: loop {
            let len = seed.len();
            let mut minimal: BTreeSet<Vec<Letter>> = BTreeSet::new();
            if len < 2 {
                minimal.insert(seed);
                return minimal;
            }
            let mut seen: HashSet<Vec<Letter>> = HashSet::new();
            seen.insert(seed.clone());
            let mut stack = vec![seed.clone()];
            while let Some(word) = stack.pop() {
                let n = word.len();
                if n == len {
                    minimal.insert(word.clone());
                }
                for start in 0..n {
                    let Some((_, longest)) = self.longest_piece(&word, start, true) else {
                        continue;
                    };
                    if longest < min_piece.max(1) {
                        continue;
                    }
                    for &ri in &self.starts[word[start].index()] {
                        let r = &self.rotations[ri];
                        let mut matched = 1;
                        while matched < n.min(r.len()) && word[(start + matched) % n] == r[matched] {
                            matched += 1;
                        }
                        for k in min_piece.max(1)..=matched {
                            let mut next = invert_letters(&r[k..]);
                            next.extend((0..n - k).map(|i| word[(start + k + i) % n]));
                            let next = cyclic_core(&next);
                            if next.len() < len {
                                seed = cyclic_canonical(&self.cyclic_dehn(&next));
                                continue 'restart;
                            }
                            if next.len() > len + 2 {
                                continue;
                            }
                            let next = cyclic_canonical(&next);
                            if seen.insert(next.clone()) {
                                stack.push(next);
                            }
                        }
                    }
                }
            }
            return minimal;
        }
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool> {
        self.check(w)?;
        if self.genus == 1 {
            return Ok(self.abelianize(w)?.is_zero());
        }
        Ok(self.dehn_letters(w.letters()).is_empty())
    }

    /// Canonical representative of the conjugacy class of `w`.
    pub fn conjugacy_canonical(&self, w: &Word) -> Result<LoopClass> {
        self.check(w)?;
        if self.genus == 1 {
            let (mut p, mut q) = (0i64, 0i64);
            for l in w.letters() {
                if l.generator() == 0 {
                    p += l.sign();
                } else {
                    q += l.sign();
                }
            }
            return Ok(LoopClass::Torus { p, q });
        }
        let core = self.cyclic_dehn(w.letters());
        if core.is_empty() {
            return Ok(LoopClass::Surface(CyclicWord::from_cyclically_reduced(self.genus, &[])));
        }
        let closure = self.conjugacy_closure(core);
        let least = closure.into_iter().next().expect("closure contains its seed");
        Ok(LoopClass::Surface(CyclicWord::from_cyclically_reduced(self.genus, &least)))
    }

    pub fn are_conjugate(&self, w1: &Word, w2: &Word) -> Result<bool> {
        Ok(self.conjugacy_canonical(w1)? == self.conjugacy_canonical(w2)?)
    }

    /// Writes `class = root^power` with `root` primitive. The trivial class is its own root
    /// with power 0.
    pub fn primitive_root(&self, class: &LoopClass) -> Result<(LoopClass, u32)> {
        self.check_class(class)?;
        match class {
            LoopClass::Torus { p, q } => {
                let d = gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
                if d == 0 {
                    return Ok((class.clone(), 0));
                }
                Ok((LoopClass::Torus { p: p / d, q: q / d }, d as u32))
            }
            LoopClass::Surface(c) => {
                if c.is_empty() {
                    return Ok((class.clone(), 0));
                }
                let n = c.len();
                let mut best: (Vec<Letter>, usize) = (c.letters().to_vec(), 1);
                for word in self.conjugacy_closure(c.letters().to_vec()) {
                    for d in (best.1 + 1..=n).filter(|d| n % d == 0) {
                        let period = n / d;
                        if (period..n).all(|i| word[i] == word[i - period]) {
                            best = (word[..period].to_vec(), d);
                        }
                    }
                }
                let root = self.conjugacy_canonical(&Word::from_letters(self.genus, best.0))?;
                Ok((root, best.1 as u32))
            }
        }
    }

    fn check_class(&self, class: &LoopClass) -> Result<()> {
        if class.genus() != self.genus {
            return Err(Error::GenusMismatch {
                left: class.genus(),
                right: self.genus,
            });
        }
        Ok(())
    }

    /// All classes of canonical length at most `max_len`, sorted, including the trivial class.
    pub fn enumerate_classes(&self, max_len: i64) -> Result<Vec<LoopClass>> {
        if max_len < 0 {
            return Err(Error::InvalidArgument(format!(
                "max_len must be non-negative, got {max_len}"
            )));
        }
        let max_len = max_len as usize;
        let mut out: BTreeSet<LoopClass> = BTreeSet::new();
        if self.genus == 1 {
            let m = max_len as i64;
            for p in -m..=m {
                let rest = m - p.abs();
                for q in -rest..=rest {
                    out.insert(LoopClass::Torus { p, q });
                }
            }
            return Ok(out.into_iter().collect());
        }
        let alphabet = 4 * self.genus;
        let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
        out.insert(self.conjugacy_canonical(&Word::identity(self.genus))?);
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(frontier.len() * (alphabet - 1));
            for w in &frontier {
                for i in 0..alphabet {
                    let l = Letter::from_index(i);
                    if w.last().is_some_and(|&last| last.is_inverse_of(l)) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(l);
                    if is_cyclically_reduced(&v) {
                        let class = self.conjugacy_canonical(&Word::from_letters(self.genus, v.clone()))?;
                        if class.len() <= max_len {
                            out.insert(class);
                        }
                    }
                    next.push(v);
                }
            }
            frontier = next;
        }
        Ok(out.into_iter().collect())
    }

    /// Signed letter counts in the basis `(a1, b1, ..., ag, bg)`.
    pub fn abelianize(&self, w: &Word) -> Result<H1Class> {
        self.check(w)?;
        let mut counts = vec![0i64; 2 * self.genus];
        for l in w.letters() {
            counts[l.generator()] += l.sign();
        }
        Ok(H1Class::from_integers(&counts))
    }

    pub fn abelianize_class(&self, class: &LoopClass) -> Result<H1Class> {
        self.check_class(class)?;
        self.abelianize(&class.representative())
    }
}

fn cyclic_core(letters: &[Letter]) -> Vec<Letter> {
    let mut v = reduce_letters(letters.iter().copied());
    let mut k = 0;
    let n = v.len();
    while n >= 2 * k + 2 && v[k].is_inverse_of(v[n - 1 - k]) {
        k += 1;
    }
    v.truncate(n - k);
    v.drain(..k);
    v
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A free homotopy class of loops: a basis vector of the Goldman space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LoopClass {
    /// Genus one: the exponent vector `(p, q)` of `a1^p b1^q`.
    Torus { p: i64, q: i64 },
    /// Genus at least two: the canonical cyclic word.
    Surface(CyclicWord),
}

impl LoopClass {
    pub fn trivial(genus: usize) -> Self {
        if genus == 1 {
            LoopClass::Torus { p: 0, q: 0 }
        } else {
            LoopClass::Surface(CyclicWord::from_cyclically_reduced(genus, &[]))
        }
    }

    pub fn genus(&self) -> usize {
        match self {
            LoopClass::Torus { .. } => 1,
            LoopClass::Surface(c) => c.genus(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            LoopClass::Torus { p, q } => *p == 0 && *q == 0,
            LoopClass::Surface(c) => c.is_empty(),
        }
    }

    /// Canonical word length, or `|p| + |q|` on the torus. Zero exactly for the
    /// trivial class, so [`LoopClass::is_trivial`] doubles as `is_empty`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self {
            LoopClass::Torus { p, q } => (p.unsigned_abs() + q.unsigned_abs()) as usize,
            LoopClass::Surface(c) => c.len(),
        }
    }

    /// A word representing the class (`a1^p b1^q` on the torus).
    pub fn representative(&self) -> Word {
        match self {
            LoopClass::Torus { p, q } => {
                let mut letters = Vec::new();
                letters.extend(std::iter::repeat_n(Letter::new(0, *p < 0), p.unsigned_abs() as usize));
                letters.extend(std::iter::repeat_n(Letter::new(1, *q < 0), q.unsigned_abs() as usize));
                Word::from_letters(1, letters)
            }
            LoopClass::Surface(c) => c.to_word(),
        }
    }

    /// Parses either the word syntax or, for genus 1, `(p,q)`; canonicalizes.
    pub fn parse(text: &str, presentation: &Presentation) -> Result<Self> {
        let genus = presentation.genus();
        let trimmed = text.trim();
        if trimmed.starts_with('(') {
            if genus != 1 {
                return Err(Error::Parse {
                    position: 0,
                    message: "`(p,q)` classes are only valid for genus 1".into(),
                });
            }
            let (p, q) = parse_pair(trimmed)?;
            return Ok(LoopClass::Torus { p, q });
        }
        presentation.conjugacy_canonical(&Word::parse(text, genus)?)
    }
}

fn parse_pair(text: &str) -> Result<(i64, i64)> {
    let malformed = |message: &str| Error::Parse {
        position: 0,
        message: format!("{message} in `{text}`"),
    };
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| malformed("malformed pair"))?;
    let mut parts = inner.split(',');
    let (Some(p), Some(q), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(malformed("expected two components"));
    };
    let p = p.trim().parse().map_err(|_| malformed("bad integer"))?;
    let q = q.trim().parse().map_err(|_| malformed("bad integer"))?;
    Ok((p, q))
}

impl Ord for LoopClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.genus()
            .cmp(&other.genus())
            .then(self.len().cmp(&other.len()))
            .then_with(|| match (self, other) {
                (LoopClass::Torus { p, q }, LoopClass::Torus { p: r, q: s }) => (p, q).cmp(&(r, s)),
                (LoopClass::Surface(a), LoopClass::Surface(b)) => a.letters().cmp(b.letters()),
                (LoopClass::Torus { .. }, _) => Ordering::Less,
                (_, LoopClass::Torus { .. }) => Ordering::Greater,
            })
    }
}

impl PartialOrd for LoopClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LoopClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopClass::Torus { p, q } => write!(f, "({p},{q})"),
            LoopClass::Surface(c) => write!(f, "{c}"),
        }
    }
}

/// A first homology class with exact rational coordinates `(a1, b1, ..., ag, bg)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct H1Class {
    coords: Vec<BigRational>,
}

impl H1Class {
    pub fn zero(genus: usize) -> Self {
        H1Class {
            coords: vec![BigRational::zero(); 2 * genus],
        }
    }

    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.is_empty() || !coords.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "H1 class needs 2g coordinates, got {}",
                coords.len()
            )));
        }
        Ok(H1Class { coords })
    }

    pub fn from_integers(values: &[i64]) -> Self {
        H1Class {
            coords: values.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect(),
        }
    }

    /// Unit vector for generator index `i` (`2(k-1)` is `ak`, `2(k-1)+1` is `bk`).
    pub fn unit(genus: usize, i: usize) -> Self {
        let mut h = H1Class::zero(genus);
        h.coords[i] = BigRational::from_integer(1.into());
        h
    }

    pub fn genus(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &H1Class) -> Result<H1Class> {
        self.same_genus(other)?;
        Ok(H1Class {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> H1Class {
        H1Class {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub(crate) fn same_genus(&self, other: &H1Class) -> Result<()> {
        if self.coords.len() != other.coords.len() {
            return Err(Error::GenusMismatch {
                left: self.genus(),
                right: other.genus(),
            });
        }
        Ok(())
    }

    /// Largest absolute coordinate, for sampling diagnostics.
    pub fn max_abs(&self) -> BigRational {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero)
    }
}
