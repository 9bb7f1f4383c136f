//! The BV algebra on the Hochschild cohomology of a surface group algebra.
//!
//! `HH⁰ = k`, `HH¹ = H₁ ⊕ L/kγ₀`, `HH² = L`, with `L` the Goldman space and `γ₀`
//! the trivial class. The only nontrivial products are the unit action and
//! `HH¹ × HH¹ → HH²`; the operator `λ` is the projection `HH² → L/kγ₀ ⊂ HH¹`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formal::{rational, ratio, FormalSum, Rational};
use crate::goldman::{intersection_pairing, loop_h1_pairing, BracketBackend};
use crate::surface::{H1Class, LoopClass, Presentation};

/// A (possibly inhomogeneous) element of `HH*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BVElement {
    genus: usize,
    h0: Rational,
    h1_alpha: H1Class,
    /// Representative of `L/kγ₀` with no `γ₀` term.
    h1_loops: FormalSum,
    h2: FormalSum,
}

impl BVElement {
    pub fn zero(genus: usize) -> Self {
        BVElement {
            genus,
            h0: Rational::zero(),
            h1_alpha: H1Class::zero(genus),
            h1_loops: FormalSum::zero(genus),
            h2: FormalSum::zero(genus),
        }
    }

    /// Assembles an element; the `γ₀` term of `h1_loops` is discarded.
    pub fn new(h0: Rational, h1_alpha: H1Class, h1_loops: FormalSum, h2: FormalSum) -> Result<Self> {
        let genus = h1_alpha.genus();
        for g in [h1_loops.genus(), h2.genus()] {
            if g != genus {
                return Err(Error::GenusMismatch { left: genus, right: g });
            }
        }
        Ok(BVElement {
            genus,
            h0,
            h1_alpha,
            h1_loops: h1_loops.without_trivial(),
            h2,
        })
    }

    pub fn scalar(genus: usize, c: Rational) -> Self {
        BVElement {
            h0: c,
            ..BVElement::zero(genus)
        }
    }

    pub fn unit(genus: usize) -> Self {
        BVElement::scalar(genus, Rational::one())
    }

    pub fn degree_one(alpha: H1Class, loops: FormalSum) -> Result<Self> {
        let genus = alpha.genus();
        BVElement::new(Rational::zero(), alpha, loops, FormalSum::zero(genus))
    }

    pub fn degree_two(sum: FormalSum) -> Self {
        BVElement {
            h2: sum.clone(),
            ..BVElement::zero(sum.genus())
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn h0(&self) -> &Rational {
        &self.h0
    }

    pub fn h1_alpha(&self) -> &H1Class {
        &self.h1_alpha
    }

    pub fn h1_loops(&self) -> &FormalSum {
        &self.h1_loops
    }

    pub fn h2(&self) -> &FormalSum {
        &self.h2
    }

    pub fn is_zero(&self) -> bool {
        self.h0.is_zero() && self.h1_alpha.is_zero() && self.h1_loops.is_zero() && self.h2.is_zero()
    }

    fn check(&self, other: &BVElement) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &BVElement) -> Result<BVElement> {
        self.check(other)?;
        Ok(BVElement {
            genus: self.genus,
            h0: &self.h0 + &other.h0,
            h1_alpha: self.h1_alpha.add(&other.h1_alpha)?,
            h1_loops: self.h1_loops.add(&other.h1_loops)?,
            h2: self.h2.add(&other.h2)?,
        })
    }

    pub fn scale(&self, c: &Rational) -> BVElement {
        BVElement {
            genus: self.genus,
            h0: &self.h0 * c,
            h1_alpha: self.h1_alpha.scale(c),
            h1_loops: self.h1_loops.scale(c),
            h2: self.h2.scale(c),
        }
    }

    pub fn neg(&self) -> BVElement {
        self.scale(&rational(-1))
    }

    pub fn sub(&self, other: &BVElement) -> Result<BVElement> {
        self.add(&other.neg())
    }

    /// The homogeneous component of degree `d` (zero for `d > 2`).
    pub fn component(&self, d: usize) -> BVElement {
        let mut out = BVElement::zero(self.genus);
        match d {
            0 => out.h0 = self.h0.clone(),
            1 => {
                out.h1_alpha = self.h1_alpha.clone();
                out.h1_loops = self.h1_loops.clone();
            }
            2 => out.h2 = self.h2.clone(),
            _ => {}
        }
        out
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self) -> Option<usize> {
        let present: Vec<usize> = (0..3).filter(|&d| !self.component(d).is_zero()).collect();
        match present.as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Nonzero homogeneous components with their degrees.
    pub fn components(&self) -> Vec<(usize, BVElement)> {
        (0..3)
            .map(|d| (d, self.component(d)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

impl fmt::Display for BVElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha: Vec<String> = self.h1_alpha.coords().iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "HH0: {} | HH1: ({}; {}) | HH2: {}",
            self.h0,
            alpha.join(", "),
            self.h1_loops,
            self.h2
        )
    }
}

/// Signs of the four terms of the product `HH¹ × HH¹ → HH²`:
/// `s1⟨α,α′⟩γ₀ + s2⟨α′,γ⟩γ + s3⟨α,γ′⟩γ′ + s4[γ,γ′]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignConfig {
    pub s1: i8,
    pub s2: i8,
    pub s3: i8,
    pub s4: i8,
}

impl SignConfig {
    /// All four signs positive.
    pub const ALL_PLUS: SignConfig = SignConfig {
        s1: 1,
        s2: 1,
        s3: 1,
        s4: 1,
    };

    /// The shipped default: `(+,+,−,+)`, the axiom-compatible choice nearest to all-plus.
    pub const DEFAULT: SignConfig = SignConfig {
        s1: 1,
        s2: 1,
        s3: -1,
        s4: 1,
    };

    pub fn new(s1: i8, s2: i8, s3: i8, s4: i8) -> Result<Self> {
        if [s1, s2, s3, s4].iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidArgument("signs must be +1 or -1".into()));
        }
        Ok(SignConfig { s1, s2, s3, s4 })
    }

    /// All sixteen configurations, `+` before `−`, `s1` varying slowest.
    pub fn all() -> Vec<SignConfig> {
        let mut out = Vec::with_capacity(16);
        for s1 in [1, -1] {
            for s2 in [1, -1] {
                for s3 in [1, -1] {
                    for s4 in [1, -1] {
                        out.push(SignConfig { s1, s2, s3, s4 });
                    }
                }
            }
        }
        out
    }

    pub fn signs(&self) -> [i8; 4] {
        [self.s1, self.s2, self.s3, self.s4]
    }

    /// Number of minus signs, i.e. the distance from all-plus.
    pub fn flips(&self) -> usize {
        self.signs().iter().filter(|&&s| s < 0).count()
    }
}

impl Default for SignConfig {
    fn default() -> Self {
        SignConfig::DEFAULT
    }
}

impl fmt::Display for SignConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.signs().iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for SignConfig {
    type Err = Error;

    /// Accepts `++-+`, `+,+,-,+` or `(+,+,-,+)`.
    fn from_str(text: &str) -> Result<Self> {
        let signs: Vec<i8> = text
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | ',' | ' '))
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '−' => Ok(-1),
                other => Err(Error::Parse {
                    position: 0,
                    message: format!("unexpected `{other}` in sign configuration `{text}`"),
                }),
            })
            .collect::<Result<_>>()?;
        match signs.as_slice() {
            &[s1, s2, s3, s4] => SignConfig::new(s1, s2, s3, s4),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("sign configuration `{text}` needs exactly four signs"),
            }),
        }
    }
}

/// How the bracket is read off from `λ` and the product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum BracketConvention {
    /// `(−1)^{|a|−1} (λ(ab) − λ(a)b − (−1)^{|a|} aλ(b))`: graded antisymmetric.
    #[default]
    Shifted,
    /// `λ(ab) − λ(a)b − (−1)^{|a|} aλ(b)` exactly as written; symmetric under
    /// `a ↔ b` up to `(−1)^{|a||b|}`, so antisymmetry fails in degrees `(1,2)`.
    Literal,
}

impl fmt::Display for BracketConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BracketConvention::Shifted => "shifted",
            BracketConvention::Literal => "literal",
        })
    }
}

impl FromStr for BracketConvention {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "shifted" => Ok(BracketConvention::Shifted),
            "literal" => Ok(BracketConvention::Literal),
            other => Err(Error::InvalidArgument(format!("unknown bracket convention `{other}`"))),
        }
    }
}

fn sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        rational(1)
    } else {
        rational(-1)
    }
}

/// Cup product, `λ` and the derived bracket over a Goldman bracket backend.
#[derive(Clone)]
pub struct BvAlgebra {
    backend: Arc<dyn BracketBackend>,
    signs: SignConfig,
    convention: BracketConvention,
}

impl BvAlgebra {
    pub fn new(backend: Arc<dyn BracketBackend>, signs: SignConfig) -> Self {
        BvAlgebra {
            backend,
            signs,
            convention: BracketConvention::default(),
        }
    }

    pub fn with_convention(mut self, convention: BracketConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn with_signs(&self, signs: SignConfig) -> Self {
        BvAlgebra {
            backend: Arc::clone(&self.backend),
            signs,
            convention: self.convention,
        }
    }

    pub fn genus(&self) -> usize {
        self.backend.genus()
    }

    pub fn signs(&self) -> SignConfig {
        self.signs
    }

    pub fn convention(&self) -> BracketConvention {
        self.convention
    }

    pub fn presentation(&self) -> &Presentation {
        self.backend.presentation()
    }

    pub fn backend(&self) -> &dyn BracketBackend {
        self.backend.as_ref()
    }

    fn check(&self, x: &BVElement) -> Result<()> {
        if x.genus != self.genus() {
            return Err(Error::GenusMismatch {
                left: x.genus,
                right: self.genus(),
            });
        }
        Ok(())
    }

    /// `(α,γ) ∪ (α′,γ′)`, an element of `L`.
    fn product_11(&self, x: &BVElement, y: &BVElement) -> Result<FormalSum> {
        let p = self.presentation();
        let g = self.genus();
        let s = |v: i8| rational(v as i64);
        let mut out = FormalSum::single(
            LoopClass::trivial(g),
            intersection_pairing(&x.h1_alpha, &y.h1_alpha)? * s(self.signs.s1),
        );
        out = out.add(&loop_h1_pairing(p, &y.h1_alpha, &x.h1_loops)?.scale(&s(self.signs.s2)))?;
        out = out.add(&loop_h1_pairing(p, &x.h1_alpha, &y.h1_loops)?.scale(&s(self.signs.s3)))?;
        out = out.add(&self.backend.bracket(&x.h1_loops, &y.h1_loops)?.scale(&s(self.signs.s4)))?;
        Ok(out)
    }

    pub fn cup(&self, x: &BVElement, y: &BVElement) -> Result<BVElement> {
        self.check(x)?;
        self.check(y)?;
        let (a, b) = (&x.h0, &y.h0);
        Ok(BVElement {
            genus: x.genus,
            h0: a * b,
            h1_alpha: y.h1_alpha.scale(a).add(&x.h1_alpha.scale(b))?,
            h1_loops: y.h1_loops.scale(a).add(&x.h1_loops.scale(b))?,
            h2: y.h2.scale(a).add(&x.h2.scale(b))?.add(&self.product_11(x, y)?)?,
        })
    }

    /// `λ`: zero outside `HH²`, where it drops the `γ₀` term and lands in `HH¹`.
    pub fn delta(&self, x: &BVElement) -> Result<BVElement> {
        self.check(x)?;
        Ok(bv_delta(x))
    }

    /// The bracket generated by `λ`, extended bilinearly over homogeneous parts.
    pub fn gerstenhaber(&self, x: &BVElement, y: &BVElement) -> Result<BVElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = BVElement::zero(x.genus);
        for (i, xi) in x.components() {
            for (_, yj) in y.components() {
                let mut p = bv_delta(&self.cup(&xi, &yj)?)
                    .sub(&self.cup(&bv_delta(&xi), &yj)?)?
                    .sub(&self.cup(&xi, &bv_delta(&yj))?.scale(&sign(i)))?;
                if self.convention == BracketConvention::Shifted && i % 2 == 0 {
                    p = p.neg();
                }
                out = out.add(&p)?;
            }
        }
        Ok(out)
    }
}

/// `λ` without a genus check.
pub fn bv_delta(x: &BVElement) -> BVElement {
    BVElement {
        h1_loops: x.h2.without_trivial(),
        ..BVElement::zero(x.genus)
    }
}

/// Inputs and both sides of a failed identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub inputs: Vec<BVElement>,
    pub lhs: BVElement,
    pub rhs: BVElement,
}

/// Outcome of one axiom over all samples.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomResult {
    pub axiom: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub genus: usize,
    pub max_class_len: usize,
    pub samples: usize,
    pub seed: u64,
    pub signs: SignConfig,
    pub convention: BracketConvention,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(AxiomResult::passed)
    }

    pub fn result(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }
}

pub const AXIOMS: [&str; 6] = [
    "delta_squared",
    "graded_commutativity",
    "associativity",
    "graded_antisymmetry",
    "graded_jacobi",
    "graded_leibniz",
];

struct Tally {
    results: Vec<AxiomResult>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            results: AXIOMS
                .iter()
                .map(|&axiom| AxiomResult {
                    axiom,
                    checks: 0,
                    failures: 0,
                    counterexample: None,
                })
                .collect(),
        }
    }

    fn record(&mut self, axiom: usize, inputs: &[&BVElement], lhs: BVElement, rhs: BVElement) {
        let r = &mut self.results[axiom];
        r.checks += 1;
        if lhs != rhs {
            r.failures += 1;
            if r.counterexample.is_none() {
                r.counterexample = Some(Counterexample {
                    inputs: inputs.iter().map(|e| (*e).clone()).collect(),
                    lhs,
                    rhs,
                });
            }
        }
    }
}

/// Classes available to the sampler: all classes up to `max_class_len`.
fn class_pool(presentation: &Presentation, max_class_len: usize) -> Result<Vec<LoopClass>> {
    presentation.enumerate_classes(max_class_len as i64)
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    ratio(n, rng.gen_range(1..=2))
}

fn random_sum(rng: &mut ChaCha8Rng, genus: usize, pool: &[LoopClass], max_terms: usize) -> FormalSum {
    let mut s = FormalSum::zero(genus);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let c = pool[rng.gen_range(0..pool.len())].clone();
        s.add_term(c, random_coeff(rng));
    }
    s
}

/// Pseudorandom element; `index` selects an independent ChaCha stream.
pub fn random_element(genus: usize, pool: &[LoopClass], seed: u64, index: u64) -> BVElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let h0 = if rng.gen_bool(0.7) { random_coeff(&mut rng) } else { Rational::zero() };
    let alpha: Vec<Rational> = (0..2 * genus)
        .map(|_| if rng.gen_bool(0.5) { random_coeff(&mut rng) } else { Rational::zero() })
        .collect();
    let nontrivial: Vec<LoopClass> = pool.iter().filter(|c| !c.is_trivial()).cloned().collect();
    let loops = if nontrivial.is_empty() { FormalSum::zero(genus) } else { random_sum(&mut rng, genus, &nontrivial, 2) };
    let h2 = random_sum(&mut rng, genus, pool, 2);
    BVElement::new(h0, H1Class::new(alpha).expect("2g coordinates"), loops, h2).expect("consistent genus")
}

/// Small structured elements checked before the random ones, so that failures
/// come with readable witnesses.
pub fn probe_elements(presentation: &Presentation) -> Vec<BVElement> {
    let g = presentation.genus();
    let class = |text: &str| LoopClass::parse(text, presentation).expect("valid probe class");
    let (a1, b1) = if g == 1 { ("(1,0)", "(0,1)") } else { ("a1", "b1") };
    let basis = |text: &str| FormalSum::basis(class(text));
    vec![
        BVElement::degree_one(H1Class::unit(g, 0), FormalSum::zero(g)).expect("genus"),
        BVElement::degree_one(H1Class::zero(g), basis(b1)).expect("genus"),
        BVElement::degree_one(H1Class::unit(g, 1), FormalSum::zero(g)).expect("genus"),
        BVElement::degree_one(H1Class::zero(g), basis(a1)).expect("genus"),
        BVElement::degree_two(basis(a1)),
        BVElement::degree_two(FormalSum::basis(LoopClass::trivial(g))),
        BVElement::unit(g),
    ]
}

/// Checks every axiom on homogeneous components of triples drawn from the
/// probe elements followed by `samples` random elements.
pub fn verify_axioms(algebra: &BvAlgebra, max_class_len: usize, samples: usize, seed: u64) -> Result<AxiomReport> {
    let presentation = algebra.presentation();
    let genus = presentation.genus();
    let pool = class_pool(presentation, max_class_len)?;
    let probes = probe_elements(presentation);
    let randoms: Vec<BVElement> = (0..samples as u64).map(|i| random_element(genus, &pool, seed, i)).collect();

    let mut tally = Tally::new();
    // probes pairwise (triples use a fixed third probe), then random consecutive triples
    let mut triples: Vec<(&BVElement, &BVElement, &BVElement)> = Vec::new();
    for (i, x) in probes.iter().enumerate() {
        for y in &probes {
            triples.push((x, y, &probes[(i + 1) % probes.len()]));
        }
    }
    for i in 0..randoms.len() {
        let n = randoms.len();
        triples.push((&randoms[i], &randoms[(i + 1) % n], &randoms[(i + 2) % n]));
    }
    for (x, y, z) in triples {
        check_triple(algebra, &mut tally, x, y, z)?;
    }
    Ok(AxiomReport {
        genus,
        max_class_len,
        samples,
        seed,
        signs: algebra.signs(),
        convention: algebra.convention(),
        results: tally.results,
    })
}

fn check_triple(algebra: &BvAlgebra, tally: &mut Tally, x: &BVElement, y: &BVElement, z: &BVElement) -> Result<()> {
    let cup = |a: &BVElement, b: &BVElement| algebra.cup(a, b);
    let br = |a: &BVElement, b: &BVElement| algebra.gerstenhaber(a, b);
    let zero = BVElement::zero(x.genus());

    tally.record(0, &[x], bv_delta(&bv_delta(x)), zero.clone());
    for (i, xi) in x.components() {
        for (j, yj) in y.components() {
            // x ∪ y = (−1)^{|x||y|} y ∪ x
            tally.record(1, &[&xi, &yj], cup(&xi, &yj)?, cup(&yj, &xi)?.scale(&sign(i * j)));
            // [x, y] = −(−1)^{(|x|−1)(|y|−1)} [y, x]
            let shifted = (i + 1) * (j + 1); // parity of (i−1)(j−1)
            tally.record(3, &[&xi, &yj], br(&xi, &yj)?, br(&yj, &xi)?.scale(&sign(shifted)).neg());
            for (k, zk) in z.components() {
                let (xy, yz) = (cup(&xi, &yj)?, cup(&yj, &zk)?);
                tally.record(2, &[&xi, &yj, &zk], cup(&xy, &zk)?, cup(&xi, &yz)?);
                // Σ_cyclic (−1)^{(|x|−1)(|z|−1)} [x, [y, z]] = 0
                let jac = br(&xi, &br(&yj, &zk)?)?
                    .scale(&sign((i + 1) * (k + 1)))
                    .add(&br(&yj, &br(&zk, &xi)?)?.scale(&sign((j + 1) * (i + 1))))?
                    .add(&br(&zk, &br(&xi, &yj)?)?.scale(&sign((k + 1) * (j + 1))))?;
                tally.record(4, &[&xi, &yj, &zk], jac, zero.clone());
                // [x, y ∪ z] = [x, y] ∪ z + (−1)^{(|x|−1)|y|} y ∪ [x, z]
                let rhs = cup(&br(&xi, &yj)?, &zk)?.add(&cup(&yj, &br(&xi, &zk)?)?.scale(&sign((i + 1) * j)))?;
                tally.record(5, &[&xi, &yj, &zk], br(&xi, &yz)?, rhs);
            }
        }
    }
    Ok(())
}

/// The outcome of testing all sixteen sign configurations.
#[derive(Clone, Debug)]
pub struct SignResolution {
    /// Configurations passing every axiom, in enumeration order.
    pub passing: Vec<SignConfig>,
    /// The passing configuration with fewest minus signs (first in enumeration order on ties).
    pub default: SignConfig,
    pub reports: Vec<AxiomReport>,
}

pub fn resolve_signs(algebra: &BvAlgebra, max_class_len: usize, samples: usize, seed: u64) -> Result<SignResolution> {
    let mut reports = Vec::with_capacity(16);
    for signs in SignConfig::all() {
        reports.push(verify_axioms(&algebra.with_signs(signs), max_class_len, samples, seed)?);
    }
    let passing: Vec<SignConfig> = reports.iter().filter(|r| r.passed()).map(|r| r.signs).collect();
    let default = *passing.iter().min_by_key(|s| s.flips()).ok_or(Error::NoPassingSigns)?;
    Ok(SignResolution {
        passing,
        default,
        reports,
    })
}
