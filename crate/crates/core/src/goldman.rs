//! The Goldman bracket on the free vector space of free homotopy classes.
//!
//! On the torus the bracket has a closed form; a direct count of crossings of
//! straight lines serves as an independent check. For genus at least two the
//! bracket is computed from a hyperbolic structure: every crossing of the closed
//! geodesics of `x` and `y` lifts to a crossing of the axis of `x` with a
//! translate of the axis of `y`, and the loop product at that point is the class
//! of `x · h y h⁻¹`.

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::formal::{rational, FormalSum, Rational};
use crate::fuchsian::{axes_cross, axis, axis_position, crossing_sign, Geodesic, MobiusMap, Representation};
use crate::surface::{H1Class, LoopClass, Presentation};
use crate::word::{invert_letters, Letter, Word};

/// Search limits for the genus ≥ 2 bracket.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BracketConfig {
    /// Conjugator depth `N` of the first pass.
    pub max_conjugator_length: usize,
    /// The second pass runs at `N + stabilization_step`; both must agree.
    pub stabilization_step: usize,
    pub tolerance: f64,
}

impl Default for BracketConfig {
    fn default() -> Self {
        BracketConfig {
            max_conjugator_length: 8,
            stabilization_step: 2,
            tolerance: 1e-9,
        }
    }
}

impl BracketConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_conjugator_length == 0 {
            return Err(Error::InvalidArgument("max_conjugator_length must be at least 1".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1e-3) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must lie in (0, 1e-3), got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

fn torus_class(p: i64, q: i64) -> LoopClass {
    LoopClass::Torus { p, q }
}

fn torus_pair(c: &LoopClass) -> Result<(i64, i64)> {
    match c {
        LoopClass::Torus { p, q } => Ok((*p, *q)),
        other => Err(Error::GenusMismatch {
            left: other.genus(),
            right: 1,
        }),
    }
}

/// `[(p,q), (r,s)] = (ps − qr) · (p+r, q+s)`.
pub fn torus_bracket(x: (i64, i64), y: (i64, i64)) -> FormalSum {
    let (p, q) = x;
    let (r, s) = y;
    FormalSum::single(torus_class(p + r, q + s), rational(p * s - q * r))
}

/// The torus bracket computed by intersecting straight representatives.
///
/// `x` is the line `t·(p,q)` and `y` the line `o + u·(r,s)` in `R²/Z²`, with the
/// rational offset `o = (7, 3)/1000`. Every solution with `t, u ∈ [0,1)` is one
/// transversal intersection; its sign is the orientation of the frame
/// `((p,q), (r,s))` and its loop product is `(p+r, q+s)`. Arithmetic is exact:
/// everything is scaled by the common denominator `1000·det`.
pub fn torus_bracket_oracle(x: (i64, i64), y: (i64, i64)) -> FormalSum {
    const SCALE: i64 = 1000;
    const OFFSET: (i64, i64) = (7, 3);
    let (p, q) = x;
    let (r, s) = y;
    let mut out = FormalSum::zero(1);
    if (p, q) == (0, 0) || (r, s) == (0, 0) {
        return out;
    }
    let cross = p * s - q * r;
    if cross == 0 {
        return out;
    }
    // t·(p,q) − u·(r,s) = o + (m,n); Cramer on [[p, −r], [q, −s]] with det = −cross
    let det = -cross;
    let in_unit = |num: i64| {
        let (num, den) = if det < 0 { (-num, -det * SCALE) } else { (num, det * SCALE) };
        0 <= num && num < den
    };
    let bound = p.abs() + q.abs() + r.abs() + s.abs() + 1;
    let mut count = 0i64;
    for m in -bound..=bound {
        for n in -bound..=bound {
            let (e1, e2) = (OFFSET.0 + SCALE * m, OFFSET.1 + SCALE * n);
            let t = -e1 * s + e2 * r;
            let u = e2 * p - e1 * q;
            if in_unit(t) && in_unit(u) {
                count += 1;
            }
        }
    }
    out.add_term(torus_class(p + r, q + s), rational(count * cross.signum()));
    out
}

/// Symplectic form with `⟨a_i, b_i⟩ = 1`.
pub fn intersection_pairing(alpha: &H1Class, beta: &H1Class) -> Result<Rational> {
    if alpha.genus() != beta.genus() {
        return Err(Error::GenusMismatch {
            left: alpha.genus(),
            right: beta.genus(),
        });
    }
    let (u, v) = (alpha.coords(), beta.coords());
    let mut total = Rational::zero();
    for i in 0..alpha.genus() {
        total += &u[2 * i] * &v[2 * i + 1] - &u[2 * i + 1] * &v[2 * i];
    }
    Ok(total)
}

/// `Σ c·⟨α, [w]⟩ [w]` for `γ = Σ c [w]`.
pub fn loop_h1_pairing(presentation: &Presentation, alpha: &H1Class, gamma: &FormalSum) -> Result<FormalSum> {
    gamma.weighted(|class| intersection_pairing(alpha, &presentation.abelianize_class(class)?))
}

/// Something that can bracket loop classes of a fixed genus.
pub trait BracketBackend: Send + Sync {
    fn presentation(&self) -> &Presentation;

    fn bracket_classes(&self, x: &LoopClass, y: &LoopClass) -> Result<FormalSum>;

    fn genus(&self) -> usize {
        self.presentation().genus()
    }

    /// Bilinear extension to formal sums.
    fn bracket(&self, x: &FormalSum, y: &FormalSum) -> Result<FormalSum> {
        check_genus(self.genus(), x.genus())?;
        check_genus(self.genus(), y.genus())?;
        let mut out = FormalSum::zero(self.genus());
        for (cx, vx) in x.iter() {
            for (cy, vy) in y.iter() {
                let b = self.bracket_classes(cx, cy)?;
                let coeff = vx * vy;
                for (c, v) in b.iter() {
                    out.add_term(c.clone(), v * &coeff);
                }
            }
        }
        Ok(out)
    }
}

fn check_genus(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::GenusMismatch {
            left: got,
            right: expected,
        });
    }
    Ok(())
}

/// Closed-form bracket on the torus.
#[derive(Clone, Debug)]
pub struct TorusBracket {
    presentation: Presentation,
}

impl TorusBracket {
    pub fn new() -> Self {
        TorusBracket {
            presentation: Presentation::new(1).expect("genus 1 is valid"),
        }
    }
}

impl Default for TorusBracket {
    fn default() -> Self {
        Self::new()
    }
}

impl BracketBackend for TorusBracket {
    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn bracket_classes(&self, x: &LoopClass, y: &LoopClass) -> Result<FormalSum> {
        Ok(torus_bracket(torus_pair(x)?, torus_pair(y)?))
    }
}

/// One crossing of the closed geodesics, as seen from the axis of `x`.
#[derive(Clone, Debug)]
pub struct Crossing {
    /// Signed distance along the axis of `x` from the foot of the perpendicular from `i`.
    pub position: f64,
    pub sign: i32,
    /// Conjugator `h`: the crossing lift of `y` is the axis of `h y h⁻¹`.
    pub conjugator: Word,
    /// That lift of the axis of `y`.
    pub lift: Geodesic,
    /// Class of the loop product at the crossing.
    pub product: LoopClass,
    /// Search depth at which the conjugator was found.
    pub depth: usize,
}

/// Everything the geometric computation saw for one pair of classes.
#[derive(Clone, Debug)]
pub struct BracketTrace {
    /// Axes of `x` and `y`; absent when the bracket vanishes without geometry.
    pub axes: Option<(Geodesic, Geodesic)>,
    /// Power of the primitive root of `y`; each crossing counts this many times.
    pub y_multiplicity: u32,
    pub crossings: Vec<Crossing>,
    pub depth: usize,
    pub result: FormalSum,
}

/// Genus ≥ 2 bracket over a fixed Fuchsian representation, memoized per class pair.
pub struct SurfaceBracket {
    presentation: Presentation,
    representation: Representation,
    config: BracketConfig,
    cache: Mutex<HashMap<(LoopClass, LoopClass), FormalSum>>,
}

impl SurfaceBracket {
    pub fn new(genus: usize, config: BracketConfig) -> Result<Self> {
        config.validate()?;
        let presentation = Presentation::new(genus)?;
        let representation = Representation::build(genus)?.with_tolerance(config.tolerance);
        Ok(SurfaceBracket {
            presentation,
            representation,
            config,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn config(&self) -> &BracketConfig {
        &self.config
    }

    pub fn representation(&self) -> &Representation {
        &self.representation
    }

    /// Runs the two passes and returns the crossings of the deeper one.
    pub fn trace(&self, x: &LoopClass, y: &LoopClass) -> Result<BracketTrace> {
        goldman_trace(x, y, &self.presentation, &self.representation, &self.config)
    }
}

impl BracketBackend for SurfaceBracket {
    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn bracket_classes(&self, x: &LoopClass, y: &LoopClass) -> Result<FormalSum> {
        let key = (x.clone(), y.clone());
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let value = goldman_bracket(x, y, &self.presentation, &self.representation, &self.config)?;
        self.cache.lock().expect("cache poisoned").insert(key, value.clone());
        Ok(value)
    }
}

/// Backend appropriate for the genus.
pub fn backend(genus: usize, config: BracketConfig) -> Result<Box<dyn BracketBackend>> {
    match genus {
        0 => Err(Error::InvalidArgument("genus must be at least 1".into())),
        1 => Ok(Box::new(TorusBracket::new())),
        g => Ok(Box::new(SurfaceBracket::new(g, config)?)),
    }
}

/// The Goldman bracket `[x, y]` of two classes.
pub fn goldman_bracket(
    x: &LoopClass,
    y: &LoopClass,
    presentation: &Presentation,
    representation: &Representation,
    config: &BracketConfig,
) -> Result<FormalSum> {
    if presentation.genus() == 1 {
        return Ok(torus_bracket(torus_pair(x)?, torus_pair(y)?));
    }
    Ok(goldman_trace(x, y, presentation, representation, config)?.result)
}

/// A group element reached by the conjugator search.
struct Node {
    matrix: MobiusMap,
    parent: usize,
    letter: Option<Letter>,
    depth: usize,
}

fn node_word(nodes: &[Node], mut i: usize) -> Vec<Letter> {
    let mut letters = Vec::with_capacity(nodes[i].depth);
    while let Some(l) = nodes[i].letter {
        letters.push(l);
        i = nodes[i].parent;
    }
    letters.reverse();
    letters
}

fn matrix_key(m: &MobiusMap) -> [i64; 4] {
    let m = m.normalized();
    let q = |v: f64| (v * 1e6).round() as i64;
    [q(m.a), q(m.b), q(m.c), q(m.d)]
}

/// Hyperbolic distance from `(u, v)` to the segment `{ i t : lo ≤ t ≤ hi }`.
fn distance_to_segment(u: f64, v: f64, lo: f64, hi: f64) -> f64 {
    let t = u.hypot(v).clamp(lo, hi);
    ((u * u + v * v + t * t) / (2.0 * v * t)).max(1.0).acosh()
}

/// Fixed orientation-preserving isometry used to re-examine marginal crossings.
fn jitter() -> MobiusMap {
    MobiusMap::rotation(0.731_592_5) * MobiusMap::translation(0.414_213_6) * MobiusMap::rotation(-1.902_113)
}

struct Candidate {
    position: f64,
    sign: i32,
    z: MobiusMap,
    lift: Geodesic,
    conjugator: Vec<Letter>,
    depth: usize,
}

pub fn goldman_trace(
    x: &LoopClass,
    y: &LoopClass,
    presentation: &Presentation,
    representation: &Representation,
    config: &BracketConfig,
) -> Result<BracketTrace> {
    config.validate()?;
    let genus = presentation.genus();
    if genus < 2 {
        return Err(Error::Unsupported("the geometric bracket needs genus >= 2".into()));
    }
    check_genus(genus, x.genus())?;
    check_genus(genus, y.genus())?;
    check_genus(genus, representation.genus())?;
    let tol = config.tolerance;

    let wx = x.representative();
    let wy = y.representative();
    if x.is_trivial() || y.is_trivial() || x == y {
        return Ok(BracketTrace {
            axes: None,
            y_multiplicity: 0,
            crossings: Vec::new(),
            depth: config.max_conjugator_length,
            result: FormalSum::zero(genus),
        });
    }
    let gx = representation.evaluate(&wx);
    let gy = representation.evaluate(&wy);
    let ax = axis(&gx, tol)?;
    let ay = axis(&gy, tol)?;
    let (_, multiplicity) = presentation.primitive_root(y)?;

    // The crossing window on the axis of x, in straightened coordinates.
    let straight = ax.straightening();
    let (bu, bv) = straight.apply_to_basepoint();
    let foot = bu.hypot(bv);
    let half = ax.translation_length / 2.0;
    let (lo, hi) = (foot * (-half).exp(), foot * half.exp());
    let from_segment = |m: &MobiusMap| {
        let (u, v) = (straight * *m).apply_to_basepoint();
        distance_to_segment(u, v, lo, hi)
    };
    // A crossing lift of y can be moved along its axis so that h·i is within
    // `reach` of the window; search tiles whose centers stay near the convex hull.
    let reach = ay.distance_to_basepoint() + ay.translation_length / 2.0;
    let radius = reach.max(from_segment(&MobiusMap::IDENTITY)) + representation.circumradius() + 1e-6;

    let deep = config.max_conjugator_length + config.stabilization_step;
    let mut nodes = vec![Node {
        matrix: MobiusMap::IDENTITY,
        parent: 0,
        letter: None,
        depth: 0,
    }];
    let mut seen: HashSet<[i64; 4]> = HashSet::new();
    seen.insert(matrix_key(&MobiusMap::IDENTITY));
    let mut level_start = 0;
    for depth in 1..=deep {
        let level_end = nodes.len();
        for i in level_start..level_end {
            for li in 0..4 * genus {
                let l = Letter::from_index(li);
                if nodes[i].letter.is_some_and(|prev| prev.is_inverse_of(l)) {
                    continue;
                }
                let m = nodes[i].matrix * representation.image(l);
                if from_segment(&m) > radius {
                    continue;
                }
                if seen.insert(matrix_key(&m)) {
                    nodes.push(Node {
                        matrix: m,
                        parent: i,
                        letter: Some(l),
                        depth,
                    });
                }
            }
        }
        level_start = level_end;
    }

    // Predicates run in the frame where the axis of x is `0 -> ∞` and the middle
    // of the window sits at `i`; lifts meeting the window are then near `i` and
    // their endpoints are well separated.
    let frame = MobiusMap::new(1.0 / foot.sqrt(), 0.0, 0.0, foot.sqrt()) * straight;
    let ax_f = ax.image(&frame);
    let (lo_f, hi_f) = ((-half).exp(), half.exp());
    let j = jitter();
    let gx_inv = gx.inverse();
    let wx_inv = invert_letters(wx.letters());
    let mut candidates: Vec<Candidate> = Vec::new();
    for (i, node) in nodes.iter().enumerate() {
        let h = node.matrix;
        let lift_f = ay.image(&(frame * h));
        let (u, v) = (lift_f.repelling.value().abs(), lift_f.attracting.value().abs());
        // a crossing sits at height sqrt(|uv|), between |u| and |v|
        if u.max(v) < 0.5 * lo_f || u.min(v) > 2.0 * hi_f {
            continue;
        }
        let mut test = axes_cross(&ax_f, &lift_f, tol);
        if test.same_axis {
            continue;
        }
        if test.margin < 10.0 * tol {
            test = axes_cross(&ax_f.image(&j), &lift_f.image(&j), tol);
            if test.same_axis {
                continue;
            }
            if test.margin < 10.0 * tol {
                return Err(Error::Degenerate(format!(
                    "axes of {} and a conjugate of {} are within {:.3e} of tangency",
                    wx, wy, test.margin
                )));
            }
        }
        if !test.crosses {
            continue;
        }
        let position = axis_position(&ax_f, &lift_f, tol)?;
        if position < -half - 1e-6 || position >= half + 1e-6 {
            continue;
        }
        let lift = ay.image(&h);
        let sign = crossing_sign(&ax_f, &lift_f, tol)?;
        let z = h * gy * h.inverse();
        let mut conjugator = node_word(&nodes, i);
        let (position, z, lift) = if position >= half - 1e-6 {
            // fold the upper edge of the window onto the lower one
            let mut shifted = wx_inv.clone();
            shifted.extend(conjugator);
            conjugator = shifted;
            (position - ax.translation_length, gx_inv * z * gx, lift.image(&gx_inv))
        } else {
            (position, z, lift)
        };
        candidates.push(Candidate {
            position,
            sign,
            z,
            lift,
            conjugator,
            depth: node.depth,
        });
    }
    candidates.sort_by(|a, b| a.position.total_cmp(&b.position).then(a.depth.cmp(&b.depth)));

    let pass = |limit: usize| -> Result<(FormalSum, Vec<Crossing>)> {
        let mut kept: Vec<&Candidate> = Vec::new();
        for c in candidates.iter().filter(|c| c.depth <= limit) {
            let duplicate = kept.iter().rev().take_while(|k| c.position - k.position < 1e-6).any(|k| {
                let scale = 1.0 + k.z.a.abs().max(k.z.b.abs()).max(k.z.c.abs()).max(k.z.d.abs());
                k.z.projective_distance(&c.z) < 1e-6 * scale
            });
            if !duplicate {
                kept.push(c);
            }
        }
        let mut sum = FormalSum::zero(genus);
        let mut crossings = Vec::with_capacity(kept.len());
        for c in kept {
            let mut letters = wx.letters().to_vec();
            letters.extend_from_slice(&c.conjugator);
            letters.extend_from_slice(wy.letters());
            letters.extend(invert_letters(&c.conjugator));
            let product = presentation.conjugacy_canonical(&Word::from_letters(genus, letters))?;
            sum.add_term(product.clone(), rational(c.sign as i64 * multiplicity as i64));
            crossings.push(Crossing {
                position: c.position,
                sign: c.sign,
                conjugator: Word::from_letters(genus, c.conjugator.clone()).free_reduce()?,
                lift: c.lift,
                product,
                depth: c.depth,
            });
        }
        Ok((sum, crossings))
    };

    let (shallow, _) = pass(config.max_conjugator_length)?;
    let (result, crossings) = pass(deep)?;
    if shallow != result {
        return Err(Error::NonStabilized {
            depth: config.max_conjugator_length,
            next_depth: deep,
            lower: Box::new(shallow),
            upper: Box::new(result),
        });
    }
    Ok(BracketTrace {
        axes: Some((ax, ay)),
        y_multiplicity: multiplicity,
        crossings,
        depth: deep,
        result,
    })
}

/// Sum of coefficients, compared against the intersection pairing.
pub fn homological_defect(
    presentation: &Presentation,
    x: &LoopClass,
    y: &LoopClass,
    bracket: &FormalSum,
) -> Result<Rational> {
    let expected = intersection_pairing(&presentation.abelianize_class(x)?, &presentation.abelianize_class(y)?)?;
    Ok(bracket.total() - expected)
}

/// Inputs and both sides of a failed bracket identity.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketWitness {
    pub inputs: Vec<LoopClass>,
    pub lhs: FormalSum,
    pub rhs: FormalSum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BracketCheck {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub counterexample: Option<BracketWitness>,
}

impl BracketCheck {
    fn new(name: &'static str) -> Self {
        BracketCheck {
            name,
            checks: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, inputs: &[&LoopClass], lhs: FormalSum, rhs: FormalSum) {
        self.checks += 1;
        if lhs != rhs {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(BracketWitness {
                    inputs: inputs.iter().map(|c| (*c).clone()).collect(),
                    lhs,
                    rhs,
                });
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldmanReport {
    pub genus: usize,
    pub max_class_len: usize,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<BracketCheck>,
}

impl GoldmanReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(BracketCheck::passed)
    }

    pub fn check(&self, name: &str) -> Option<&BracketCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Lie-algebra and consistency checks of the bracket.
///
/// Antisymmetry and the homological check run over all pairs of nontrivial
/// classes up to `max_class_len`; Jacobi over `samples` seeded triples (on the
/// torus, classes with `|p|, |q| ≤ 5`); representative independence re-derives
/// each class from a seeded random conjugate. The torus additionally compares
/// the closed form against the line-intersection count.
pub fn verify_goldman(
    backend: &dyn BracketBackend,
    max_class_len: usize,
    samples: usize,
    seed: u64,
) -> Result<GoldmanReport> {
    use rand::{Rng, SeedableRng};
    let presentation = backend.presentation();
    let genus = presentation.genus();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let classes: Vec<LoopClass> = presentation
        .enumerate_classes(max_class_len as i64)?
        .into_iter()
        .filter(|c| !c.is_trivial())
        .collect();
    let zero = FormalSum::zero(genus);
    let mut oracle = BracketCheck::new("torus_oracle");
    let mut anti = BracketCheck::new("antisymmetry");
    let mut homology = BracketCheck::new("homological_consistency");
    let mut jacobi = BracketCheck::new("jacobi");
    let mut independence = BracketCheck::new("representative_independence");

    if genus == 1 {
        for p in -5..=5 {
            for q in -5..=5 {
                for r in -5..=5 {
                    for s in -5..=5 {
                        let (x, y) = (torus_class(p, q), torus_class(r, s));
                        oracle.record(&[&x, &y], torus_bracket((p, q), (r, s)), torus_bracket_oracle((p, q), (r, s)));
                    }
                }
            }
        }
    }
    for x in &classes {
        for y in &classes {
            let xy = backend.bracket_classes(x, y)?;
            anti.record(&[x, y], xy.clone(), backend.bracket_classes(y, x)?.neg());
            let expected = intersection_pairing(&presentation.abelianize_class(x)?, &presentation.abelianize_class(y)?)?;
            homology.record(
                &[x, y],
                FormalSum::single(LoopClass::trivial(genus), xy.total()),
                FormalSum::single(LoopClass::trivial(genus), expected),
            );
        }
    }
    let pool: Vec<LoopClass> = if genus == 1 {
        (-5..=5)
            .flat_map(|p| (-5..=5).map(move |q| torus_class(p, q)))
            .filter(|c| !c.is_trivial())
            .collect()
    } else {
        classes.clone()
    };
    if !pool.is_empty() {
        for _ in 0..samples {
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| pool[rng.gen_range(0..pool.len())].clone();
            let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let (bx, by, bz) = (FormalSum::basis(x.clone()), FormalSum::basis(y.clone()), FormalSum::basis(z.clone()));
            let total = backend
                .bracket(&bx, &backend.bracket(&by, &bz)?)?
                .add(&backend.bracket(&by, &backend.bracket(&bz, &bx)?)?)?
                .add(&backend.bracket(&bz, &backend.bracket(&bx, &by)?)?)?;
            jacobi.record(&[&x, &y, &z], total, zero.clone());
        }
    }
    for x in classes.iter().take(samples.max(1)) {
        let u: Vec<Letter> = (0..rng.gen_range(1..=4))
            .map(|_| Letter::from_index(rng.gen_range(0..4 * genus)))
            .collect();
        let mut letters = u.clone();
        letters.extend_from_slice(x.representative().letters());
        letters.extend(invert_letters(&u));
        let x2 = presentation.conjugacy_canonical(&Word::from_letters(genus, letters).free_reduce()?)?;
        let y = &classes[rng.gen_range(0..classes.len())];
        independence.record(&[x, &x2, y], backend.bracket_classes(x, y)?, backend.bracket_classes(&x2, y)?);
    }

    let mut checks = Vec::new();
    if genus == 1 {
        checks.push(oracle);
    }
    checks.extend([anti, homology, jacobi, independence]);
    Ok(GoldmanReport {
        genus,
        max_class_len,
        samples,
        seed,
        checks,
    })
}
