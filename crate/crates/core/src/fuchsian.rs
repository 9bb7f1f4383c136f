//! A discrete faithful representation of the surface group into `PSL(2,R)`,
//! built from the side pairings of the regular `4g`-gon, together with the
//! hyperbolic-geometry predicates the geometric bracket needs.
//!
//! Everything lives in the upper half-plane; the basepoint is `i`. Boundary
//! points are kept in homogeneous coordinates so that infinity needs no
//! special case, and cyclic order on the boundary is read off after the
//! Cayley transform `t -> (t - i)/(t + i)`.

use std::f64::consts::PI;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::surface::Presentation;
use crate::word::{Letter, Word};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `t -> (a t + b)/(c t + d)` with `ad - bc = 1`, up to global sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MobiusMap {
    pub const IDENTITY: MobiusMap = MobiusMap {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        MobiusMap { a, b, c, d }
    }

    /// Hyperbolic translation along the imaginary axis by `length`.
    pub fn translation(length: f64) -> Self {
        let h = (length / 2.0).exp();
        MobiusMap::new(h, 0.0, 0.0, 1.0 / h)
    }

    /// Counterclockwise rotation by `angle` about `i`.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = (angle / 2.0).sin_cos();
        MobiusMap::new(c, s, -s, c)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Self {
        MobiusMap::new(self.d, -self.b, -self.c, self.a)
    }

    /// Flips the global sign so the trace is non-negative (when it is not ~0).
    pub fn normalized(self) -> Self {
        if self.trace() < -DEFAULT_TOLERANCE {
            MobiusMap::new(-self.a, -self.b, -self.c, -self.d)
        } else {
            self
        }
    }

    pub fn conjugate_by(&self, h: &MobiusMap) -> Self {
        *h * *self * h.inverse()
    }

    /// Largest entrywise distance, minimized over the projective sign.
    pub fn projective_distance(&self, other: &MobiusMap) -> f64 {
        let plus = (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs());
        let minus = (self.a + other.a)
            .abs()
            .max((self.b + other.b).abs())
            .max((self.c + other.c).abs())
            .max((self.d + other.d).abs());
        plus.min(minus)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.projective_distance(&MobiusMap::IDENTITY) < tol
    }

    pub fn apply(&self, p: BoundaryPoint) -> BoundaryPoint {
        BoundaryPoint::from_homogeneous(self.a * p.x + self.b * p.y, self.c * p.x + self.d * p.y)
    }

    /// Hyperbolic distance from `i` to its image.
    pub fn displacement(&self) -> f64 {
        let s = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d;
        (s / 2.0).max(1.0).acosh()
    }

    /// Image of the point `i`, as `(re, im)`.
    pub fn apply_to_basepoint(&self) -> (f64, f64) {
        let den = self.c * self.c + self.d * self.d;
        ((self.a * self.c + self.b * self.d) / den, 1.0 / den)
    }
}

impl Mul for MobiusMap {
    type Output = MobiusMap;

    fn mul(self, o: MobiusMap) -> MobiusMap {
        MobiusMap::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// A point of `R ∪ {∞}` in normalized homogeneous coordinates `[x : y]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    x: f64,
    y: f64,
}

impl BoundaryPoint {
    pub const INFINITY: BoundaryPoint = BoundaryPoint { x: 1.0, y: 0.0 };

    pub fn finite(t: f64) -> Self {
        if t.is_infinite() {
            return BoundaryPoint::INFINITY;
        }
        BoundaryPoint::from_homogeneous(t, 1.0)
    }

    fn from_homogeneous(x: f64, y: f64) -> Self {
        let n = x.hypot(y);
        let (x, y) = (x / n, y / n);
        if y < 0.0 || (y == 0.0 && x < 0.0) {
            BoundaryPoint { x: -x, y: -y }
        } else {
            BoundaryPoint { x, y }
        }
    }

    /// The extended real value; `f64::INFINITY` for `∞`.
    pub fn value(&self) -> f64 {
        if self.y == 0.0 {
            f64::INFINITY
        } else {
            self.x / self.y
        }
    }

    /// Angle in `(-π, π]` of the Cayley image on the unit circle.
    /// Increasing `t` runs counterclockwise; `∞` sits at angle 0.
    pub fn angle(&self) -> f64 {
        (-2.0 * self.x * self.y).atan2(self.x * self.x - self.y * self.y)
    }
}

/// The oriented axis of a hyperbolic isometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic {
    pub repelling: BoundaryPoint,
    pub attracting: BoundaryPoint,
    pub translation_length: f64,
}

impl Geodesic {
    pub fn new(repelling: f64, attracting: f64, translation_length: f64) -> Self {
        Geodesic {
            repelling: BoundaryPoint::finite(repelling),
            attracting: BoundaryPoint::finite(attracting),
            translation_length,
        }
    }

    pub fn reversed(&self) -> Self {
        Geodesic {
            repelling: self.attracting,
            attracting: self.repelling,
            translation_length: self.translation_length,
        }
    }

    pub fn image(&self, h: &MobiusMap) -> Self {
        Geodesic {
            repelling: h.apply(self.repelling),
            attracting: h.apply(self.attracting),
            translation_length: self.translation_length,
        }
    }

    /// Isometry taking this axis to `0 -> ∞`.
    pub fn straightening(&self) -> MobiusMap {
        let (r, a) = (self.repelling, self.attracting);
        let mut m = MobiusMap::new(r.y, -r.x, a.y, -a.x);
        let mut det = m.det();
        if det < 0.0 {
            m.a = -m.a;
            m.b = -m.b;
            det = -det;
        }
        let s = det.sqrt();
        MobiusMap::new(m.a / s, m.b / s, m.c / s, m.d / s)
    }

    /// Hyperbolic distance from `i` to the axis.
    pub fn distance_to_basepoint(&self) -> f64 {
        let (x, y) = self.straightening().apply_to_basepoint();
        // distance from x + iy to the imaginary axis
        (x.hypot(y) / y).acosh()
    }
}

/// Axis of a hyperbolic map: fixed points from the eigenvectors, the attracting
/// one belonging to the eigenvalue of larger modulus.
pub fn axis(m: &MobiusMap, tol: f64) -> Result<Geodesic> {
    let tr = m.trace();
    if tr.abs() <= 2.0 + tol {
        return Err(Error::NotHyperbolic { trace: tr.abs() });
    }
    let root = ((tr - 2.0) * (tr + 2.0)).sqrt();
    let big = (tr + tr.signum() * root) / 2.0;
    let small = 1.0 / big;
    let fixed = |lambda: f64| {
        // (b, λ - a) and (λ - d, c) are both eigenvectors; keep the better conditioned one
        let (x1, y1) = (m.b, lambda - m.a);
        let (x2, y2) = (lambda - m.d, m.c);
        if x1.hypot(y1) >= x2.hypot(y2) {
            BoundaryPoint::from_homogeneous(x1, y1)
        } else {
            BoundaryPoint::from_homogeneous(x2, y2)
        }
    };
    Ok(Geodesic {
        repelling: fixed(small),
        attracting: fixed(big),
        translation_length: 2.0 * (tr.abs() / 2.0).acosh(),
    })
}

/// Outcome of the crossing predicate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossingTest {
    pub crosses: bool,
    /// Some pair of endpoints is closer than the tolerance.
    pub degenerate: bool,
    /// Both endpoint pairs coincide: the same geodesic, possibly reversed.
    pub same_axis: bool,
    /// Smallest angular gap between an endpoint of one axis and one of the other.
    pub margin: f64,
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Counterclockwise angular position of `t` measured from `from`, in `[0, 2π)`.
fn ccw_from(from: f64, t: f64) -> f64 {
    (t - from).rem_euclid(2.0 * PI)
}

pub fn axes_cross(g1: &Geodesic, g2: &Geodesic, tol: f64) -> CrossingTest {
    let (r1, a1) = (g1.repelling.angle(), g1.attracting.angle());
    let (r2, a2) = (g2.repelling.angle(), g2.attracting.angle());
    let gaps = [angle_gap(r1, r2), angle_gap(r1, a2), angle_gap(a1, r2), angle_gap(a1, a2)];
    let margin = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let same_axis = (gaps[0] < tol && gaps[3] < tol) || (gaps[1] < tol && gaps[2] < tol);
    if margin < tol {
        return CrossingTest {
            crosses: false,
            degenerate: true,
            same_axis,
            margin,
        };
    }
    let arc = ccw_from(r1, a1);
    let inside = |t: f64| ccw_from(r1, t) < arc;
    CrossingTest {
        crosses: inside(r2) != inside(a2),
        degenerate: false,
        same_axis: false,
        margin,
    }
}

/// Sign of a crossing: `+1` when, reading the boundary counterclockwise from the
/// repelling end of `g1`, the attracting end of `g2` comes before the repelling end
/// of `g2`. Under this rule `(0 -> ∞)` against `(-1 -> 1)` is `+1`.
pub fn crossing_sign(g1: &Geodesic, g2: &Geodesic, tol: f64) -> Result<i32> {
    let test = axes_cross(g1, g2, tol);
    if !test.crosses {
        return Err(Error::NotCrossing);
    }
    let r1 = g1.repelling.angle();
    let r2 = ccw_from(r1, g2.repelling.angle());
    let a2 = ccw_from(r1, g2.attracting.angle());
    Ok(if a2 < r2 { 1 } else { -1 })
}

/// Signed distance along `g1`, from the foot of the perpendicular dropped from `i`
/// to the point where `other` crosses it.
pub fn axis_position(g1: &Geodesic, other: &Geodesic, tol: f64) -> Result<f64> {
    if !axes_cross(g1, other, tol).crosses {
        return Err(Error::NotCrossing);
    }
    let s = g1.straightening();
    let u = s.apply(other.repelling).value();
    let v = s.apply(other.attracting).value();
    let height = (-u * v).sqrt();
    let (x, y) = s.apply_to_basepoint();
    Ok((height / x.hypot(y)).ln())
}

/// Images of the surface generators.
#[derive(Clone, Debug)]
pub struct Representation {
    genus: usize,
    /// Indexed by [`Letter::index`]: generator then inverse.
    images: Vec<MobiusMap>,
    tolerance: f64,
    circumradius: f64,
}

/// Invariant check results for `rep-check`.
#[derive(Clone, Debug)]
pub struct RepresentationCheck {
    pub genus: usize,
    pub relator_error: f64,
    pub words_checked: usize,
    pub min_abs_trace: f64,
    pub max_length: usize,
    pub passed: bool,
}

impl Representation {
    /// Side pairings of the regular `4g`-gon with interior angles `2π/4g` centred at `i`.
    /// Side `4(k-1)+2` is glued to side `4(k-1)` by `ak` and side `4(k-1)+1` to side
    /// `4(k-1)+3` by `bk`, which yields the relator `[a1,b1]...[ag,bg]`.
    pub fn build(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::Unsupported(format!(
                "the Fuchsian representation needs genus >= 2, got {genus}"
            )));
        }
        let n = 4 * genus;
        let step = 2.0 * PI / n as f64;
        // inradius of the regular n-gon with interior angle 2π/n
        let inradius = (1.0 / (PI / n as f64).tan()).acosh();
        let circumradius = ((1.0 / (PI / n as f64).tan()).powi(2)).acosh();
        // Orientation-reversing maps compose as plain real matrices with det -1.
        let side_reflection = |k: usize| {
            let rot = MobiusMap::rotation(step * k as f64);
            let inversion = MobiusMap::new(0.0, inradius.exp(), (-inradius).exp(), 0.0);
            rot * inversion * rot.inverse()
        };
        let line_reflection = |phi: f64| {
            let rot = MobiusMap::rotation(phi);
            rot * MobiusMap::new(-1.0, 0.0, 0.0, 1.0) * rot.inverse()
        };
        // two reflections compose to an orientation-preserving map (det +1)
        let pairing = |k: usize| {
            let m = side_reflection((k + 2) % n) * line_reflection(step * (k + 1) as f64);
            let s = m.det().sqrt();
            MobiusMap::new(m.a / s, m.b / s, m.c / s, m.d / s)
        };
        let mut images = vec![MobiusMap::IDENTITY; 4 * genus];
        for k in 1..=genus {
            let a = pairing(4 * (k - 1)).inverse().normalized();
            let b = pairing(4 * (k - 1) + 1).normalized();
            images[Letter::a(k).index()] = a;
            images[Letter::a(k).inv().index()] = a.inverse();
            images[Letter::b(k).index()] = b;
            images[Letter::b(k).inv().index()] = b.inverse();
        }
        let rep = Representation {
            genus,
            images,
            tolerance: DEFAULT_TOLERANCE,
            circumradius,
        };
        let presentation = Presentation::new(genus)?;
        let err = rep.evaluate(&presentation.relator()).projective_distance(&MobiusMap::IDENTITY);
        if err >= rep.tolerance {
            return Err(Error::Degenerate(format!(
                "relator image is {err:e} away from the identity"
            )));
        }
        Ok(rep)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// Circumradius of the fundamental polygon.
    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    pub fn image(&self, l: Letter) -> MobiusMap {
        self.images[l.index()]
    }

    pub fn evaluate(&self, w: &Word) -> MobiusMap {
        self.evaluate_letters(w.letters())
    }

    pub fn evaluate_letters(&self, letters: &[Letter]) -> MobiusMap {
        letters
            .iter()
            .fold(MobiusMap::IDENTITY, |acc, &l| acc * self.images[l.index()])
            .normalized()
    }

    /// Checks the relator and that every nontrivial reduced word up to `max_length`
    /// is hyperbolic.
    pub fn check(&self, max_length: usize) -> RepresentationCheck {
        let presentation = Presentation::new(self.genus).expect("genus >= 2");
        let relator_error = self
            .evaluate(&presentation.relator())
            .projective_distance(&MobiusMap::IDENTITY);
        let alphabet = 4 * self.genus;
        let mut min_abs_trace = f64::INFINITY;
        let mut words_checked = 0usize;
        let mut frontier: Vec<(Letter, MobiusMap)> = (0..alphabet)
            .map(|i| (Letter::from_index(i), self.images[i]))
            .collect();
        for len in 1..=max_length {
            let mut next = Vec::new();
            for &(last, m) in &frontier {
                words_checked += 1;
                min_abs_trace = min_abs_trace.min(m.trace().abs());
                if len == max_length {
                    continue;
                }
                for i in 0..alphabet {
                    let l = Letter::from_index(i);
                    if l.is_inverse_of(last) {
                        continue;
                    }
                    next.push((l, m * self.images[i]));
                }
            }
            frontier = next;
        }
        RepresentationCheck {
            genus: self.genus,
            relator_error,
            words_checked,
            min_abs_trace,
            max_length,
            passed: relator_error < self.tolerance && min_abs_trace > 2.0 + self.tolerance,
        }
    }
}
