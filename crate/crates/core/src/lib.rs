//! Goldman bracket of free loops on closed oriented surfaces, and the BV
//! algebra structure on the Hochschild cohomology of surface group algebras.

pub mod bv;
pub mod error;
pub mod formal;
pub mod fuchsian;
pub mod goldman;
pub mod schema;
pub mod surface;
pub mod svg;
pub mod word;

pub use bv::{
    resolve_signs, verify_axioms, AxiomReport, BVElement, BracketConvention, BvAlgebra, SignConfig, SignResolution,
};
pub use error::{Error, Result};
pub use formal::{FormalSum, Rational};
pub use fuchsian::{axes_cross, axis, axis_position, crossing_sign, BoundaryPoint, Geodesic, MobiusMap, Representation};
pub use goldman::{
    backend, goldman_bracket, intersection_pairing, loop_h1_pairing, torus_bracket, torus_bracket_oracle, BracketBackend,
    BracketConfig, SurfaceBracket, TorusBracket,
};
pub use surface::{H1Class, LoopClass, Presentation};
pub use word::{CyclicWord, Letter, Word};
