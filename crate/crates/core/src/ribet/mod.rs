//! Relation matrices `E`, `E′` for a Ribet-style shape, the ideals they cut
//! out in a formal coefficient ring, and numeric specializations over `𝔽_p`.

pub mod formal;
pub mod shape;
pub mod special;

use thiserror::Error;

pub use crate::fp;
use crate::exactpoly::PolyError;
use crate::groebner::GroebnerError;

pub use formal::{build_ideals, build_matrices, FormalRing, RelationMatrices, RibetIdeals};
pub use shape::{RibetShape, RowSpec, ShapeSpec};
pub use special::{
    check_specialized, generate_specialization, generate_specialization_with, SpecializedChecks,
    SpecializedInstance,
};

#[derive(Debug, Error)]
pub enum RibetError {
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("no admissible specialization for seed {seed} after {attempts} draws")]
    GenerationFailure { seed: u64, attempts: u32 },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
