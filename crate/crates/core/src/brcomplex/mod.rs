//! Free chain complexes over polynomial rings: Koszul and Buchsbaum–Rim
//! complexes, tensor products, exactness evidence, regularity criteria and
//! the comparison map between the resolutions of `R/J′` and `R/J`.

pub mod br;
pub mod complex;
pub mod morphism;
pub mod regular;

use thiserror::Error;

use crate::exactpoly::PolyError;
use crate::groebner::GroebnerError;
use crate::ribet::RibetError;

pub use br::{br_complexes, br_complexes_with, d_ijk, BrComplexes};
pub use complex::{
    check_d2, homology_at_point, homology_at_random_points, koszul, symbolic_h1, tensor,
    tensor_morphism, ComplexMorphism, ComplexRecord, FreeComplex, H1Report,
};
pub use morphism::{build_cd_morphism, build_cd_morphism_for, CdMorphism};
pub use regular::{regular_sequence_check, regularity_check};

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("timeout: {0}")]
    Timeout(String),
    #[error("invalid complex: {0}")]
    Invariant(String),
    #[error(transparent)]
    Groebner(GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ribet(#[from] RibetError),
}

impl From<GroebnerError> for ComplexError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::Timeout(m) => ComplexError::Timeout(m),
            other => ComplexError::Groebner(other),
        }
    }
}
