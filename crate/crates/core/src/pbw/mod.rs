//! The truncated universal enveloping algebra `U(𝔫)`: adapted filtrations,
//! order and length functions, PBW normal forms and derivation actions.

mod context;
mod element;
mod filtration;

pub use context::{squeeze_level, PbwContext, Straightener};
pub use element::{Monomial, UeaElement};
pub use filtration::AdaptedFiltration;

use crate::lie::LieError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PbwError {
    #[error("filtration is not adapted: {0}")]
    NotAdapted(String),
    #[error("no basis makes every filtration term and the ideal a basis suffix")]
    BasisAlignmentImpossible,
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl PbwError {
    pub fn class(&self) -> &'static str {
        match self {
            PbwError::NotAdapted(_) => "NotAdapted",
            PbwError::BasisAlignmentImpossible => "BasisAlignmentImpossible",
            PbwError::Lie(e) => e.class(),
        }
    }
}
