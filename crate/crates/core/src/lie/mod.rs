//! Lie algebras by structure constants, their representations, and
//! semidirect decompositions `𝔤 = 𝔡 ⋉ 𝔫`.

mod algebra;
mod representation;
mod semidirect;

pub use algebra::{AbelianSplit, LieAlgebra, Terms};
pub use representation::{verify_representation, Representation, Verification};
pub use semidirect::{affine_embed, extend_by_derivation, Part, SemidirectData};

/// Indices in messages are 1-based, matching `x1 … xn`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("basis index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("bracket [x{0}, x{0}] cannot be specified")]
    DiagonalBracket(usize),
    #[error("Jacobi identity fails on (x{0}, x{1}, x{2})")]
    JacobiViolation(usize, usize, usize),
    #[error("algebra is not nilpotent: lower central series stabilizes at a nonzero term")]
    NotNilpotent,
    #[error("basis change matrix is singular")]
    SingularBasis,
    #[error("selected basis vectors do not span an ideal")]
    NotAnIdeal,
    #[error("complement basis vectors do not span a subalgebra")]
    NotASubalgebra,
    #[error("map to the semidirect product is not injective: outer element acting trivially (split off the abelian factor first)")]
    NotInjective,
    #[error("matrix is not a derivation")]
    NotDerivation,
    #[error("derivation is singular on the center")]
    CenterDegenerate,
    #[error("derivation action is not faithful")]
    NotFaithfulAction,
    #[error("expected {expected} matrices of size {size}, got {got}")]
    Shape {
        expected: usize,
        size: usize,
        got: String,
    },
}

impl LieError {
    pub fn class(&self) -> &'static str {
        match self {
            LieError::IndexOutOfRange(..) => "IndexOutOfRange",
            LieError::DiagonalBracket(_) => "DiagonalBracket",
            LieError::JacobiViolation(..) => "JacobiViolation",
            LieError::NotNilpotent => "NotNilpotent",
            LieError::SingularBasis => "SingularBasis",
            LieError::NotAnIdeal => "NotAnIdeal",
            LieError::NotASubalgebra => "NotASubalgebra",
            LieError::NotInjective => "NotInjective",
            LieError::NotDerivation => "NotDerivation",
            LieError::CenterDegenerate => "CenterDegenerate",
            LieError::NotFaithfulAction => "NotFaithfulAction",
            LieError::Shape { .. } => "ShapeMismatch",
        }
    }
}
