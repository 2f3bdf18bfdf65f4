use thiserror::Error;

/// Errors produced by the engine.
///
/// Each variant corresponds to a violated precondition of one of the
/// operations; messages are forwarded verbatim by the document parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomial is not homogeneous of degree {degree}")]
    NotHomogeneous { degree: usize },

    #[error("inner map has a nonzero constant term; truncated composition is ill-defined")]
    ConstantTerm,

    #[error("linear part of the map is not the identity")]
    NotNearIdentity,

    #[error("group is not finite within bound {bound}")]
    NotFinite { bound: usize },

    #[error("σ is not a homomorphism: element {element} receives two different signs")]
    NotHomomorphism { element: String },

    #[error("generator {index} has a singular matrix")]
    SingularGenerator { index: usize },

    #[error("sign must be +1 or -1, found {0}")]
    InvalidSign(i64),

    #[error("input is not invariant/equivariant under the symmetry subgroup element {element}")]
    NotPlusInvariant { element: String },

    #[error("σ is trivial: operation requires a reversing symmetry")]
    TrivialSigma,

    #[error("linear part is incompatible with group generator {index}: γLγ⁻¹ ≠ σ(γ)L")]
    Incompatible { index: usize },

    #[error("n1 = {n1} and n2 = {n2} are not coprime; reduce the ratio to lowest terms")]
    NotCoprime { n1: u32, n2: u32 },

    #[error("invalid resonance parameters: {0}")]
    InvalidResonance(String),

    #[error("degree {k} exceeds the validity bound {bound} of the nonresonant surrogate")]
    BeyondSurrogateBound { k: usize, bound: usize },

    #[error("slices do not match: {0}")]
    SliceMismatch(String),

    #[error("variable blocks overlap or exceed the ambient dimension")]
    OverlappingBlocks,

    #[error("linear system is inconsistent at degree {k}: field is not reversible-equivariant or L is incompatible")]
    Inconsistent { k: usize },

    #[error("linear part mismatch: degree-1 part of the field differs from L")]
    LinearPartMismatch,

    #[error("vector field has a nonzero constant term")]
    FieldConstantTerm,

    #[error("vector field is not reversible-equivariant at degree {degree} under generator {index}")]
    FieldNotReversible { degree: usize, index: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}, column {column}: {source}")]
    Located {
        line: usize,
        column: usize,
        source: Box<Error>,
    },

    #[error("invalid coefficient {0:?}: expected \"p/q\"")]
    Coefficient(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
