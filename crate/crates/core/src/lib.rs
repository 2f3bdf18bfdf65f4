//! Exact formal normal forms of reversible-equivariant polynomial vector fields.

pub mod error;
pub mod group;
pub mod homological;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod normalform;
pub mod poly;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};

/// Exact rational coefficient.
pub type Coef = num::BigRational;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/homological.md")]
    mod homological {}
    #[doc = include_str!("../../../book/src/normal-forms.md")]
    mod normal_forms {}
    #[doc = include_str!("../../../book/src/resonant.md")]
    mod resonant {}
    #[doc = include_str!("../../../book/src/documents.md")]
    mod documents {}
}
