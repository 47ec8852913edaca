//! Exact computations with standard graded Artinian algebras: Gröbner
//! bases, Hilbert functions, Betti tables, canonical modules, resolutions
//! over the algebra, and idealization by the canonical module.
//!
//! The guide in `book/` walks through the API; its code blocks run as
//! doc-tests of this crate.

pub mod algebra;
pub mod check;
pub mod constructions;
pub mod error;
pub mod field;
pub mod grading;
pub mod homology;
pub mod idealization;
pub mod lefschetz;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod reproduce;
pub mod series;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};

// Chapters of the guide, compiled as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/idealization.md")]
    mod idealization {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
}
