//! Computer algebra for weighted projective lines of tubular type and the
//! elliptic plane curves attached to them.

pub mod error;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod coordinate_algebra;
pub mod string_group;
pub mod grading;
pub mod verification;
pub mod curve;
pub mod actions;
pub mod windowed;
pub mod checks;
pub mod report;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/string-groups.md")]
    mod string_groups {}
    #[doc = include_str!("../../../book/src/coordinate-algebras.md")]
    mod coordinate_algebras {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/actions.md")]
    mod actions {}
    #[doc = include_str!("../../../book/src/windowed-modules.md")]
    mod windowed_modules {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
