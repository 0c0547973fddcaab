//! Exact computations for invariant stability conditions on local P¹×P¹.
//!
//! The crate is organised bottom-up:
//!
//! * [`k_lattice`]: the lattice `K_0 ≅ Z⁴`, its quotient and the induced automorphisms.
//! * [`charge`]: exact central charges, phase comparison, `H^reg`.
//! * [`geometry_oracle`]: line-bundle cohomology on P¹ and P¹×P¹.
//! * [`kronecker`]: representations of the Kronecker quiver.
//! * [`hearts`]: hearts, simple and double tilts.
//! * [`chambers`]: the normalized slice, stable catalogs and path lifting.
//!
//! All decisions are made with rational arithmetic; floating point only
//! appears in SVG coordinates.

pub mod chambers;
pub mod charge;
pub mod error;
pub mod exact;
pub mod geometry_oracle;
pub mod hearts;
pub mod k_lattice;
pub mod kronecker;
pub mod verify;

pub use error::{Error, Result};

/// The user guide from `book/`, compiled here so its examples run as doctests.
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    pub mod lattice {}
    #[doc = include_str!("../../../book/src/charges.md")]
    pub mod charges {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    pub mod geometry {}
    #[doc = include_str!("../../../book/src/kronecker.md")]
    pub mod kronecker {}
    #[doc = include_str!("../../../book/src/hearts.md")]
    pub mod hearts {}
    #[doc = include_str!("../../../book/src/chambers.md")]
    pub mod chambers {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
