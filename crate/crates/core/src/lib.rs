//! Exact constructions and exhaustive verification of blocking sets in
//! finite projective spaces, built on field reduction between
//! `PG(n-1, q^t)` and `PG(nt-1, q)`.

pub mod blocking;
pub mod construct;
pub mod error;
pub mod format;
pub mod gf;
pub mod pg;
pub mod spread;

pub use error::{Error, Result};
pub use gf::{ArithOp, Elem, ExtensionSpec, Field};
pub use pg::{PointSet, ProjPoint, ProjSpace, Subspace};
