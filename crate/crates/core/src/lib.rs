//! Exact Scarf neighbor complexes.
//!
//! For `A ⊆ Q^n`, the neighbor complex `Nb(A)` consists of the finite
//! subsets `B ⊆ A` with no point of `A` strictly below their join. This
//! crate enumerates `Nb(A)` for finite sets, computes neighbors, stars and
//! quotient complexes of periodic subsets of `Z^n` (finite unions of cosets
//! of a lattice meeting the nonnegative orthant only in 0), and builds the
//! Scarf resolution of a generic monomial ideal.

pub mod cli;
pub mod complexes;
pub mod diophantine;
pub mod error;
pub mod finite;
pub mod geometry;
pub mod oracle;
pub mod periodic;
pub mod posets;
pub mod resolution;

pub use error::{Error, Result};
pub use geometry::Point;
