//! Finite-stage laboratory for connected finitary groupoids.
//!
//! The crate builds the standard groupoid with a prescribed vertex group,
//! encodes it as a multi-sorted first-order structure, computes automorphism
//! groups of that structure exactly, and on top of these constructs the
//! non-commutative groupoid of directed-path classes together with the
//! finite-stage approximations of its limit groups.

pub mod group;
pub mod groupoid;
pub mod limits;
pub mod report;
pub mod structure;
pub mod suite;
pub mod witness;
