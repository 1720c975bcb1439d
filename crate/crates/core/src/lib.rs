//! Exact character theory of the n-qubit projective Pauli and Clifford groups.
//!
//! The crate enumerates the projective Clifford group as symplectic matrices
//! paired with sign vectors, computes conjugacy classes, and assembles the
//! complete irreducible character table from the inertia subgroup of a
//! nontrivial Pauli character. It also carries irreducible characters of the
//! n-qubit group up to irreducible characters of the (n+1)-qubit group.
//!
//! Module map:
//!
//! * [`linalg2`]: bit vectors and bit matrices over GF(2), Z/4 vectors, the
//!   symplectic form.
//! * [`pauli`]: Weyl operators with exact phase tracking and the projective
//!   Pauli character table.
//! * [`symplectic`]: Sp(2n,2), transvection generators and the mod-4 lift.
//! * [`clifford`]: projective Clifford elements, generators, enumeration.
//! * [`group`]: generic finite-group enumeration and conjugacy classes.
//! * [`inertia`]: the inertia subgroup of a Pauli character, its linear
//!   extension, and the map onto the affine symplectic group.
//! * [`chars`]: cyclotomic numbers, class functions, the Dixon engine, table
//!   assembly, the lift and the consistency suites.
//! * [`cache`], [`render`], [`cli`]: persistence, output formats, front end.

pub mod cache;
pub mod chars;
pub mod cli;
pub mod dense;
pub mod clifford;
pub mod error;
pub mod group;
pub mod inertia;
pub mod linalg2;
pub mod pauli;
pub mod reference;
pub mod render;
pub mod symplectic;

pub use error::{Error, Result};
