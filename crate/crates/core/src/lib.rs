//! Exact verification of the lattice-theoretic claims behind potential density
//! for the Hilbert square `X = S^[2]` of a K3 surface `S` whose Néron–Severi
//! lattice has Gram matrix `[[4, a], [a, 4]]`.
//!
//! Everything here is integer or rational arithmetic. The crate is split along
//! the objects it reasons about:
//!
//! - [`exact`]: matrices, polynomials, cyclotomic factors, root enclosures.
//! - [`pell`]: generalized Pell equations `t² − D·y² = N`.
//! - [`surface`]: the rank-2 lattice `NS(S)`, nodal classes, ampleness.
//! - [`hilb2`]: the rank-3 lattice `NS(X)`, Beauville involutions, the
//!   composed automorphism, intersection numbers and ternary isotropy.
//! - [`verdict`]: the ordered certificate chain ending in a density verdict.
//! - [`report`]: text/JSON rendering and parameter scans used by the CLI.

pub mod error;
pub mod exact;
pub mod hilb2;
pub mod pell;
pub mod report;
pub mod surface;
pub mod verdict;

pub use error::{Error, Result};
