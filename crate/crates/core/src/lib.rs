//! Exact-arithmetic verification engine for finite groups containing `A5`
//! acting on K3 surfaces.
//!
//! The crate is organized bottom-up:
//!
//! * [`exact`]: rationals, polynomials, cyclotomic fields, integer matrices,
//!   Smith normal form and exact linear solving.
//! * [`lefschetz`]: holomorphic Lefschetz fixed-point systems and their
//!   nonnegative integer solutions.
//! * [`reps`]: `A5` as a permutation group, its character table and the
//!   Néron–Severi decomposition.
//! * [`cases`]: the stabilize/switch case engine producing the admissible
//!   Euler-number tuples.
//! * [`lattices`]: Gram lattices, discriminant forms and glue enumeration.
//! * [`obstruct`]: determinant cases and the isometry obstruction.
//! * [`driver`]: check suites and report rendering used by the `verify` binary.

pub mod cases;
pub mod driver;
pub mod error;
pub mod exact;
pub mod lattices;
pub mod lefschetz;
pub mod obstruct;
pub mod reps;

pub use error::{Error, Result};
