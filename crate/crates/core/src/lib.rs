//! Exact arithmetic for verifying failures of Kodaira vanishing on homogeneous
//! spaces `SL(n)/P` with non-reduced stabilizer, and for replaying the
//! resolution of the 3-fold quotient `(G_m)^3 / (Z/2)` in characteristic 2.
//!
//! All numbers are exact: weights and dimensions use arbitrary-precision
//! integers, polynomials live over `F_p`, and discrepancies are integer
//! ledgers. Nothing here uses floating point.

pub mod arith;
pub mod cohomology;
pub mod error;
pub mod fixed;
pub mod homogeneous;
pub mod ledger;
pub mod report;
pub mod schur;
mod ser;
pub mod torus;
pub mod weight;

pub use error::{Error, Result};
pub use homogeneous::{FValue, GPLineBundle, ParabolicFunction};
pub use schur::{euler_char, gt_pattern_count, weyl_dim, DimValue, EulerValue};
pub use weight::{PositiveRoot, RootSystemA, Weight};

/// Version string embedded into every report.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
