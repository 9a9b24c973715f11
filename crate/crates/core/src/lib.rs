//! Exact computations with higher level Zhu algebras and mode transition
//! algebras of the Heisenberg and Virasoro mode algebras.

pub mod coeffs;
pub mod error;
pub mod liealg;
pub mod mta;
pub mod partition;
pub mod pbw;
pub mod verma;
pub mod zhu;

pub use error::{Error, Result};

/// Version tag carried by every JSON report.
pub const SCHEMA: &str = "mta-kit/1";
