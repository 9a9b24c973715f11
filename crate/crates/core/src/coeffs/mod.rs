//! Exact coefficient arithmetic for `Q[x, c]` and linear algebra over its
//! fraction field.

mod linsolve;
mod poly;

pub(crate) use linsolve::solve_sparse_rows;
pub use linsolve::{nullspace, rank, solve_linear_system, Fraction, LinalgError, SolveOutcome};
pub use poly::{rat, Coefficient, Monomial, Rational};
