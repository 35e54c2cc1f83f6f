//! Computation of the Turan extremal constant A(p/q) for 1-periodic
//! functions supported on [-p/q, p/q].
//!
//! The constant is the optimal value of two equivalent finite linear
//! programs ([`problems`]), solved by a dense two-phase simplex
//! ([`simplex`]) and, where available, by exact formulas
//! ([`closed_forms`]). The extremal piecewise-linear function and its
//! Fourier spectrum live in [`extremal`]; asymptotic expansions of A(h)
//! and their observed remainder orders in [`asymptotics`]; brute-force
//! cross-checks in [`oracle`].

pub mod asymptotics;
pub mod closed_forms;
pub mod error;
pub mod extremal;
pub mod oracle;
pub mod problems;
pub mod simplex;

pub use error::{Error, Result};
pub use problems::{
    b_from_s, make_instance, make_lp1, make_lp2, s_from_b, BVector, LinearProgram,
    ProblemInstance, SVector, DEFAULT_TOL,
};
pub use simplex::{certificate_check, solve, LPSolution, SolveStatus};
