//! Exact laboratory for integer solutions of algebraic Diophantine equations.
//!
//! * [`poly`] and [`parse`]: integer polynomials, their text format and
//!   structural classification (diagonal, explicit-variable, Thue, general).
//! * [`counting`]: exact counts `R_k(N)` in the hypercube `[-N, N]^k` or the
//!   natural orthant `[1, N]^k`, with four cross-checking engines.
//! * [`asymptotics`]: predicted upper-bound exponents, log-log fits of
//!   empirical counts and bound verdicts.
//! * [`transforms`]: rational rotations, homothety classification, integer
//!   deformation matrices, binary quadratic diagonalization and polynomial
//!   substitution with count-preservation checks.
//! * [`families`]: constructive solution families that witness lower bounds.
//! * [`cli`]: the `diophlab` command-line surface.

pub mod asymptotics;
pub mod cli;
pub mod counting;
pub mod error;
pub mod families;
pub mod parse;
pub mod poly;
pub mod transforms;

pub use error::{Error, Result};
pub use parse::{parse_equation, parse_equation_with_vars, render, render_expression, ParseError};
pub use poly::{classify, classify_with, Assumptions, EquationClass, EquationKind, Polynomial, Term};
