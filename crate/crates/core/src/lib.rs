//! Exact arithmetic for representation counts by diagonal quadratic forms and
//! linear combinations of triangular numbers.
//!
//! The crate is organized around one carrier type, [`qseries::QSeries`]: a
//! truncated power series in `q` with exact `i64` coefficients. On top of it:
//!
//! - [`qseries`] — series arithmetic and the theta constructors `phi`/`psi`;
//! - [`arith`] — integer kernels (factorization, divisor sums, Kronecker
//!   symbols, eta-type coefficients);
//! - [`counting`] — the two independent counters for `N(a1..ak; n)` (squares)
//!   and `t(a1..ak; n)` (triangular numbers): lattice enumeration and
//!   generating-function coefficients;
//! - [`catalog`] — a small rule DSL, its parser, and the built-in catalog of
//!   identities relating `t` and `N`;
//! - [`verify`] — the engine that checks catalog rules exactly over `n`
//!   ranges, closed-form evaluators, and series-level identity suites.
//!
//! Everything is exact: coefficients and counts are 64-bit integers, rational
//! rule coefficients are handled by cross-multiplication, and arithmetic that
//! would overflow is a hard error rather than a silent wrap.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `thetaquad-cli` crate.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod catalog;
pub mod counting;
pub mod qseries;
pub mod verify;

pub use counting::{FormKind, FormSpec};
pub use qseries::QSeries;
