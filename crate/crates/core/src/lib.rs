//! Continued-fraction digit statistics and dimension numerics.
//!
//! The crate provides, bottom to top:
//!
//! * [`numerics`]: certified ball arithmetic over dyadic bigfloats, a
//!   rigorous Riemann zeta evaluator, and growth-function families.
//! * [`cf`]: exact continued-fraction expansion, convergents, cylinder
//!   intervals, digit statistics, and a Khintchine-type Monte Carlo.
//! * [`compsum`]: truncated composition sums `sum prod i_k^{-2s}` and the
//!   exponential bound they satisfy, verified on grids.
//! * [`constructions`]: digit streams for sets with prescribed quotient
//!   growth (window sets, prescribed-subsequence sets, max-digit sets).
//! * [`dimension`]: cover-sum diagnostics, the pressure-type root `s_L`,
//!   local dimension profiles, and finite-depth dimension estimates.
//! * [`ifs`]: d-decaying Gauss-like iterated function systems, their
//!   symbolic dynamics, and predicted dimensions.

pub mod cf;
pub mod compsum;
pub mod constructions;
pub mod dimension;
pub mod error;
pub mod ifs;
pub mod khintchine;
pub mod numerics;

pub use error::{Error, Result};
