//! Entropy-conservative and entropy-stable finite-difference schemes for
//! one- and two-dimensional special relativistic hydrodynamics with
//! Synge-type equations of state.
//!
//! Modules from the bottom up:
//!
//! - [`means`]: jumps, arithmetic and logarithmic means
//! - [`eos`]: the four equations of state and the interface coefficient ℰ
//! - [`state`]: primitive and conservative states, fluxes, entropy functions
//!   and the conservative-to-primitive recovery
//! - [`flux_ec`]: two-point and high-order entropy-conservative fluxes
//! - [`dissipation`]: eigenstructure, interface averages and dissipation matrices
//! - [`reconstruct`]: ENO/WENO reconstruction of scaled entropy variables
//! - [`grid_solver`]: grids, boundary conditions and semi-discrete operators
//! - [`timeint`]: SSP-RK3 and relaxation RK3
//! - [`diagnostics`]: entropy accounting, error norms, convergence rates
//! - [`cases`]: the catalog of test problems
//! - [`reference_llf`]: first-order local Lax-Friedrichs reference solver
//! - [`run`]: end-to-end drivers shared by the command line and the tests

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod cases;
pub mod diagnostics;
pub mod dissipation;
pub mod eos;
pub mod error;
pub mod flux_ec;
pub mod grid_solver;
pub mod means;
pub mod reconstruct;
pub mod reference_llf;
pub mod run;
pub mod state;
pub mod timeint;

pub use error::{Error, Result};
