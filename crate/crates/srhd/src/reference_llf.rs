//! Fine-grid first-order local Lax-Friedrichs solutions used as references
//! for the discontinuous cases, and comparison of coarse solutions against
//! them.

use crate::cases::CaseSpec;
use crate::diagnostics::{pairwise_sum, EntropyTrace};
use crate::dissipation::DissipationMode;
use crate::error::{Error, Result};
use crate::grid_solver::{Scheme, Solver};
use crate::run::RunOutput;
use crate::timeint::Integrator;

pub use crate::grid_solver::llf_flux;

/// CFL number of the reference runs.
pub const LLF_CFL: f64 = 0.4;
/// Minimum refinement of a reference over the case resolution.
pub const MIN_REFINEMENT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LlfConfig {
    pub nx: usize,
    pub cfl: f64,
}

impl LlfConfig {
    /// `refinement` times the case resolution.
    pub fn refined(case: &CaseSpec, refinement: usize) -> Result<LlfConfig> {
        if refinement < MIN_REFINEMENT {
            return Err(Error::Config(format!(
                "reference refinement must be at least {MIN_REFINEMENT}, got {refinement}"
            )));
        }
        Ok(LlfConfig { nx: case.nx * refinement, cfl: LLF_CFL })
    }
}

/// Runs the first-order LLF scheme with forward Euler to the case final time.
pub fn llf_solve(case: &CaseSpec, config: &LlfConfig) -> Result<RunOutput> {
    if case.dim != 1 {
        return Err(Error::Config(format!("reference solutions are one-dimensional, case {} is not", case.id)));
    }
    if !(config.cfl > 0.0 && config.cfl <= 1.0) {
        return Err(Error::Config(format!("reference cfl must lie in (0, 1], got {}", config.cfl)));
    }
    let fine = case.clone().with_resolution(config.nx, None);
    let grid = fine.grid()?;
    let mut solver = Solver::<3>::new(grid, fine.eos, Scheme::Llf, DissipationMode::Rusanov, fine.bc)?;
    let mut u = solver.initialize(|x, y| fine.initial(x, y))?;
    let mut l = vec![[0.0; 3]; u.len()];
    let mut trace = EntropyTrace::default();
    let e0 = solver.total_entropy();
    trace.push(0.0, e0, e0, None);
    let mut outflow = 0.0;
    let (mut t, mut steps) = (0.0, 0);
    while t < fine.t_final {
        let dt = solver.cfl_dt(config.cfl).min(fine.t_final - t);
        let info = solver.rhs_cells(t, &u, &mut l)?;
        for (ui, li) in u.iter_mut().zip(&l) {
            for c in 0..3 {
                ui[c] += dt * li[c];
            }
        }
        t = if t + dt >= fine.t_final { fine.t_final } else { t + dt };
        steps += 1;
        solver.recover(&u)?;
        outflow += dt * info.boundary_entropy_flux;
        let e = solver.total_entropy();
        trace.push(t, e, e + outflow, None);
    }
    Ok(RunOutput {
        grid,
        eos: fine.eos,
        scheme: Scheme::Llf,
        integrator: Integrator::SspRk3,
        t,
        steps,
        rejected_steps: 0,
        prims: solver.prims().to_vec(),
        trace,
        snapshots: Vec::new(),
    })
}

/// Averages a fine point-value profile over blocks of `fine.len() / coarse_n`
/// cells, giving a profile on the coarse grid.
pub fn restrict(fine: &[f64], coarse_n: usize) -> Result<Vec<f64>> {
    if coarse_n == 0 || !fine.len().is_multiple_of(coarse_n) {
        return Err(Error::Config(format!(
            "reference of {} cells cannot be restricted to {coarse_n} cells",
            fine.len()
        )));
    }
    let ratio = fine.len() / coarse_n;
    Ok(fine.chunks(ratio).map(|b| pairwise_sum(b) / ratio as f64).collect())
}

/// Volume-weighted `l¹` distance between a coarse profile and a reference
/// already restricted to the same grid.
pub fn l1_distance(coarse: &[f64], reference: &[f64], dx: f64) -> Result<f64> {
    if coarse.len() != reference.len() {
        return Err(Error::Config(format!(
            "profile has {} cells but the reference has {}",
            coarse.len(),
            reference.len()
        )));
    }
    let diffs: Vec<f64> = coarse.iter().zip(reference).map(|(a, b)| (a - b).abs()).collect();
    Ok(pairwise_sum(&diffs) * dx)
}
