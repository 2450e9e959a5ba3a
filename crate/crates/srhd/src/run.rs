//! Drivers that take a case from its initial data to the final time and
//! collect snapshots, the entropy trace and accuracy tables.

use crate::cases::CaseSpec;
use crate::diagnostics::{error_norms, error_table, EntropyTrace, ErrorRow, Norms};
use crate::dissipation::DissipationMode;
use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::grid_solver::{Grid, Scheme, Solver};
use crate::state::Prim;
use crate::timeint::{Integrator, Stepper};

/// Largest number of times a step is halved when the relaxation parameter
/// cannot be found.
pub const MAX_STEP_HALVINGS: usize = 30;

/// Time-step selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DtRule {
    /// `Δt` from the CFL condition with this CFL number.
    Cfl(f64),
    /// `Δt = coefficient · Δxˢ` with `s = exponent`.
    Power { coefficient: f64, exponent: f64 },
}

impl DtRule {
    /// The accuracy-study rule `Δt = 0.4 Δxˢ` matched to `scheme`.
    pub fn accuracy(scheme: Scheme) -> DtRule {
        DtRule::Power { coefficient: 0.4, exponent: scheme.accuracy_power() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub scheme: Scheme,
    pub mode: DissipationMode,
    pub integrator: Integrator,
    /// `None` uses the case CFL number.
    pub dt_rule: Option<DtRule>,
    /// `None` uses the case final time.
    pub t_final: Option<f64>,
    /// Extra output times; `None` uses the case list.
    pub snapshot_times: Option<Vec<f64>>,
    /// Also snapshot after every this many steps.
    pub snapshot_every: Option<usize>,
}

impl RunOptions {
    pub fn new(scheme: Scheme) -> RunOptions {
        RunOptions {
            scheme,
            mode: DissipationMode::default(),
            integrator: Integrator::default(),
            dt_rule: None,
            t_final: None,
            snapshot_times: None,
            snapshot_every: None,
        }
    }

    pub fn with_integrator(mut self, integrator: Integrator) -> RunOptions {
        self.integrator = integrator;
        self
    }

    pub fn with_mode(mut self, mode: DissipationMode) -> RunOptions {
        self.mode = mode;
        self
    }

    pub fn with_dt_rule(mut self, rule: DtRule) -> RunOptions {
        self.dt_rule = Some(rule);
        self
    }

    pub fn with_t_final(mut self, t: f64) -> RunOptions {
        self.t_final = Some(t);
        self
    }

    pub fn with_snapshot_times(mut self, times: Vec<f64>) -> RunOptions {
        self.snapshot_times = Some(times);
        self
    }

    pub fn with_snapshot_every(mut self, steps: usize) -> RunOptions {
        self.snapshot_every = Some(steps);
        self
    }
}

/// Primitive field at one output time.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub prims: Vec<Prim>,
}

/// Everything a run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub grid: Grid,
    pub eos: Eos,
    pub scheme: Scheme,
    pub integrator: Integrator,
    pub t: f64,
    pub steps: usize,
    /// Relaxation steps retried with a halved time step.
    pub rejected_steps: usize,
    /// Final primitive field, row-major over `(j, i)`.
    pub prims: Vec<Prim>,
    pub trace: EntropyTrace,
    /// Intermediate snapshots in increasing time; the final state is `prims`.
    pub snapshots: Vec<Snapshot>,
}

impl RunOutput {
    pub fn densities(&self) -> Vec<f64> {
        self.prims.iter().map(|p| p.rho).collect()
    }
}

/// Runs `case` to its final time.
pub fn run_case(case: &CaseSpec, opts: &RunOptions) -> Result<RunOutput> {
    match case.dim {
        1 => run_generic::<3>(case, opts),
        2 => run_generic::<4>(case, opts),
        d => Err(Error::Config(format!("unsupported dimension {d}"))),
    }
}

fn with_time(e: Error, t: f64) -> Error {
    match e {
        Error::Recovery { cell, detail } => Error::Recovery { cell, detail: format!("{detail} (t = {t})") },
        Error::Relaxation { detail, .. } => Error::Relaxation { t, detail },
        other => other,
    }
}

fn run_generic<const N: usize>(case: &CaseSpec, opts: &RunOptions) -> Result<RunOutput> {
    let grid = case.grid()?;
    let t_final = opts.t_final.unwrap_or(case.t_final);
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(Error::Config(format!("final time must be finite and nonnegative, got {t_final}")));
    }
    let rule = opts.dt_rule.unwrap_or(DtRule::Cfl(case.cfl));
    match rule {
        DtRule::Cfl(c) if !(c > 0.0 && c.is_finite()) => {
            return Err(Error::Config(format!("cfl must be positive, got {c}")))
        }
        DtRule::Power { coefficient, .. } if !(coefficient > 0.0) => {
            return Err(Error::Config(format!("time-step coefficient must be positive, got {coefficient}")))
        }
        _ => {}
    }
    if opts.snapshot_every == Some(0) {
        return Err(Error::Config("snapshot interval must be at least one step".into()));
    }
    let mut targets: Vec<f64> = opts
        .snapshot_times
        .clone()
        .unwrap_or_else(|| case.snapshot_times.clone())
        .into_iter()
        .filter(|&s| s > 0.0 && s < t_final)
        .collect();
    targets.sort_by(f64::total_cmp);
    targets.dedup();
    targets.push(t_final);

    let mut solver = Solver::<N>::new(grid, case.eos, opts.scheme, opts.mode, case.bc)?;
    let u0 = solver.initialize(|x, y| case.initial(x, y))?;
    let mut u: Vec<f64> = u0.as_flattened().to_vec();
    let mut stepper = Stepper::new(opts.integrator, u.len());
    let rrk = opts.integrator == Integrator::Rrk3;

    let mut trace = EntropyTrace::default();
    let e0 = solver.total_entropy();
    trace.push(0.0, e0, e0, rrk.then_some(1.0));
    let mut outflow = 0.0;
    let mut snapshots = Vec::new();
    let mut t = 0.0;
    let mut steps = 0;
    let mut rejected = 0;
    for (ti, &target) in targets.iter().enumerate() {
        while t < target {
            let dt_free = match rule {
                DtRule::Cfl(c) => solver.cfl_dt(c),
                DtRule::Power { coefficient, exponent } => coefficient * grid.dx.powf(exponent),
            };
            let mut landing = t + dt_free >= target * (1.0 - 4.0 * f64::EPSILON);
            let mut dt = if landing { target - t } else { dt_free };
            let mut halvings = 0;
            let out = loop {
                match stepper.step(&mut solver, t, &mut u, dt) {
                    Ok(out) => break out,
                    Err(Error::Relaxation { .. }) if halvings < MAX_STEP_HALVINGS => {
                        halvings += 1;
                        dt *= 0.5;
                        landing = false;
                    }
                    Err(e) => return Err(with_time(e, t)),
                }
            };
            rejected += halvings;
            let advanced = t + out.gamma * dt;
            t = if landing || advanced >= target { target } else { advanced };
            steps += 1;
            solver.recover(u.as_chunks::<N>().0).map_err(|e| with_time(e, t))?;
            outflow += out.boundary_entropy;
            let e = solver.total_entropy();
            trace.push(t, e, e + outflow, rrk.then_some(out.gamma));
            let periodic = opts.snapshot_every.is_some_and(|k| steps % k == 0);
            if periodic && t < target {
                snapshots.push(Snapshot { t, prims: solver.prims().to_vec() });
            }
        }
        if ti + 1 < targets.len() {
            snapshots.push(Snapshot { t, prims: solver.prims().to_vec() });
        }
    }
    Ok(RunOutput {
        grid,
        eos: case.eos,
        scheme: opts.scheme,
        integrator: opts.integrator,
        t,
        steps,
        rejected_steps: rejected,
        prims: solver.prims().to_vec(),
        trace,
        snapshots,
    })
}

/// Density error of a finished run against the closed-form solution.
pub fn exact_error(case: &CaseSpec, out: &RunOutput) -> Result<Norms> {
    let g = &out.grid;
    let mut exact = Vec::with_capacity(g.cells());
    for j in 0..g.ny {
        for i in 0..g.nx {
            let p = case
                .exact(g.x(i), g.y(j), out.t)
                .ok_or_else(|| Error::Config(format!("case {} has no closed-form solution", case.id)))?;
            exact.push(p.rho);
        }
    }
    error_norms(&out.densities(), &exact, g.cell_volume())
}

/// Accuracy study over the resolutions `ns` (square grids in 2D).
pub fn accuracy_sweep(case: &CaseSpec, opts: &RunOptions, ns: &[usize]) -> Result<Vec<ErrorRow>> {
    let mut results = Vec::with_capacity(ns.len());
    for &n in ns {
        let c = case.clone().with_resolution(n, Some(n));
        let out = run_case(&c, opts)?;
        results.push((n, exact_error(&c, &out)?));
    }
    Ok(error_table(&results))
}
