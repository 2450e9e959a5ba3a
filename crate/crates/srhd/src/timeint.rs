//! Third-order SSP Runge-Kutta and relaxation Runge-Kutta time stepping.
//!
//! Both integrators share the same three stages. The relaxation variant
//! replaces the final combination by `Uⁿ + γₙ dⁿ`, where `γₙ` makes the
//! total entropy change equal to the semi-discrete entropy production.

use std::fmt;

use crate::error::{Error, Result};

/// Entropy bookkeeping returned with every right-hand-side evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RhsInfo {
    /// `Σᵢ W(Uᵢ)ᵀ Lᵢ(U) ΔV`.
    pub entropy_rate: f64,
    /// Net outward physical entropy flux through non-periodic boundaries.
    pub boundary_entropy_flux: f64,
}

/// Total entropy at a state together with a directional derivative.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EntropyEval {
    /// `Σᵢ η(Uᵢ) ΔV`.
    pub total: f64,
    /// `Σᵢ W(Uᵢ)ᵀ dᵢ ΔV` for the requested direction `d`.
    pub slope: f64,
    /// `Σᵢ |η(Uᵢ)| ΔV`, the scale of the rounding error in `total`.
    pub magnitude: f64,
}

/// A semi-discrete system `dU/dt = L(U)` over a flat state vector.
pub trait SemiDiscrete {
    fn rhs(&mut self, t: f64, u: &[f64], out: &mut [f64]) -> Result<RhsInfo>;
    fn entropy(&mut self, u: &[f64], direction: &[f64]) -> Result<EntropyEval>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Integrator {
    #[default]
    SspRk3,
    Rrk3,
}

impl Integrator {
    pub fn from_name(name: &str) -> Result<Integrator> {
        match name {
            "ssprk3" => Ok(Integrator::SspRk3),
            "rrk3" => Ok(Integrator::Rrk3),
            _ => Err(Error::Config(format!("unknown time_integrator '{name}', expected one of ssprk3, rrk3"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Integrator::SspRk3 => "ssprk3",
            Integrator::Rrk3 => "rrk3",
        }
    }
}

impl fmt::Display for Integrator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of one accepted step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    /// Relaxation parameter, `1` for SSP-RK3.
    pub gamma: f64,
    /// Entropy production `γ ε` credited to the step.
    pub entropy_production: f64,
    /// Time integral of the boundary entropy flux over the step, scaled by `γ`.
    pub boundary_entropy: f64,
}

/// Bounds of the relaxation parameter.
pub const RELAXATION_RANGE: (f64, f64) = (0.5, 1.5);
/// Absolute tolerance on `γ`.
pub const RELAXATION_TOL: f64 = 1e-12;

/// Solves `r(γ) = 0` near `γ = 1`.
///
/// `eval` returns `(r(γ), r′(γ))`. Newton iteration starts at `γ = 1` and
/// stops when the residual drops below `r_tol` or the update below
/// [`RELAXATION_TOL`]. If Newton leaves the admissible range or stalls, the
/// root is bracketed in `[0.9, 1.1]`, widened to `[0.5, 1.5]`, and bisected.
pub fn solve_relaxation<F>(mut eval: F, r_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    let mut gamma = 1.0;
    let (mut r, mut dr) = eval(gamma)?;
    for _ in 0..30 {
        if r.abs() <= r_tol {
            return Ok(gamma);
        }
        let step = -r / dr;
        let next = gamma + step;
        if !step.is_finite() || next < RELAXATION_RANGE.0 || next > RELAXATION_RANGE.1 {
            break;
        }
        gamma = next;
        (r, dr) = eval(gamma)?;
        if step.abs() <= RELAXATION_TOL {
            return Ok(gamma);
        }
    }

    let mut bracket = None;
    for &(a, b) in &[(0.9, 1.1), RELAXATION_RANGE] {
        let ra = eval(a)?.0;
        let rb = eval(b)?.0;
        if ra == 0.0 {
            return Ok(a);
        }
        if rb == 0.0 {
            return Ok(b);
        }
        if ra * rb < 0.0 {
            bracket = Some((a, ra, b));
            break;
        }
    }
    let (mut a, mut ra, mut b) = bracket.ok_or_else(|| Error::Relaxation {
        t: f64::NAN,
        detail: "relaxation residual has no sign change in [0.5, 1.5]; reduce the time step".into(),
    })?;
    while b - a > RELAXATION_TOL {
        let m = 0.5 * (a + b);
        let rm = eval(m)?.0;
        if rm.abs() <= r_tol {
            return Ok(m);
        }
        if ra * rm < 0.0 {
            b = m;
        } else {
            a = m;
            ra = rm;
        }
    }
    Ok(0.5 * (a + b))
}

/// Three-stage stepper with preallocated stage buffers.
#[derive(Debug, Clone)]
pub struct Stepper {
    pub integrator: Integrator,
    stage: Vec<f64>,
    l0: Vec<f64>,
    l1: Vec<f64>,
    l2: Vec<f64>,
    trial: Vec<f64>,
}

impl Stepper {
    pub fn new(integrator: Integrator, len: usize) -> Stepper {
        Stepper {
            integrator,
            stage: vec![0.0; len],
            l0: vec![0.0; len],
            l1: vec![0.0; len],
            l2: vec![0.0; len],
            trial: vec![0.0; len],
        }
    }

    /// Advances `u` from `t` by one step of size `dt`.
    ///
    /// For the relaxation integrator the caller advances time by `γ dt`,
    /// except on a final step that must land on the end time, where `γ dt`
    /// is still applied to the state.
    pub fn step<S: SemiDiscrete>(&mut self, sys: &mut S, t: f64, u: &mut [f64], dt: f64) -> Result<StepOutcome> {
        let n = u.len();
        let i0 = sys.rhs(t, u, &mut self.l0)?;
        for k in 0..n {
            self.stage[k] = u[k] + dt * self.l0[k];
        }
        let i1 = sys.rhs(t + dt, &self.stage, &mut self.l1)?;
        for k in 0..n {
            self.stage[k] = 0.75 * u[k] + 0.25 * (self.stage[k] + dt * self.l1[k]);
        }
        let i2 = sys.rhs(t + 0.5 * dt, &self.stage, &mut self.l2)?;
        let weight = dt / 6.0;
        let eps = weight * (i0.entropy_rate + i1.entropy_rate + 4.0 * i2.entropy_rate);
        let boundary = weight * (i0.boundary_entropy_flux + i1.boundary_entropy_flux + 4.0 * i2.boundary_entropy_flux);

        match self.integrator {
            Integrator::SspRk3 => {
                for k in 0..n {
                    u[k] = u[k] / 3.0 + 2.0 / 3.0 * (self.stage[k] + dt * self.l2[k]);
                }
                Ok(StepOutcome { gamma: 1.0, entropy_production: eps, boundary_entropy: boundary })
            }
            Integrator::Rrk3 => {
                // The stage buffer now holds dⁿ.
                for k in 0..n {
                    self.stage[k] = weight * (self.l0[k] + self.l1[k] + 4.0 * self.l2[k]);
                }
                let gamma = if self.stage.iter().all(|&x| x == 0.0) {
                    1.0
                } else {
                    let base = sys.entropy(u, &self.stage)?;
                    let (d, trial) = (&self.stage, &mut self.trial);
                    let r_tol = 8.0 * f64::EPSILON * base.magnitude.max(base.total.abs());
                    let gamma = solve_relaxation(
                        |g| {
                            for k in 0..n {
                                trial[k] = u[k] + g * d[k];
                            }
                            let e = sys.entropy(trial, d)?;
                            Ok((e.total - base.total - g * eps, e.slope - eps))
                        },
                        r_tol,
                    )
                    .map_err(|e| match e {
                        Error::Relaxation { detail, .. } => Error::Relaxation { t, detail },
                        other => other,
                    })?;
                    for k in 0..n {
                        trial[k] = u[k] + gamma * d[k];
                    }
                    let end = sys.entropy(trial, d)?;
                    let residual = end.total - base.total - gamma * eps;
                    let accept = 1e-12 * (1.0 + base.total.abs());
                    if residual.abs() > accept.max(r_tol) {
                        return Err(Error::Relaxation {
                            t,
                            detail: format!("relaxation residual {residual:e} above tolerance; reduce the time step"),
                        });
                    }
                    gamma
                };
                for k in 0..n {
                    u[k] += gamma * self.stage[k];
                }
                Ok(StepOutcome { gamma, entropy_production: gamma * eps, boundary_entropy: gamma * boundary })
            }
        }
    }
}
