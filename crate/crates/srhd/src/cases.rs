//! Catalog of test problems: initial data, boundary conditions, equation of
//! state, final time and resolution, plus the non-entropy-stable comparison
//! fluxes.

use std::f64::consts::TAU;
use std::fmt;

use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::grid_solver::{Boundary, BoundarySpec, Grid};
use crate::state::Prim;

/// Parameters of the isentropic pulse.
pub const ISENTROPIC_GAMMA: f64 = 5.0 / 3.0;
pub const ISENTROPIC_K: f64 = 100.0;
pub const ISENTROPIC_L: f64 = 0.3;

/// Light and heavy bubble densities.
pub const BUBBLE_LIGHT_RHO: f64 = 0.1358;
pub const BUBBLE_HEAVY_RHO: f64 = 3.1538;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    Smooth1d,
    Isentropic,
    DensityPert,
    Blast,
    Rp1,
    Rp2,
    Rp3,
    Rp4,
    Smooth2d,
    Rp2d1,
    Rp2d2,
    Rp2d3,
    ShockBubbleLight,
    ShockBubbleHeavy,
}

impl CaseId {
    pub const ALL: [CaseId; 14] = [
        CaseId::Smooth1d,
        CaseId::Isentropic,
        CaseId::DensityPert,
        CaseId::Blast,
        CaseId::Rp1,
        CaseId::Rp2,
        CaseId::Rp3,
        CaseId::Rp4,
        CaseId::Smooth2d,
        CaseId::Rp2d1,
        CaseId::Rp2d2,
        CaseId::Rp2d3,
        CaseId::ShockBubbleLight,
        CaseId::ShockBubbleHeavy,
    ];

    /// The one-dimensional Riemann problems.
    pub const RIEMANN_1D: [CaseId; 4] = [CaseId::Rp1, CaseId::Rp2, CaseId::Rp3, CaseId::Rp4];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::Smooth1d => "smooth1d",
            CaseId::Isentropic => "isentropic",
            CaseId::DensityPert => "density_pert",
            CaseId::Blast => "blast",
            CaseId::Rp1 => "rp1",
            CaseId::Rp2 => "rp2",
            CaseId::Rp3 => "rp3",
            CaseId::Rp4 => "rp4",
            CaseId::Smooth2d => "smooth2d",
            CaseId::Rp2d1 => "rp2d_1",
            CaseId::Rp2d2 => "rp2d_2",
            CaseId::Rp2d3 => "rp2d_3",
            CaseId::ShockBubbleLight => "shock_bubble_light",
            CaseId::ShockBubbleHeavy => "shock_bubble_heavy",
        }
    }

    pub fn from_name(name: &str) -> Result<CaseId> {
        CaseId::ALL.iter().copied().find(|c| c.name() == name).ok_or_else(|| {
            let names: Vec<&str> = CaseId::ALL.iter().map(|c| c.name()).collect();
            Error::Config(format!("unknown case '{name}', expected one of {}", names.join(", ")))
        })
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the accuracy of a run is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferencePolicy {
    /// A closed-form solution is available.
    Exact,
    /// Compare against a fine-grid local Lax-Friedrichs solution.
    Llf,
    None,
}

/// A fully specified test problem.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseSpec {
    pub id: CaseId,
    pub dim: usize,
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub nx: usize,
    pub ny: usize,
    pub eos: Eos,
    pub bc: BoundarySpec,
    pub t_final: f64,
    pub cfl: f64,
    pub reference: ReferencePolicy,
    /// Output times before `t_final` for multi-snapshot cases.
    pub snapshot_times: Vec<f64>,
    isentropic_j: f64,
}

/// Every case with its default settings.
pub fn catalog() -> Vec<CaseSpec> {
    CaseId::ALL.iter().map(|&id| case(id)).collect()
}

/// Default settings of one case.
pub fn case(id: CaseId) -> CaseSpec {
    let outflow = BoundarySpec::uniform(Boundary::Outflow);
    let periodic = BoundarySpec::uniform(Boundary::Periodic);
    let base = |dim: usize, x: [f64; 2], n: usize, eos: Eos, bc: BoundarySpec, t_final: f64| CaseSpec {
        id,
        dim,
        x,
        y: if dim == 2 { x } else { [0.0, 1.0] },
        nx: n,
        ny: if dim == 2 { n } else { 1 },
        eos,
        bc,
        t_final,
        cfl: 0.4,
        reference: ReferencePolicy::Llf,
        snapshot_times: Vec::new(),
        isentropic_j: 0.0,
    };
    match id {
        CaseId::Smooth1d => {
            CaseSpec { reference: ReferencePolicy::Exact, ..base(1, [0.0, TAU], 160, Eos::Tm, periodic, 1.5) }
        }
        CaseId::Isentropic => CaseSpec {
            cfl: 0.2,
            reference: ReferencePolicy::None,
            isentropic_j: riemann_invariant_minus(0.0, isentropic_sound_speed(1.0)),
            ..base(1, [-0.4, 2.0], 200, Eos::Ideal { gamma: ISENTROPIC_GAMMA }, periodic, 0.8)
        },
        CaseId::DensityPert => base(1, [0.0, 1.0], 400, Eos::Rc, outflow, 0.376),
        CaseId::Blast => base(1, [0.0, 1.0], 4000, Eos::Tm, outflow, 0.43),
        CaseId::Rp1 => CaseSpec { cfl: 0.1, ..base(1, [0.0, 1.0], 400, Eos::Rc, outflow, 0.4) },
        CaseId::Rp2 => base(1, [0.0, 1.0], 400, Eos::Tm, outflow, 0.4),
        CaseId::Rp3 => base(1, [0.0, 1.0], 400, Eos::Rc, outflow, 0.4),
        CaseId::Rp4 => base(1, [0.0, 1.0], 400, Eos::Ip, outflow, 0.4),
        CaseId::Smooth2d => {
            CaseSpec { reference: ReferencePolicy::Exact, ..base(2, [0.0, TAU], 40, Eos::Rc, periodic, 0.1) }
        }
        CaseId::Rp2d1 => base(2, [0.0, 1.0], 400, Eos::Ip, outflow, 0.4),
        CaseId::Rp2d2 => base(2, [0.0, 1.0], 400, Eos::Tm, outflow, 0.4),
        CaseId::Rp2d3 => base(2, [0.0, 1.0], 400, Eos::Rc, outflow, 0.4),
        CaseId::ShockBubbleLight | CaseId::ShockBubbleHeavy => CaseSpec {
            x: [0.0, 325.0],
            y: [0.0, 90.0],
            nx: 650,
            ny: 180,
            bc: BoundarySpec {
                x_lo: Boundary::Outflow,
                x_hi: Boundary::Inflow(SHOCK_BUBBLE_RIGHT),
                y_lo: Boundary::Reflective,
                y_hi: Boundary::Reflective,
            },
            reference: ReferencePolicy::None,
            snapshot_times: vec![90.0, 180.0, 270.0, 360.0],
            ..base(2, [0.0, 325.0], 650, Eos::Rc, outflow, 450.0)
        },
    }
}

const SHOCK_BUBBLE_RIGHT: Prim = Prim { rho: 1.941272902134272, v: [-0.200661045980881, 0.0], p: 0.15 };

fn riemann_left(x: f64, xc: f64, left: Prim, right: Prim) -> Prim {
    if x < xc {
        left
    } else {
        right
    }
}

/// Quadrant selection for the two-dimensional Riemann problems, with the
/// lower-left state on the `<` side of both lines.
fn quadrant(x: f64, y: f64, ne: Prim, nw: Prim, sw: Prim, se: Prim) -> Prim {
    match (x >= 0.5, y >= 0.5) {
        (true, true) => ne,
        (false, true) => nw,
        (false, false) => sw,
        (true, false) => se,
    }
}

impl CaseSpec {
    pub fn with_eos(mut self, eos: Eos) -> CaseSpec {
        self.eos = eos;
        self
    }

    pub fn with_resolution(mut self, nx: usize, ny: Option<usize>) -> CaseSpec {
        if self.dim == 2 {
            let aspect = self.ny as f64 / self.nx as f64;
            self.ny = ny.unwrap_or(((nx as f64 * aspect).round() as usize).max(1));
        }
        self.nx = nx;
        self
    }

    pub fn grid(&self) -> Result<Grid> {
        if self.dim == 1 {
            Grid::new_1d(self.nx, self.x[0], self.x[1])
        } else {
            Grid::new_2d(self.nx, self.ny, self.x, self.y)
        }
    }

    /// Initial primitive state at `(x, y)`.
    pub fn initial(&self, x: f64, y: f64) -> Prim {
        let p1 = Prim::new_1d;
        let p2 = Prim::new_2d;
        match self.id {
            CaseId::Smooth1d | CaseId::Smooth2d => self.exact(x, y, 0.0).unwrap(),
            CaseId::Isentropic => {
                let rho = isentropic_density(x);
                let v = isentropic_velocity_from(self.isentropic_j, rho);
                p1(rho, v, ISENTROPIC_K * rho.powf(ISENTROPIC_GAMMA))
            }
            CaseId::DensityPert => riemann_left(x, 0.5, p1(5.0, 0.0, 50.0), p1(2.0 + 0.3 * (50.0 * x).sin(), 0.0, 5.0)),
            CaseId::Blast => {
                if x < 0.1 {
                    p1(1.0, 0.0, 1e3)
                } else if x < 0.9 {
                    p1(1.0, 0.0, 1e-2)
                } else {
                    p1(1.0, 0.0, 1e2)
                }
            }
            CaseId::Rp1 => riemann_left(x, 0.5, p1(10.0, 0.0, 40.0 / 3.0), p1(1.0, 0.0, 1e-6)),
            CaseId::Rp2 => riemann_left(x, 0.5, p1(1.0, 0.0, 1e3), p1(1.0, 0.0, 1e-2)),
            CaseId::Rp3 => riemann_left(x, 0.5, p1(1.0, 0.9, 1.0), p1(1.0, 0.0, 10.0)),
            CaseId::Rp4 => riemann_left(x, 0.5, p1(1.0, -0.7, 20.0), p1(1.0, 0.7, 20.0)),
            CaseId::Rp2d1 => quadrant(
                x,
                y,
                p2(0.5, 0.5, -0.5, 5.0),
                p2(1.0, 0.5, 0.5, 5.0),
                p2(3.0, -0.5, 0.5, 5.0),
                p2(1.5, -0.5, -0.5, 5.0),
            ),
            CaseId::Rp2d2 => quadrant(
                x,
                y,
                p2(1.0, 0.0, 0.0, 1.0),
                p2(0.5771, -0.3529, 0.0, 0.4),
                p2(1.0, -0.3529, -0.3529, 1.0),
                p2(0.5771, 0.0, -0.3529, 0.4),
            ),
            CaseId::Rp2d3 => quadrant(
                x,
                y,
                p2(0.035145216124503, 0.0, 0.0, 0.162931056509027),
                p2(0.1, 0.7, 0.0, 1.0),
                p2(0.5, 0.0, 0.0, 1.0),
                p2(0.1, 0.0, 0.7, 1.0),
            ),
            CaseId::ShockBubbleLight | CaseId::ShockBubbleHeavy => {
                if x >= 265.0 {
                    SHOCK_BUBBLE_RIGHT
                } else if ((x - 215.0).powi(2) + (y - 45.0).powi(2)).sqrt() <= 25.0 {
                    let rho = if self.id == CaseId::ShockBubbleLight { BUBBLE_LIGHT_RHO } else { BUBBLE_HEAVY_RHO };
                    p2(rho, 0.0, 0.0, 0.05)
                } else {
                    p2(1.0, 0.0, 0.0, 0.05)
                }
            }
        }
    }

    /// Closed-form solution for the smooth cases.
    pub fn exact(&self, x: f64, y: f64, t: f64) -> Option<Prim> {
        match self.id {
            CaseId::Smooth1d => Some(Prim::new_1d(1.0 + 0.2 * (x - 0.2 * t).sin(), 0.2, 1.0)),
            CaseId::Smooth2d => Some(Prim::new_2d(1.0 + 0.2 * (x + y - 0.4 * t).sin(), 0.2, 0.2, 1.0)),
            _ => None,
        }
    }
}

/// Density of the isentropic pulse.
pub fn isentropic_density(x: f64) -> f64 {
    let l = ISENTROPIC_L;
    if x.abs() < l {
        1.0 + (-1.0 / (1.0 - x * x / (l * l))).exp()
    } else {
        1.0
    }
}

/// Sound speed of the isentropic pulse at density `rho` (`p = Kρ^Γ`).
pub fn isentropic_sound_speed(rho: f64) -> f64 {
    let eos = Eos::Ideal { gamma: ISENTROPIC_GAMMA };
    let theta = ISENTROPIC_K * rho.powf(ISENTROPIC_GAMMA - 1.0);
    eos.sound_speed_sq(theta).sqrt()
}

/// Left-going Riemann invariant `J₋(v, c_s)` of the ideal gas with the
/// isentropic adiabatic index.
pub fn riemann_invariant_minus(v: f64, cs: f64) -> f64 {
    let a = (ISENTROPIC_GAMMA - 1.0).sqrt();
    v.atanh() - ((a + cs) / (a - cs)).ln() / a
}

fn isentropic_velocity_from(j: f64, rho: f64) -> f64 {
    if rho == 1.0 {
        return 0.0;
    }
    let a = (ISENTROPIC_GAMMA - 1.0).sqrt();
    let cs = isentropic_sound_speed(rho);
    (j + ((a + cs) / (a - cs)).ln() / a).tanh()
}

/// Velocity of the isentropic pulse at `x`, holding `J₋` at its
/// unperturbed value.
pub fn isentropic_velocity(x: f64) -> f64 {
    let j = riemann_invariant_minus(0.0, isentropic_sound_speed(1.0));
    isentropic_velocity_from(j, isentropic_density(x))
}

/// Non-entropy-stable comparison fluxes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonEsVariant {
    /// `c(t) = (3/5) sin(50t)`, used on the isentropic case.
    Rf,
    /// `c(t) = (6/5) sin(7.6t + 0.1)`, used on the third Riemann problem.
    Rp3,
}

impl NonEsVariant {
    pub fn coefficient(self, t: f64) -> f64 {
        match self {
            NonEsVariant::Rf => 0.6 * (50.0 * t).sin(),
            NonEsVariant::Rp3 => 1.2 * (7.6 * t + 0.1).sin(),
        }
    }
}

/// `F̃ − c(t) D [[W]]`.
pub fn non_es_flux<const N: usize>(
    variant: NonEsVariant,
    t: f64,
    ec: &[f64; N],
    d: &[[f64; N]; N],
    jump_w: &[f64; N],
) -> [f64; N] {
    let c = variant.coefficient(t);
    let mut f = *ec;
    for i in 0..N {
        let dw: f64 = (0..N).map(|j| d[i][j] * jump_w[j]).sum();
        f[i] -= c * dw;
    }
    f
}
