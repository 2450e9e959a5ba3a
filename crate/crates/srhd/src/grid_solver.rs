//! Uniform grids with ghost layers, boundary conditions, the semi-discrete
//! right-hand side and the CFL time step.
//!
//! Values are point values at cell centres. Two-dimensional right-hand
//! sides are assembled dimension by dimension from the same line kernel
//! that serves the one-dimensional solver: every grid row is swept in `x`
//! and every column in `y`.

use std::fmt;

use rayon::prelude::*;

use crate::cases::NonEsVariant;
use crate::dissipation::{
    abs_lambda, apply_scaled, interface_average_ec, max_abs_eigenvalue, scale_entropy_vars, scaled_eigs_at,
    DissipationMode,
};
use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::flux_ec::{alpha, ec_flux, EcState};
use crate::reconstruct::{es_dissipation, Recon};
use crate::state::{cons_to_prim, entropy_eta, entropy_flux_q, entropy_vars, flux, prim_to_cons, Axis, Prim};
use crate::timeint::{EntropyEval, RhsInfo, SemiDiscrete};

/// Ghost layer width, enough for every scheme including fourth-order ENO.
pub const GHOST: usize = 4;

/// Spatial discretisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Ec2,
    Ec4,
    Ec6,
    /// Second-order flux with first-order dissipation `½ D [[W]]`.
    Es1,
    Es4,
    Es5,
    /// First-order local Lax-Friedrichs.
    Llf,
    /// Sixth-order flux minus `(3/5) sin(50t) D [[W]]`.
    NonEs5Rf,
    /// Sixth-order flux minus `(6/5) sin(7.6t + 0.1) D [[W]]`.
    NonEs5Rp3,
}

impl Scheme {
    pub const ALL: [Scheme; 9] = [
        Scheme::Ec2,
        Scheme::Ec4,
        Scheme::Ec6,
        Scheme::Es1,
        Scheme::Es4,
        Scheme::Es5,
        Scheme::Llf,
        Scheme::NonEs5Rf,
        Scheme::NonEs5Rp3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Ec2 => "ec2",
            Scheme::Ec4 => "ec4",
            Scheme::Ec6 => "ec6",
            Scheme::Es1 => "es1",
            Scheme::Es4 => "es4",
            Scheme::Es5 => "es5",
            Scheme::Llf => "llf",
            Scheme::NonEs5Rf => "non_es5_rf",
            Scheme::NonEs5Rp3 => "non_es5_rp3",
        }
    }

    pub fn from_name(name: &str) -> Result<Scheme> {
        Scheme::ALL.iter().copied().find(|s| s.name() == name).ok_or_else(|| {
            let names: Vec<&str> = Scheme::ALL.iter().map(|s| s.name()).collect();
            Error::Config(format!("unknown scheme '{name}', expected one of {}", names.join(", ")))
        })
    }

    /// Half-order `k` of the entropy-conservative part, `0` for LLF.
    pub fn ec_k(self) -> usize {
        match self {
            Scheme::Ec2 | Scheme::Es1 => 1,
            Scheme::Ec4 | Scheme::Es4 => 2,
            Scheme::Ec6 | Scheme::Es5 | Scheme::NonEs5Rf | Scheme::NonEs5Rp3 => 3,
            Scheme::Llf => 0,
        }
    }

    /// Reconstruction of the entropy-stable dissipation, if any.
    pub fn recon(self) -> Option<Recon> {
        match self {
            Scheme::Es1 => Some(Recon::FirstOrder),
            Scheme::Es4 => Some(Recon::Eno4),
            Scheme::Es5 => Some(Recon::Weno5),
            _ => None,
        }
    }

    /// Coefficient `c(t)` of the `D [[W]]` term of the non-entropy-stable fluxes.
    pub fn non_es_variant(self) -> Option<NonEsVariant> {
        match self {
            Scheme::NonEs5Rf => Some(NonEsVariant::Rf),
            Scheme::NonEs5Rp3 => Some(NonEsVariant::Rp3),
            _ => None,
        }
    }

    /// Coefficient `c(t)` of the `D [[W]]` term of the non-entropy-stable fluxes.
    pub fn non_es_coefficient(self, t: f64) -> Option<f64> {
        self.non_es_variant().map(|v| v.coefficient(t))
    }

    pub fn is_entropy_conservative(self) -> bool {
        matches!(self, Scheme::Ec2 | Scheme::Ec4 | Scheme::Ec6)
    }

    /// Exponent `s` of the accuracy-study step rule `Δt = 0.4 Δxˢ`.
    pub fn accuracy_power(self) -> f64 {
        match self {
            Scheme::Ec6 => 2.0,
            Scheme::Es5 | Scheme::NonEs5Rf | Scheme::NonEs5Rp3 => 5.0 / 3.0,
            Scheme::Ec4 | Scheme::Es4 => 4.0 / 3.0,
            Scheme::Ec2 | Scheme::Es1 | Scheme::Llf => 1.0,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Boundary condition on one side of the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    Periodic,
    /// Ghosts copy the nearest interior cell.
    Outflow,
    /// Ghosts mirror the interior with the normal velocity reversed.
    Reflective,
    /// Ghosts hold a fixed exterior state.
    Inflow(Prim),
}

/// Boundary conditions on the four sides (`y` sides unused in 1D).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySpec {
    pub x_lo: Boundary,
    pub x_hi: Boundary,
    pub y_lo: Boundary,
    pub y_hi: Boundary,
}

impl BoundarySpec {
    pub fn uniform(b: Boundary) -> BoundarySpec {
        BoundarySpec { x_lo: b, x_hi: b, y_lo: b, y_hi: b }
    }

    pub fn validate(&self) -> Result<()> {
        let periodic = |b: &Boundary| matches!(b, Boundary::Periodic);
        if periodic(&self.x_lo) != periodic(&self.x_hi) || periodic(&self.y_lo) != periodic(&self.y_hi) {
            return Err(Error::Config("periodic boundaries must be paired on opposite sides".into()));
        }
        Ok(())
    }

    fn sides(&self, axis: Axis) -> (Boundary, Boundary) {
        match axis {
            Axis::X => (self.x_lo, self.x_hi),
            Axis::Y => (self.y_lo, self.y_hi),
        }
    }
}

/// Uniform Cartesian grid; one-dimensional grids have `ny = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub dim: usize,
    pub nx: usize,
    pub ny: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub dx: f64,
    pub dy: f64,
}

impl Grid {
    pub fn new_1d(nx: usize, x_min: f64, x_max: f64) -> Result<Grid> {
        Grid::build(1, nx, 1, [x_min, x_max], [0.0, 1.0])
    }

    pub fn new_2d(nx: usize, ny: usize, x: [f64; 2], y: [f64; 2]) -> Result<Grid> {
        Grid::build(2, nx, ny, x, y)
    }

    fn build(dim: usize, nx: usize, ny: usize, x: [f64; 2], y: [f64; 2]) -> Result<Grid> {
        if nx < GHOST || (dim == 2 && ny < GHOST) {
            return Err(Error::Config(format!("grid needs at least {GHOST} cells per direction")));
        }
        if !(x[1] > x[0] && y[1] > y[0]) {
            return Err(Error::Config("empty domain".into()));
        }
        Ok(Grid {
            dim,
            nx,
            ny,
            x_min: x[0],
            x_max: x[1],
            y_min: y[0],
            y_max: y[1],
            dx: (x[1] - x[0]) / nx as f64,
            dy: if dim == 2 { (y[1] - y[0]) / ny as f64 } else { 1.0 },
        })
    }

    /// Cell-centre abscissa of column `i`.
    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }

    /// Cell-centre ordinate of row `j`.
    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        if self.dim == 1 {
            0.0
        } else {
            self.y_min + (j as f64 + 0.5) * self.dy
        }
    }

    pub fn cells(&self) -> usize {
        self.nx * self.ny
    }

    /// `Δx` in 1D, `ΔxΔy` in 2D.
    pub fn cell_volume(&self) -> f64 {
        if self.dim == 1 {
            self.dx
        } else {
            self.dx * self.dy
        }
    }

    fn padded_nx(&self) -> usize {
        self.nx + 2 * GHOST
    }

    fn padded_ny(&self) -> usize {
        if self.dim == 1 {
            1
        } else {
            self.ny + 2 * GHOST
        }
    }
}

/// Per-cell data shared by all interfaces touching the cell.
#[derive(Debug, Clone, Copy)]
struct Cell<const N: usize> {
    prim: Prim,
    ec: EcState,
    w: [f64; N],
}

impl<const N: usize> Default for Cell<N> {
    fn default() -> Self {
        Cell { prim: Prim::default(), ec: EcState::default(), w: [0.0; N] }
    }
}

impl<const N: usize> Cell<N> {
    #[inline]
    fn new(eos: &Eos, prim: Prim) -> Cell<N> {
        Cell { prim, ec: EcState::new(eos, &prim), w: entropy_vars(eos, &prim) }
    }
}

/// Maps a ghost index (negative, or `≥ n`) to its source for one side.
#[inline]
fn ghost_prim(b: Boundary, interior: impl Fn(usize) -> Prim, n: usize, offset: isize, hi: bool, axis: Axis) -> Prim {
    let k = axis.index();
    match b {
        Boundary::Periodic => interior(offset.rem_euclid(n as isize) as usize),
        Boundary::Outflow => interior(if hi { n - 1 } else { 0 }),
        Boundary::Reflective => {
            let src = if hi { 2 * n as isize - 1 - offset } else { -1 - offset };
            let mut p = interior(src as usize);
            p.v[k] = -p.v[k];
            p
        }
        Boundary::Inflow(p) => p,
    }
}

/// Fills `line` (length `n + 2g`) with ghosted primitive states along one axis.
fn fill_line(
    line: &mut [Prim],
    n: usize,
    interior: impl Fn(usize) -> Prim + Copy,
    sides: (Boundary, Boundary),
    axis: Axis,
) {
    for i in 0..n {
        line[GHOST + i] = interior(i);
    }
    for g in 0..GHOST {
        let lo = -(g as isize) - 1;
        line[GHOST - 1 - g] = ghost_prim(sides.0, interior, n, lo, false, axis);
        let hi = (n + g) as isize;
        line[GHOST + n + g] = ghost_prim(sides.1, interior, n, hi, true, axis);
    }
}

/// Interface fluxes of one grid line. `cells` holds `n + 2g` ghosted cells
/// and `fluxes` receives the `n + 1` fluxes at the faces of the `n`
/// interior cells.
#[allow(clippy::too_many_arguments)]
fn line_fluxes<const N: usize>(
    eos: &Eos,
    scheme: Scheme,
    mode: DissipationMode,
    axis: Axis,
    t: f64,
    cells: &[Cell<N>],
    pairs: &mut Vec<[f64; N]>,
    fluxes: &mut [[f64; N]],
) -> Result<()> {
    let len = cells.len();
    let n = len - 2 * GHOST;
    debug_assert_eq!(fluxes.len(), n + 1);
    if scheme == Scheme::Llf {
        for (q, f) in fluxes.iter_mut().enumerate() {
            let (l, r) = (&cells[GHOST - 1 + q].prim, &cells[GHOST + q].prim);
            *f = llf_flux(eos, l, r, axis);
        }
        return Ok(());
    }

    let k = scheme.ec_k();
    let coeffs = alpha(k)?;
    // pairs[(r - 1) * len + m] = F̃(cell m, cell m + r)
    pairs.clear();
    pairs.resize(k * len, [0.0; N]);
    for r in 1..=k {
        for m in (GHOST - k)..(GHOST + n) {
            pairs[(r - 1) * len + m] = ec_flux(eos, &cells[m].ec, &cells[m + r].ec, axis);
        }
    }
    let recon = scheme.recon();
    let non_es = scheme.non_es_coefficient(t);
    for (q, f) in fluxes.iter_mut().enumerate() {
        let c = GHOST - 1 + q;
        let mut acc = [0.0; N];
        for (ri, a) in coeffs.iter().enumerate() {
            for s in 0..=ri {
                let p = &pairs[ri * len + c - s];
                for comp in 0..N {
                    acc[comp] += a * p[comp];
                }
            }
        }
        if recon.is_some() || non_es.is_some() {
            let avg = interface_average_ec(eos, &cells[c].ec, &cells[c + 1].ec);
            let eigs = scaled_eigs_at::<N>(&avg, axis)?;
            if let Some(recon) = recon {
                let hw = recon.half_width();
                let mut w = [[0.0; N]; 8];
                for (j, cell) in cells[c + 1 - hw..c + 1 + hw].iter().enumerate() {
                    w[j] = cell.w;
                }
                let d = es_dissipation(&eigs, &w[..2 * hw], recon, mode);
                for comp in 0..N {
                    acc[comp] -= d[comp];
                }
            } else if let Some(coef) = non_es {
                let mut jump = [0.0; N];
                for comp in 0..N {
                    jump[comp] = cells[c + 1].w[comp] - cells[c].w[comp];
                }
                let omega = scale_entropy_vars(&eigs, &jump);
                let abs = abs_lambda(&eigs, mode);
                let d = apply_scaled(&eigs, &abs, &omega);
                for comp in 0..N {
                    acc[comp] -= coef * d[comp];
                }
            }
        }
        *f = acc;
    }
    Ok(())
}

/// Local Lax-Friedrichs flux `½(F_L + F_R) − ½ α (U_R − U_L)`.
pub fn llf_flux<const N: usize>(eos: &Eos, l: &Prim, r: &Prim, axis: Axis) -> [f64; N] {
    let fl: [f64; N] = flux(eos, l, axis);
    let fr: [f64; N] = flux(eos, r, axis);
    let ul: [f64; N] = prim_to_cons(eos, l);
    let ur: [f64; N] = prim_to_cons(eos, r);
    let a = max_abs_eigenvalue::<N>(eos, l, axis).max(max_abs_eigenvalue::<N>(eos, r, axis));
    let mut f = [0.0; N];
    for c in 0..N {
        f[c] = 0.5 * (fl[c] + fr[c]) - 0.5 * a * (ur[c] - ul[c]);
    }
    f
}

/// Semi-discrete solver on a uniform grid with `N = d + 2` unknowns per cell.
#[derive(Debug, Clone)]
pub struct Solver<const N: usize> {
    pub grid: Grid,
    pub eos: Eos,
    pub scheme: Scheme,
    pub mode: DissipationMode,
    pub bc: BoundarySpec,
    prim: Vec<Prim>,
    scratch: Vec<Prim>,
    padded: Vec<Cell<N>>,
    y_diff: Vec<[f64; N]>,
}

pub type Solver1d = Solver<3>;
pub type Solver2d = Solver<4>;

impl<const N: usize> Solver<N> {
    pub fn new(grid: Grid, eos: Eos, scheme: Scheme, mode: DissipationMode, bc: BoundarySpec) -> Result<Self> {
        if grid.dim + 2 != N {
            return Err(Error::Config(format!(
                "a {}-dimensional grid needs {} unknowns, got {N}",
                grid.dim,
                grid.dim + 2
            )));
        }
        bc.validate()?;
        let cells = grid.cells();
        Ok(Solver {
            grid,
            eos,
            scheme,
            mode,
            bc,
            prim: vec![Prim::default(); cells],
            scratch: vec![Prim::default(); cells],
            padded: vec![Cell::default(); grid.padded_nx() * grid.padded_ny()],
            y_diff: if grid.dim == 2 { vec![[0.0; N]; cells] } else { Vec::new() },
        })
    }

    /// Samples initial primitives at cell centres and returns the
    /// conservative state, row-major over `(j, i)`.
    pub fn initialize(&mut self, sampler: impl Fn(f64, f64) -> Prim) -> Result<Vec<[f64; N]>> {
        let mut u = Vec::with_capacity(self.grid.cells());
        for j in 0..self.grid.ny {
            for i in 0..self.grid.nx {
                let p = sampler(self.grid.x(i), self.grid.y(j));
                p.check_admissible().map_err(|e| match e {
                    Error::Domain(d) => Error::Domain(format!("initial state at cell ({i}, {j}): {d}")),
                    other => other,
                })?;
                self.prim[j * self.grid.nx + i] = p;
                u.push(prim_to_cons(&self.eos, &p));
            }
        }
        Ok(u)
    }

    /// Primitive states of the most recent recovery.
    pub fn prims(&self) -> &[Prim] {
        &self.prim
    }

    fn recover_into(eos: &Eos, nx: usize, u: &[[f64; N]], guess: &[Prim], out: &mut [Prim]) -> Result<()> {
        out.par_iter_mut().zip(u.par_iter()).zip(guess.par_iter()).enumerate().try_for_each(|(idx, ((o, ui), g))| {
            let hint = if g.p > 0.0 { Some(g.p) } else { None };
            *o = cons_to_prim(eos, ui, hint).map_err(|e| e.at_cell([idx % nx, idx / nx]))?;
            Ok(())
        })
    }

    /// Recovers primitives from `u`, warm-started from the previous ones.
    pub fn recover(&mut self, u: &[[f64; N]]) -> Result<()> {
        self.scratch.copy_from_slice(&self.prim);
        Self::recover_into(&self.eos, self.grid.nx, u, &self.scratch, &mut self.prim)
    }

    fn fill_padded(&mut self) {
        let g = self.grid;
        let eos = self.eos;
        let px = g.padded_nx();
        let prim = &self.prim;
        let mut line = vec![Prim::default(); px.max(g.padded_ny())];
        if g.dim == 1 {
            fill_line(&mut line[..px], g.nx, |i| prim[i], self.bc.sides(Axis::X), Axis::X);
            for (cell, p) in self.padded.iter_mut().zip(&line[..px]) {
                *cell = Cell::new(&eos, *p);
            }
            return;
        }
        let py = g.padded_ny();
        let mut grid_prims = vec![Prim::default(); px * py];
        for j in 0..g.ny {
            let row = &mut grid_prims[(j + GHOST) * px..(j + GHOST + 1) * px];
            fill_line(row, g.nx, |i| prim[j * g.nx + i], self.bc.sides(Axis::X), Axis::X);
        }
        let sides = self.bc.sides(Axis::Y);
        for ii in 0..px {
            let column: Vec<Prim> = (0..g.ny).map(|j| grid_prims[(j + GHOST) * px + ii]).collect();
            fill_line(&mut line[..py], g.ny, |j| column[j], sides, Axis::Y);
            for (jj, p) in line[..py].iter().enumerate() {
                grid_prims[jj * px + ii] = *p;
            }
        }
        self.padded.par_iter_mut().zip(grid_prims.par_iter()).for_each(|(c, p)| *c = Cell::new(&eos, *p));
    }

    /// Semi-discrete right-hand side `L(U)` at time `t`.
    pub fn rhs_cells(&mut self, t: f64, u: &[[f64; N]], out: &mut [[f64; N]]) -> Result<RhsInfo> {
        self.recover(u)?;
        self.fill_padded();
        let g = self.grid;
        let (eos, scheme, mode) = (self.eos, self.scheme, self.mode);
        let px = g.padded_nx();
        let padded = &self.padded;
        let inv_dx = 1.0 / g.dx;
        out.par_chunks_mut(g.nx).enumerate().try_for_each_init(
            || (Vec::new(), vec![[0.0; N]; g.nx + 1]),
            |(pairs, fluxes), (j, row_out)| -> Result<()> {
                let row = if g.dim == 1 { 0 } else { j + GHOST };
                let cells = &padded[row * px..(row + 1) * px];
                line_fluxes(&eos, scheme, mode, Axis::X, t, cells, pairs, fluxes).map_err(|e| e.at_cell([0, j]))?;
                for (i, o) in row_out.iter_mut().enumerate() {
                    for c in 0..N {
                        o[c] = -(fluxes[i + 1][c] - fluxes[i][c]) * inv_dx;
                    }
                }
                Ok(())
            },
        )?;
        if g.dim == 2 {
            let inv_dy = 1.0 / g.dy;
            let py = g.padded_ny();
            // y_diff is stored column-major: y_diff[i * ny + j].
            self.y_diff.par_chunks_mut(g.ny).enumerate().try_for_each_init(
                || (Vec::new(), vec![[0.0; N]; g.ny + 1], Vec::with_capacity(py)),
                |(pairs, fluxes, column), (i, col_out)| -> Result<()> {
                    column.clear();
                    column.extend((0..py).map(|jj| padded[jj * px + i + GHOST]));
                    line_fluxes(&eos, scheme, mode, Axis::Y, t, column, pairs, fluxes)
                        .map_err(|e| e.at_cell([i, 0]))?;
                    for (j, o) in col_out.iter_mut().enumerate() {
                        for c in 0..N {
                            o[c] = -(fluxes[j + 1][c] - fluxes[j][c]) * inv_dy;
                        }
                    }
                    Ok(())
                },
            )?;
            for j in 0..g.ny {
                for i in 0..g.nx {
                    let d = &self.y_diff[i * g.ny + j];
                    let o = &mut out[j * g.nx + i];
                    for c in 0..N {
                        o[c] += d[c];
                    }
                }
            }
        }
        Ok(self.rhs_info(out))
    }

    fn rhs_info(&self, out: &[[f64; N]]) -> RhsInfo {
        let g = &self.grid;
        let vol = g.cell_volume();
        let px = g.padded_nx();
        let mut rate = 0.0;
        for j in 0..g.ny {
            let row = if g.dim == 1 { 0 } else { j + GHOST };
            for i in 0..g.nx {
                let w = &self.padded[row * px + i + GHOST].w;
                let l = &out[j * g.nx + i];
                rate += (0..N).map(|c| w[c] * l[c]).sum::<f64>();
            }
        }
        RhsInfo { entropy_rate: rate * vol, boundary_entropy_flux: self.boundary_entropy_flux() }
    }

    /// Net outward physical entropy flux through the non-periodic sides,
    /// evaluated at the boundary cells.
    pub fn boundary_entropy_flux(&self) -> f64 {
        let g = &self.grid;
        let q = |i: usize, j: usize, axis: Axis| entropy_flux_q(&self.eos, &self.prim[j * g.nx + i], axis);
        let mut total = 0.0;
        if self.bc.x_lo != Boundary::Periodic {
            let area = if g.dim == 1 { 1.0 } else { g.dy };
            for j in 0..g.ny {
                total += (q(g.nx - 1, j, Axis::X) - q(0, j, Axis::X)) * area;
            }
        }
        if g.dim == 2 && self.bc.y_lo != Boundary::Periodic {
            for i in 0..g.nx {
                total += (q(i, g.ny - 1, Axis::Y) - q(i, 0, Axis::Y)) * g.dx;
            }
        }
        total
    }

    /// Stable step from the current primitives: `cfl Δx / max|λ|` in 1D and
    /// `cfl / (max|λ₁|/Δx + max|λ₂|/Δy)` in 2D.
    pub fn cfl_dt(&self, cfl: f64) -> f64 {
        let eos = self.eos;
        let lx = self.prim.iter().map(|p| max_abs_eigenvalue::<N>(&eos, p, Axis::X)).fold(0.0f64, f64::max);
        if self.grid.dim == 1 {
            cfl * self.grid.dx / lx
        } else {
            let ly = self.prim.iter().map(|p| max_abs_eigenvalue::<N>(&eos, p, Axis::Y)).fold(0.0f64, f64::max);
            cfl / (lx / self.grid.dx + ly / self.grid.dy)
        }
    }

    /// Total entropy `Σ η(Uᵢ) ΔV` of the current primitives.
    pub fn total_entropy(&self) -> f64 {
        let vol = self.grid.cell_volume();
        self.prim.iter().map(|p| entropy_eta(&self.eos, p)).sum::<f64>() * vol
    }
}

impl<const N: usize> SemiDiscrete for Solver<N> {
    fn rhs(&mut self, t: f64, u: &[f64], out: &mut [f64]) -> Result<RhsInfo> {
        let (u, _) = u.as_chunks::<N>();
        let (out, _) = out.as_chunks_mut::<N>();
        self.rhs_cells(t, u, out)
    }

    fn entropy(&mut self, u: &[f64], direction: &[f64]) -> Result<EntropyEval> {
        let (u, _) = u.as_chunks::<N>();
        let (d, _) = direction.as_chunks::<N>();
        Self::recover_into(&self.eos, self.grid.nx, u, &self.prim, &mut self.scratch)?;
        let eos = self.eos;
        let vol = self.grid.cell_volume();
        let mut e = EntropyEval::default();
        for (p, di) in self.scratch.iter().zip(d) {
            let eta = entropy_eta(&eos, p);
            let w: [f64; N] = entropy_vars(&eos, p);
            e.total += eta;
            e.magnitude += eta.abs();
            e.slope += (0..N).map(|c| w[c] * di[c]).sum::<f64>();
        }
        e.total *= vol;
        e.magnitude *= vol;
        e.slope *= vol;
        Ok(e)
    }
}
