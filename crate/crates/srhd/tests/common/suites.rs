//! Sampled property metrics shared by the individual suites and the
//! acceptance report. Every function returns the worst value over its sample
//! so callers decide on the bound.

use nalgebra::DMatrix;
use srhd::dissipation::{dissipation_matrix, scaled_eigenvectors, DissipationMode};
use srhd::eos::Eos;
use srhd::flux_ec::{ec_flux_1d, ec_flux_2d};
use srhd::grid_solver::{Boundary, BoundarySpec, Grid, Scheme, Solver};
use srhd::state::{cons_to_prim, du_dv, du_dw, entropy_vars, flux, potential_psi, prim_to_cons, Axis, Prim};
use srhd::timeint::{Integrator, Stepper};

use super::{luminal_prim, random_prim, rng};

/// Relative defect of `[[W]]ᵀ F̃ = [[ψ]]`, scaled by the size of the summed
/// terms.
pub fn ec_defect<const N: usize>(eos: &Eos, l: &Prim, r: &Prim, f: &[f64; N], axis: Axis) -> f64 {
    let wl: [f64; N] = entropy_vars(eos, l);
    let wr: [f64; N] = entropy_vars(eos, r);
    let dpsi = potential_psi(r, axis) - potential_psi(l, axis);
    let mut lhs = 0.0;
    let mut scale = dpsi.abs();
    for c in 0..N {
        let term = (wr[c] - wl[c]) * f[c];
        lhs += term;
        scale += term.abs();
    }
    (lhs - dpsi).abs() / scale.max(f64::MIN_POSITIVE)
}

/// Worst EC defect over `pairs` random pairs; in two dimensions both axes
/// are checked for every pair.
pub fn ec_identity_worst(eos: &Eos, dim: usize, pairs: usize, seed: u64) -> f64 {
    let mut rng = rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let (l, r) = (random_prim(&mut rng, dim), random_prim(&mut rng, dim));
        if dim == 1 {
            let f = ec_flux_1d(eos, &l, &r).unwrap();
            worst = worst.max(ec_defect(eos, &l, &r, &f, Axis::X));
        } else {
            for axis in [Axis::X, Axis::Y] {
                let f = ec_flux_2d(eos, &l, &r, axis).unwrap();
                worst = worst.max(ec_defect(eos, &l, &r, &f, axis));
            }
        }
    }
    worst
}

/// Worst relative round-trip error over `ρ`, `p` and the velocity (measured
/// against the speed so that tiny components do not dominate).
pub fn roundtrip_error<const N: usize>(eos: &Eos, p: &Prim, guess: Option<f64>) -> f64 {
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
    let u: [f64; N] = prim_to_cons(eos, p);
    let q = cons_to_prim(eos, &u, guess).unwrap_or_else(|e| panic!("{}: {p:?}: {e}", eos.name()));
    let vs = p.speed_sq().sqrt().max(1e-300);
    let dv = ((q.v[0] - p.v[0]).powi(2) + (q.v[1] - p.v[1]).powi(2)).sqrt() / vs;
    rel(q.rho, p.rho).max(rel(q.p, p.p)).max(if p.speed_sq() > 0.0 { dv } else { 0.0 })
}

/// Worst round trip over `samples` states, every tenth with `|v| = 0.99`.
/// Two-dimensional recoveries are seeded with a deliberately poor guess.
pub fn con2prim_worst(eos: &Eos, dim: usize, samples: usize, seed: u64) -> f64 {
    let mut rng = rng(seed);
    let mut worst = 0.0f64;
    for i in 0..samples {
        let p = if i % 10 == 0 { luminal_prim(&mut rng, dim) } else { random_prim(&mut rng, dim) };
        let err =
            if dim == 1 { roundtrip_error::<3>(eos, &p, None) } else { roundtrip_error::<4>(eos, &p, Some(p.p * 1.7)) };
        worst = worst.max(err);
    }
    worst
}

fn to_dmatrix<const N: usize>(a: &[[f64; N]; N]) -> DMatrix<f64> {
    DMatrix::from_fn(N, N, |i, j| a[i][j])
}

/// `∂F/∂U = ∂F/∂V (∂U/∂V)⁻¹` with `∂F/∂V` from fourth-order central
/// differences.
pub fn flux_jacobian<const N: usize>(eos: &Eos, p: &Prim, axis: Axis) -> DMatrix<f64> {
    let mut dfdv = DMatrix::zeros(N, N);
    for c in 0..N {
        let h = match c {
            0 => 1e-4 * p.rho,
            c if c == N - 1 => 1e-4 * p.p,
            _ => 1e-5 * (1.0 - p.speed_sq()),
        };
        let f_at = |s: f64| -> [f64; N] {
            let mut q = *p;
            match c {
                0 => q.rho += s * h,
                c if c == N - 1 => q.p += s * h,
                c => q.v[c - 1] += s * h,
            }
            flux(eos, &q, axis)
        };
        let (m2, m1, p1, p2) = (f_at(-2.0), f_at(-1.0), f_at(1.0), f_at(2.0));
        for r in 0..N {
            dfdv[(r, c)] = (m2[r] - 8.0 * m1[r] + 8.0 * p1[r] - p2[r]) / (12.0 * h);
        }
    }
    let dudv = to_dmatrix(&du_dv::<N>(eos, p));
    dfdv * dudv.try_inverse().expect("dU/dV is invertible")
}

/// Worst eigenstructure defects over a sample.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EigenMetrics {
    /// `‖R Rᵀ − ∂U/∂W‖ / ‖∂U/∂W‖` in the max norm.
    pub rrt: f64,
    /// `‖A r − λ r‖ / (‖A‖ ‖r‖)` against the finite-difference Jacobian.
    pub eigenpair: f64,
    /// `‖D − Dᵀ‖ / ‖D‖` over both dissipation modes.
    pub asymmetry: f64,
    /// Smallest `λ_min(D) / ‖D‖` over both dissipation modes.
    pub psd_margin: f64,
}

impl EigenMetrics {
    fn merge(&mut self, o: EigenMetrics) {
        self.rrt = self.rrt.max(o.rrt);
        self.eigenpair = self.eigenpair.max(o.eigenpair);
        self.asymmetry = self.asymmetry.max(o.asymmetry);
        self.psd_margin = self.psd_margin.min(o.psd_margin);
    }
}

pub fn eigen_metrics<const N: usize>(eos: &Eos, p: &Prim, axis: Axis) -> EigenMetrics {
    let eigs = scaled_eigenvectors::<N>(eos, p, axis).unwrap_or_else(|e| panic!("{}: {e}", eos.name()));
    let r = to_dmatrix(&eigs.r);
    let dudw = to_dmatrix(&du_dw::<N>(eos, p));
    let rrt = (&r * r.transpose() - &dudw).amax() / dudw.amax();

    let a = flux_jacobian::<N>(eos, p, axis);
    let scale = a.amax();
    let mut eigenpair = 0.0f64;
    for j in 0..N {
        let col = r.column(j);
        let res = &a * col - col * eigs.lambda[j];
        eigenpair = eigenpair.max(res.amax() / (scale * col.amax()));
    }

    let (mut asymmetry, mut psd_margin) = (0.0f64, f64::INFINITY);
    for mode in [DissipationMode::Roe, DissipationMode::Rusanov] {
        let d = to_dmatrix(&dissipation_matrix(&eigs, mode));
        let scale = d.amax();
        asymmetry = asymmetry.max((&d - d.transpose()).amax() / scale);
        psd_margin = psd_margin.min(d.symmetric_eigen().eigenvalues.min() / scale);
    }
    EigenMetrics { rrt, eigenpair, asymmetry, psd_margin }
}

/// Worst eigenstructure metrics over `samples` states; two-dimensional
/// states are checked along both axes.
pub fn eigen_worst(eos: &Eos, dim: usize, samples: usize, seed: u64) -> EigenMetrics {
    let mut rng = rng(seed);
    let mut worst = EigenMetrics { psd_margin: f64::INFINITY, ..Default::default() };
    for _ in 0..samples {
        let p = random_prim(&mut rng, dim);
        if dim == 1 {
            worst.merge(eigen_metrics::<3>(eos, &p, Axis::X));
        } else {
            worst.merge(eigen_metrics::<4>(eos, &p, Axis::X));
            worst.merge(eigen_metrics::<4>(eos, &p, Axis::Y));
        }
    }
    worst
}

/// Hessian `∂W/∂U` of the entropy by fourth-order differences through
/// recovery.
pub fn entropy_hessian<const N: usize>(eos: &Eos, p: &Prim) -> DMatrix<f64> {
    let u: [f64; N] = prim_to_cons(eos, p);
    let scale = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut h = DMatrix::zeros(N, N);
    for c in 0..N {
        let step = 1e-6 * u[0].max(1e-6 * scale);
        let w_at = |s: f64| -> [f64; N] {
            let mut v = u;
            v[c] += s * step;
            let q = cons_to_prim(eos, &v, Some(p.p)).unwrap_or_else(|e| panic!("{}: {p:?}: {e}", eos.name()));
            entropy_vars(eos, &q)
        };
        let (m2, m1, p1, p2) = (w_at(-2.0), w_at(-1.0), w_at(1.0), w_at(2.0));
        for r in 0..N {
            h[(r, c)] = (m2[r] - 8.0 * m1[r] + 8.0 * p1[r] - p2[r]) / (12.0 * step);
        }
    }
    h
}

/// Smallest `λ_min(H) / tr(H)` of the symmetrised Hessian over `samples`
/// states.
pub fn convexity_margin(eos: &Eos, dim: usize, samples: usize, seed: u64) -> f64 {
    let mut rng = rng(seed);
    let mut margin = f64::INFINITY;
    for _ in 0..samples {
        let p = random_prim(&mut rng, dim);
        let h = if dim == 1 { entropy_hessian::<3>(eos, &p) } else { entropy_hessian::<4>(eos, &p) };
        let sym = (&h + h.transpose()) * 0.5;
        let trace = sym.trace();
        let min = sym.symmetric_eigen().eigenvalues.min();
        margin = margin.min(if trace > 0.0 { min / trace } else { f64::NEG_INFINITY });
    }
    margin
}

/// Largest deviation (relative in `ρ` and `p`, absolute in `v`) per variable
/// after 1000 SSP steps of a stationary contact with `ρ_L`, `ρ_R` and `p`
/// under Roe-type dissipation.
pub fn stationary_contact(eos: Eos, scheme: Scheme, rho_l: f64, rho_r: f64, p: f64) -> [f64; 3] {
    let grid = Grid::new_1d(80, 0.0, 1.0).unwrap();
    let bc = BoundarySpec::uniform(Boundary::Outflow);
    let mut s = Solver::<3>::new(grid, eos, scheme, DissipationMode::Roe, bc).unwrap();
    let init = |x: f64, _y: f64| Prim::new_1d(if x < 0.43 { rho_l } else { rho_r }, 0.0, p);
    let u0 = s.initialize(init).unwrap();
    let mut u: Vec<f64> = u0.as_flattened().to_vec();
    let mut stepper = Stepper::new(Integrator::SspRk3, u.len());
    let dt = s.cfl_dt(0.4);
    for n in 0..1000 {
        stepper.step(&mut s, n as f64 * dt, &mut u, dt).unwrap();
    }
    s.recover(u.as_chunks::<3>().0).unwrap();
    let mut worst = [0.0f64; 3];
    for (i, q) in s.prims().iter().enumerate() {
        let exact = init(grid.x(i), 0.0);
        worst[0] = worst[0].max(((q.rho - exact.rho) / exact.rho).abs());
        worst[1] = worst[1].max(q.v[0].abs());
        worst[2] = worst[2].max(((q.p - exact.p) / exact.p).abs());
    }
    worst
}
