//! Eigenvalues, scaled right eigenvectors, interface averaging and the
//! Roe and Rusanov dissipation matrices in one and two dimensions.
//!
//! The scaled eigenvector matrix `R` diagonalises the flux Jacobian and
//! factors the entropy Hessian as `R Rᵀ = ∂U/∂W`, so `D = R|Λ|Rᵀ` is
//! symmetric positive semi-definite.

use std::fmt;

use crate::eos::{sound_speed_sq_with, Eos};
use crate::error::{Error, Result};
use crate::flux_ec::EcState;
use crate::means::{amean, logmean};
use crate::state::{Axis, Prim};

/// Choice of `|Λ|` in the dissipation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DissipationMode {
    /// `diag(|λ₁|, …, |λ_N|)`.
    Roe,
    /// `max_j |λ_j| · I`.
    #[default]
    Rusanov,
}

impl DissipationMode {
    pub fn from_name(name: &str) -> Result<DissipationMode> {
        match name {
            "roe" => Ok(DissipationMode::Roe),
            "rusanov" => Ok(DissipationMode::Rusanov),
            _ => Err(Error::Config(format!("unknown dissipation '{name}', expected one of roe, rusanov"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DissipationMode::Roe => "roe",
            DissipationMode::Rusanov => "rusanov",
        }
    }
}

impl fmt::Display for DissipationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// State at which the eigenstructure is evaluated.
///
/// At an interface `ρ̂` is the logarithmic mean of `ρ`, `θ̂ = 1/{{z₂}}_ln`,
/// `v̂` the arithmetic mean and `ĥ = ℰ + θ̂`. The sound speed and `e′` are
/// derived from these values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceAverage {
    pub rho: f64,
    pub theta: f64,
    pub v: [f64; 2],
    pub h: f64,
    pub e_prime: f64,
    pub cs2: f64,
}

impl InterfaceAverage {
    /// The pointwise state itself, with `h = h(θ)`.
    pub fn at_state(eos: &Eos, prim: &Prim) -> InterfaceAverage {
        let theta = prim.theta();
        let h = eos.enthalpy(theta);
        let e_prime = eos.e_prime(theta);
        InterfaceAverage { rho: prim.rho, theta, v: prim.v, h, e_prime, cs2: sound_speed_sq_with(theta, h, e_prime) }
    }

    #[inline]
    pub fn lorentz(&self) -> f64 {
        1.0 / (1.0 - self.v[0] * self.v[0] - self.v[1] * self.v[1]).sqrt()
    }
}

/// Interface average of two primitive states.
pub fn interface_average(eos: &Eos, l: &Prim, r: &Prim) -> InterfaceAverage {
    interface_average_ec(eos, &EcState::new(eos, l), &EcState::new(eos, r))
}

/// Interface average from precomputed parameter variables.
#[inline]
pub fn interface_average_ec(eos: &Eos, l: &EcState, r: &EcState) -> InterfaceAverage {
    let theta = 1.0 / logmean(l.z2, r.z2);
    let h = eos.ec_coefficient_aux(l.z2, &l.aux, r.z2, &r.aux) + theta;
    let e_prime = eos.e_prime(theta);
    InterfaceAverage {
        rho: logmean(l.z1, r.z1),
        theta,
        v: [amean(l.z3 / l.gamma, r.z3 / r.gamma), amean(l.z4 / l.gamma, r.z4 / r.gamma)],
        h,
        e_prime,
        cs2: sound_speed_sq_with(theta, h, e_prime),
    }
}

/// Scaled eigenvector matrix `R` (columns are eigenvectors), eigenvalues
/// and the scaling coefficients `d_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledEigs<const N: usize> {
    pub r: [[f64; N]; N],
    pub lambda: [f64; N],
    pub d: [f64; N],
}

fn acoustic_speeds(vn: f64, vt: f64, cs2: f64) -> (f64, f64) {
    let cs = cs2.sqrt();
    let vv = vn * vn + vt * vt;
    let root = cs * ((1.0 - vv) * (1.0 - vn * vn - vt * vt * cs2)).sqrt();
    let denom = 1.0 - vv * cs2;
    ((vn * (1.0 - cs2) - root) / denom, (vn * (1.0 - cs2) + root) / denom)
}

/// Eigenvalues of the flux Jacobian in direction `axis`, in ascending
/// order `(λ₋, v_n, [v_n,] λ₊)`.
pub fn eigenvalues_at<const N: usize>(avg: &InterfaceAverage, axis: Axis) -> [f64; N] {
    let mut lam = [0.0; N];
    if N == 3 {
        let (v, c) = (avg.v[0], avg.cs2.sqrt());
        lam[0] = (v - c) / (1.0 - v * c);
        lam[1] = v;
        lam[2] = (v + c) / (1.0 + v * c);
    } else {
        let n = axis.index();
        let (vn, vt) = (avg.v[n], avg.v[1 - n]);
        let (lm, lp) = acoustic_speeds(vn, vt, avg.cs2);
        lam[0] = lm;
        lam[1] = vn;
        lam[2] = vn;
        lam[3] = lp;
    }
    lam
}

/// Eigenvalues at a primitive state.
pub fn eigenvalues<const N: usize>(eos: &Eos, prim: &Prim, axis: Axis) -> [f64; N] {
    eigenvalues_at(&InterfaceAverage::at_state(eos, prim), axis)
}

/// Largest characteristic speed `max_j |λ_j|` at a primitive state.
#[inline]
pub fn max_abs_eigenvalue<const N: usize>(eos: &Eos, prim: &Prim, axis: Axis) -> f64 {
    let lam: [f64; N] = eigenvalues(eos, prim, axis);
    lam.iter().fold(0.0f64, |m, l| m.max(l.abs()))
}

/// Scaled eigenvectors at an averaged (or pointwise) state.
pub fn scaled_eigs_at<const N: usize>(avg: &InterfaceAverage, axis: Axis) -> Result<ScaledEigs<N>> {
    let lambda: [f64; N] = eigenvalues_at(avg, axis);
    let InterfaceAverage { rho, theta, h, e_prime: ep, cs2, .. } = *avg;
    let cs = cs2.sqrt();
    let gamma = avg.lorentz();
    let delta_theta = h - theta * (1.0 + ep);
    let mut rt = [[0.0; N]; N];
    let mut d = [0.0; N];
    if N == 3 {
        let v = avg.v[0];
        let cols = [
            [1.0, (v - cs) * h * gamma, (1.0 - v * cs) * h * gamma],
            [1.0, delta_theta * gamma * v, delta_theta * gamma],
            [1.0, (v + cs) * h * gamma, (1.0 + v * cs) * h * gamma],
        ];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                rt[i][j] = col[i];
            }
        }
        let base = rho * ep / (2.0 * (1.0 + ep));
        let skew = rho * theta * v / (2.0 * cs * h);
        d[0] = (base - skew) * gamma;
        d[1] = rho * gamma / (1.0 + ep);
        d[2] = (base + skew) * gamma;
    } else {
        let n = axis.index();
        let (vn, vt) = (avg.v[n], avg.v[1 - n]);
        let g2 = gamma * gamma;
        let one_m = 1.0 - vn * vn;
        let dm = one_m / (1.0 - vn * lambda[0]);
        let dp = one_m / (1.0 - vn * lambda[3]);
        // Columns in local (normal, tangential) component order.
        let cols = [
            [1.0, h * gamma * dm * lambda[0], h * gamma * vt, h * gamma * dm],
            [1.0 / gamma, delta_theta * vn, delta_theta * vt, delta_theta],
            [gamma * vt, 2.0 * h * g2 * vn * vt, h * (1.0 + 2.0 * g2 * vt * vt), 2.0 * h * g2 * vt],
            [1.0, h * gamma * dp * lambda[3], h * gamma * vt, h * gamma * dp],
        ];
        let m = rho * gamma * (ep / (1.0 + ep) - theta * vt * vt / (h * one_m));
        let nn = rho * theta * vn * (1.0 - vn * vn - vt * vt * cs2).sqrt() / (h * cs * one_m);
        let dl = [0.5 * (m - nn), rho * gamma.powi(3) / (1.0 + ep), rho * theta / (h * one_m * gamma), 0.5 * (m + nn)];
        let row_of = |i: usize| if n == 0 { i } else { [0, 2, 1, 3][i] };
        let col_of = |j: usize| if n == 0 { j } else { [0, 2, 1, 3][j] };
        for (j, col) in cols.iter().enumerate() {
            for i in 0..4 {
                rt[row_of(i)][col_of(j)] = col[i];
            }
            d[col_of(j)] = dl[j];
        }
    }
    for (j, &dj) in d.iter().enumerate() {
        if !(dj >= 0.0) {
            return Err(Error::Invariant(format!(
                "negative scaling coefficient d[{j}] = {dj:e} at averaged state {avg:?}, direction {axis:?}"
            )));
        }
    }
    let mut r = rt;
    for j in 0..N {
        let s = d[j].sqrt();
        for row in r.iter_mut() {
            row[j] *= s;
        }
    }
    Ok(ScaledEigs { r, lambda, d })
}

/// Scaled eigenvectors at a primitive state.
pub fn scaled_eigenvectors<const N: usize>(eos: &Eos, prim: &Prim, axis: Axis) -> Result<ScaledEigs<N>> {
    scaled_eigs_at(&InterfaceAverage::at_state(eos, prim), axis)
}

/// Diagonal of `|Λ|` for the chosen mode.
#[inline]
pub fn abs_lambda<const N: usize>(eigs: &ScaledEigs<N>, mode: DissipationMode) -> [f64; N] {
    let mut a = eigs.lambda.map(f64::abs);
    if mode == DissipationMode::Rusanov {
        let m = a.iter().fold(0.0f64, |m, x| m.max(*x));
        a = [m; N];
    }
    a
}

/// Dissipation matrix `D = R|Λ|Rᵀ`.
pub fn dissipation_matrix<const N: usize>(eigs: &ScaledEigs<N>, mode: DissipationMode) -> [[f64; N]; N] {
    let a = abs_lambda(eigs, mode);
    let mut dm = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..N {
            let mut s = 0.0;
            for k in 0..N {
                s += eigs.r[i][k] * a[k] * eigs.r[j][k];
            }
            dm[i][j] = s;
        }
    }
    dm
}

/// `ω = Rᵀ W`.
#[inline]
pub fn scale_entropy_vars<const N: usize>(eigs: &ScaledEigs<N>, w: &[f64; N]) -> [f64; N] {
    let mut omega = [0.0; N];
    for k in 0..N {
        let mut s = 0.0;
        for i in 0..N {
            s += eigs.r[i][k] * w[i];
        }
        omega[k] = s;
    }
    omega
}

/// `R (|Λ| ∘ jump)` for a jump in the scaled entropy variables.
#[inline]
pub fn apply_scaled<const N: usize>(eigs: &ScaledEigs<N>, abs: &[f64; N], jump: &[f64; N]) -> [f64; N] {
    let mut out = [0.0; N];
    for i in 0..N {
        let mut s = 0.0;
        for k in 0..N {
            s += eigs.r[i][k] * abs[k] * jump[k];
        }
        out[i] = s;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::du_dw;
    use approx::assert_relative_eq;

    const EOSES: [Eos; 4] = [Eos::Ideal { gamma: 5.0 / 3.0 }, Eos::Rc, Eos::Ip, Eos::Tm];

    #[test]
    fn eigenvalues_at_rest() {
        for eos in EOSES {
            let p1 = Prim::new_1d(1.0, 0.0, 0.7);
            let c = eos.sound_speed_sq(0.7).sqrt();
            let l: [f64; 3] = eigenvalues(&eos, &p1, Axis::X);
            assert_relative_eq!(l[0], -c, max_relative = 1e-15);
            assert_eq!(l[1], 0.0);
            assert_relative_eq!(l[2], c, max_relative = 1e-15);
            let p2 = Prim::new_2d(1.0, 0.0, 0.0, 0.7);
            for axis in [Axis::X, Axis::Y] {
                let l: [f64; 4] = eigenvalues(&eos, &p2, axis);
                assert_relative_eq!(l[0], -c, max_relative = 1e-15);
                assert_eq!((l[1], l[2]), (0.0, 0.0));
                assert_relative_eq!(l[3], c, max_relative = 1e-15);
            }
        }
    }

    #[test]
    fn two_d_eigenvalues_reduce_to_one_d() {
        let eos = Eos::Tm;
        let p = Prim::new_2d(0.8, 0.6, 0.0, 2.0);
        let l1: [f64; 3] = eigenvalues(&eos, &p, Axis::X);
        let l2: [f64; 4] = eigenvalues(&eos, &p, Axis::X);
        assert_relative_eq!(l1[0], l2[0], max_relative = 1e-14);
        assert_relative_eq!(l1[2], l2[3], max_relative = 1e-14);
    }

    #[test]
    fn scaling_coefficients_at_rest() {
        for eos in EOSES {
            let p = Prim::new_1d(1.3, 0.0, 0.4);
            let e = scaled_eigenvectors::<3>(&eos, &p, Axis::X).unwrap();
            let ep = eos.e_prime(p.theta());
            let expected = p.rho * ep / (2.0 * (1.0 + ep));
            assert_relative_eq!(e.d[0], expected, max_relative = 1e-15);
            assert_relative_eq!(e.d[2], expected, max_relative = 1e-15);
        }
    }

    fn rr_t_error<const N: usize>(eos: &Eos, p: &Prim, axis: Axis) -> f64 {
        let e: ScaledEigs<N> = scaled_eigenvectors(eos, p, axis).unwrap();
        let target: [[f64; N]; N] = du_dw(eos, p);
        let (mut num, mut den) = (0.0, 0.0);
        for i in 0..N {
            for j in 0..N {
                let s: f64 = (0..N).map(|k| e.r[i][k] * e.r[j][k]).sum();
                num += (s - target[i][j]).powi(2);
                den += target[i][j].powi(2);
            }
        }
        (num / den).sqrt()
    }

    #[test]
    fn factorises_entropy_hessian() {
        for eos in EOSES {
            let p = Prim::new_2d(0.7, 0.5, -0.3, 1.9);
            assert!(rr_t_error::<3>(&eos, &Prim::new_1d(0.7, -0.8, 1.9), Axis::X) < 1e-12);
            assert!(rr_t_error::<4>(&eos, &p, Axis::X) < 1e-12);
            assert!(rr_t_error::<4>(&eos, &p, Axis::Y) < 1e-12);
        }
    }

    #[test]
    fn rusanov_matrix_is_scaled_hessian() {
        let eos = Eos::Rc;
        let p = Prim::new_2d(0.7, 0.5, -0.3, 1.9);
        let e: ScaledEigs<4> = scaled_eigenvectors(&eos, &p, Axis::Y).unwrap();
        let dm = dissipation_matrix(&e, DissipationMode::Rusanov);
        let lmax = e.lambda.iter().fold(0.0f64, |m, l| m.max(l.abs()));
        let h: [[f64; 4]; 4] = du_dw(&eos, &p);
        for i in 0..4 {
            for j in 0..4 {
                assert_relative_eq!(dm[i][j], lmax * h[i][j], max_relative = 1e-11, epsilon = 1e-12);
                assert!((dm[i][j] - dm[j][i]).abs() <= 1e-14 * dm[i][i].abs().max(dm[j][j].abs()));
            }
        }
    }

    #[test]
    fn average_of_equal_states() {
        let eos = Eos::Ip;
        let p = Prim::new_2d(0.7, 0.5, -0.3, 1.9);
        let a = interface_average(&eos, &p, &p);
        let b = InterfaceAverage::at_state(&eos, &p);
        assert_relative_eq!(a.rho, b.rho, max_relative = 1e-15);
        assert_relative_eq!(a.theta, b.theta, max_relative = 1e-15);
        assert_relative_eq!(a.h, b.h, max_relative = 1e-13);
        assert_relative_eq!(a.v[0], b.v[0], max_relative = 1e-15);
        assert_relative_eq!(a.v[1], b.v[1], max_relative = 1e-15);
    }

    #[test]
    fn ideal_gas_averaged_enthalpy() {
        let g = 1.4;
        let eos = Eos::Ideal { gamma: g };
        let (l, r) = (Prim::new_1d(1.0, 0.1, 2.0), Prim::new_1d(0.3, -0.2, 0.5));
        let a = interface_average(&eos, &l, &r);
        let z2 = logmean(l.rho / l.p, r.rho / r.p);
        assert_relative_eq!(a.h, 1.0 + g / ((g - 1.0) * z2), max_relative = 1e-14);
    }

    #[test]
    fn mode_names() {
        assert_eq!(DissipationMode::from_name("roe").unwrap(), DissipationMode::Roe);
        assert_eq!(DissipationMode::default().name(), "rusanov");
        assert!(DissipationMode::from_name("hll").is_err());
    }
}
