//! Two-point entropy-conservative fluxes and their high-order combinations.
//!
//! The fluxes are written in the parameter variables `z₁ = ρ`, `z₂ = ρ/p`,
//! `z₃ = γv₁`, `z₄ = γv₂`; all means are taken in these variables and then
//! combined.

use crate::eos::{EcAux, Eos};
use crate::error::{Error, Result};
use crate::means::{amean, logmean};
use crate::state::{entropy_vars, potential_psi, Axis, Prim};

/// Parameter variables of a single state, with the EOS auxiliaries for ℰ.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EcState {
    pub z1: f64,
    pub z2: f64,
    pub z3: f64,
    pub z4: f64,
    pub gamma: f64,
    pub aux: EcAux,
}

impl EcState {
    #[inline]
    pub fn new(eos: &Eos, prim: &Prim) -> EcState {
        let gamma = prim.lorentz();
        let z2 = prim.rho / prim.p;
        EcState { z1: prim.rho, z2, z3: gamma * prim.v[0], z4: gamma * prim.v[1], gamma, aux: eos.ec_aux(z2) }
    }
}

/// Two-point entropy-conservative flux in direction `axis`.
///
/// `N = 3` gives the one-dimensional flux (only `Axis::X` is meaningful),
/// `N = 4` the two-dimensional one.
#[inline]
pub fn ec_flux<const N: usize>(eos: &Eos, l: &EcState, r: &EcState, axis: Axis) -> [f64; N] {
    let z1_ln = logmean(l.z1, r.z1);
    let z1_am = amean(l.z1, r.z1);
    let z2_am = amean(l.z2, r.z2);
    let z3_am = amean(l.z3, r.z3);
    let z4_am = if N == 4 { amean(l.z4, r.z4) } else { 0.0 };
    let g_am = amean(l.gamma, r.gamma);
    let ec = eos.ec_coefficient_aux(l.z2, &l.aux, r.z2, &r.aux);
    let p_hat = z1_am / z2_am;
    let denom = g_am * g_am - z3_am * z3_am - z4_am * z4_am;
    debug_assert!(denom > 0.0);
    let rho_h = (p_hat + z1_ln * ec) / denom;
    let mut f = [0.0; N];
    if N == 3 {
        f[0] = z1_ln * z3_am;
        f[1] = rho_h * z3_am * z3_am + p_hat;
        f[2] = rho_h * g_am * z3_am;
    } else {
        let zn = if axis == Axis::X { z3_am } else { z4_am };
        f[0] = z1_ln * zn;
        f[1] = rho_h * z3_am * zn;
        f[2] = rho_h * z4_am * zn;
        f[1 + axis.index()] += p_hat;
        f[3] = rho_h * g_am * zn;
    }
    f
}

/// One-dimensional two-point flux from primitive states.
pub fn ec_flux_1d(eos: &Eos, l: &Prim, r: &Prim) -> Result<[f64; 3]> {
    let (a, b) = (EcState::new(eos, l), EcState::new(eos, r));
    check_denominator(&a, &b, false)?;
    Ok(ec_flux(eos, &a, &b, Axis::X))
}

/// Two-dimensional two-point flux from primitive states.
pub fn ec_flux_2d(eos: &Eos, l: &Prim, r: &Prim, axis: Axis) -> Result<[f64; 4]> {
    let (a, b) = (EcState::new(eos, l), EcState::new(eos, r));
    check_denominator(&a, &b, true)?;
    Ok(ec_flux(eos, &a, &b, axis))
}

fn check_denominator(a: &EcState, b: &EcState, two_d: bool) -> Result<()> {
    let g = amean(a.gamma, b.gamma);
    let z3 = amean(a.z3, b.z3);
    let z4 = if two_d { amean(a.z4, b.z4) } else { 0.0 };
    let denom = g * g - z3 * z3 - z4 * z4;
    if denom > 0.0 {
        Ok(())
    } else {
        Err(Error::Invariant(format!("nonpositive flux denominator {denom}")))
    }
}

/// Exact rational coefficients `α_{k,r}` as `(numerator, denominator)` pairs.
pub const ALPHA_RATIONAL: [&[(i64, i64)]; 3] = [&[(1, 1)], &[(4, 3), (-1, 6)], &[(3, 2), (-3, 10), (1, 30)]];

/// Floating-point coefficients `α_{k,r}`, `r = 1..=k`, for orders `2k`.
pub fn alpha(k: usize) -> Result<&'static [f64]> {
    const A1: [f64; 1] = [1.0];
    const A2: [f64; 2] = [4.0 / 3.0, -1.0 / 6.0];
    const A3: [f64; 3] = [1.5, -0.3, 1.0 / 30.0];
    match k {
        1 => Ok(&A1),
        2 => Ok(&A2),
        3 => Ok(&A3),
        _ => Err(Error::Config(format!("entropy-conservative order 2k needs k in 1..=3, got {k}"))),
    }
}

/// High-order entropy-conservative flux `Σ_r α_{k,r} Σ_{s<r} F̃(U_{i−s}, U_{i−s+r})`
/// at the interface between `stencil[k-1]` and `stencil[k]`.
pub fn highorder_ec_flux<const N: usize>(eos: &Eos, stencil: &[EcState], k: usize, axis: Axis) -> Result<[f64; N]> {
    let coeffs = alpha(k)?;
    if stencil.len() < 2 * k {
        return Err(Error::Config(format!("order {} flux needs {} states, got {}", 2 * k, 2 * k, stencil.len())));
    }
    let i = k - 1;
    let mut f = [0.0; N];
    for (ri, a) in coeffs.iter().enumerate() {
        let r = ri + 1;
        for s in 0..r {
            let pair: [f64; N] = ec_flux(eos, &stencil[i - s], &stencil[i - s + r], axis);
            for c in 0..N {
                f[c] += a * pair[c];
            }
        }
    }
    Ok(f)
}

/// Numerical entropy flux `q̃ = {{W}}ᵀ F̃ − {{ψ}}` of the two-point flux.
pub fn ec_entropy_flux<const N: usize>(eos: &Eos, l: &Prim, r: &Prim, axis: Axis) -> f64 {
    let f: [f64; N] = ec_flux(eos, &EcState::new(eos, l), &EcState::new(eos, r), axis);
    let wl: [f64; N] = entropy_vars(eos, l);
    let wr: [f64; N] = entropy_vars(eos, r);
    let mut q = -amean(potential_psi(l, axis), potential_psi(r, axis));
    for c in 0..N {
        q += amean(wl[c], wr[c]) * f[c];
    }
    q
}

/// High-order numerical entropy flux combined with the same `α_{k,r}`.
pub fn highorder_ec_entropy_flux<const N: usize>(eos: &Eos, stencil: &[Prim], k: usize, axis: Axis) -> Result<f64> {
    let coeffs = alpha(k)?;
    if stencil.len() < 2 * k {
        return Err(Error::Config(format!("entropy flux of order {} needs {} states", 2 * k, 2 * k)));
    }
    let i = k - 1;
    let mut q = 0.0;
    for (ri, a) in coeffs.iter().enumerate() {
        let r = ri + 1;
        for s in 0..r {
            q += a * ec_entropy_flux::<N>(eos, &stencil[i - s], &stencil[i - s + r], axis);
        }
    }
    Ok(q)
}
