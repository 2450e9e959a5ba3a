//! ENO and WENO reconstruction of scaled entropy variables and the
//! dissipative part of the high-order entropy-stable fluxes.
//!
//! Every reconstruction acts on a stencil of `2k` values with the interface
//! between entries `k − 1` and `k`. The left-biased value `ω⁻` is built from
//! the left part of the stencil and the right-biased value `ω⁺` from its
//! mirror image, so both use the same formulas.

use crate::dissipation::{
    abs_lambda, apply_scaled, interface_average_ec, scale_entropy_vars, scaled_eigs_at, DissipationMode, ScaledEigs,
};
use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::flux_ec::{highorder_ec_flux, EcState};
use crate::state::{entropy_vars, Axis, Prim};

/// Reconstruction used for the interface jump `⟨⟨ω⟩⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recon {
    /// `⟨⟨ω⟩⟩ = [[ω]]`, the first-order entropy-stable flux.
    FirstOrder,
    /// Fourth-order ENO, which has the sign property by construction.
    Eno4,
    /// Fifth-order WENO followed by the sign switch.
    Weno5,
}

impl Recon {
    /// Number of cells on each side of the interface the stencil needs.
    pub fn half_width(self) -> usize {
        match self {
            Recon::FirstOrder => 1,
            Recon::Eno4 => 4,
            Recon::Weno5 => 3,
        }
    }

    /// Scaled jump of one component from a stencil of `2·half_width` values.
    #[inline]
    pub fn jump(self, s: &[f64]) -> f64 {
        match self {
            Recon::FirstOrder => s[1] - s[0],
            Recon::Eno4 => {
                let (m, p) = eno4(s);
                p - m
            }
            Recon::Weno5 => {
                let (m, p) = weno5_reconstruct(s);
                sign_switch(m, p, s[3] - s[2])
            }
        }
    }
}

/// Cell-average ENO coefficients `c_{r,j}`: the value at the right face of
/// cell `i` is `Σ_j c_{r,j} v_{i−r+j}` on the stencil starting `r` cells left.
pub fn eno_coefficients(k: usize, r: isize) -> Vec<f64> {
    let kk = k as isize;
    (0..kk)
        .map(|j| {
            let mut c = 0.0;
            for m in (j + 1)..=kk {
                let mut num = 0.0;
                for l in 0..=kk {
                    if l == m {
                        continue;
                    }
                    let mut prod = 1.0;
                    for q in 0..=kk {
                        if q != m && q != l {
                            prod *= (r - q + 1) as f64;
                        }
                    }
                    num += prod;
                }
                let mut den = 1.0;
                for l in 0..=kk {
                    if l != m {
                        den *= (m - l) as f64;
                    }
                }
                c += num / den;
            }
            c
        })
        .collect()
}

fn undivided(s: &[f64], start: usize, order: usize) -> f64 {
    let mut d: Vec<f64> = s[start..=start + order].to_vec();
    for level in 0..order {
        for t in 0..order - level {
            d[t] = d[t + 1] - d[t];
        }
    }
    d[0]
}

/// Left-biased ENO value at the right face of cell `c` of `s`.
fn eno_left_value(s: &[f64], c: usize, k: usize) -> f64 {
    let mut left = c;
    for order in 1..k {
        let a = undivided(s, left - 1, order);
        let b = undivided(s, left, order);
        if a.abs() < b.abs() {
            left -= 1;
        }
    }
    let r = (c - left) as isize;
    eno_coefficients(k, r).iter().enumerate().map(|(j, cj)| cj * s[left + j]).sum()
}

/// ENO reconstruction of order `k` on `2k` values; returns `(ω⁻, ω⁺)`.
pub fn eno_reconstruct(s: &[f64], k: usize) -> Result<(f64, f64)> {
    if k == 0 || s.len() < 2 * k {
        return Err(Error::Config(format!("ENO of order {k} needs {} values, got {}", 2 * k, s.len())));
    }
    let s = &s[..2 * k];
    let minus = eno_left_value(s, k - 1, k);
    let mirrored: Vec<f64> = s.iter().rev().copied().collect();
    let plus = eno_left_value(&mirrored, k - 1, k);
    Ok((minus, plus))
}

const ENO4_COEFFS: [[f64; 4]; 4] = [
    [0.25, 13.0 / 12.0, -5.0 / 12.0, 1.0 / 12.0],
    [-1.0 / 12.0, 7.0 / 12.0, 7.0 / 12.0, -1.0 / 12.0],
    [1.0 / 12.0, -5.0 / 12.0, 13.0 / 12.0, 0.25],
    [-0.25, 13.0 / 12.0, -23.0 / 12.0, 25.0 / 12.0],
];

#[inline]
fn eno4_left(s: [f64; 7]) -> f64 {
    let d1 = [s[1] - s[0], s[2] - s[1], s[3] - s[2], s[4] - s[3], s[5] - s[4], s[6] - s[5]];
    let d2 = [d1[1] - d1[0], d1[2] - d1[1], d1[3] - d1[2], d1[4] - d1[3], d1[5] - d1[4]];
    let d3 = [d2[1] - d2[0], d2[2] - d2[1], d2[3] - d2[2], d2[4] - d2[3]];
    let mut left = 3usize;
    if d1[left - 1].abs() < d1[left].abs() {
        left -= 1;
    }
    if d2[left - 1].abs() < d2[left].abs() {
        left -= 1;
    }
    if d3[left - 1].abs() < d3[left].abs() {
        left -= 1;
    }
    let c = &ENO4_COEFFS[3 - left];
    c[0] * s[left] + c[1] * s[left + 1] + c[2] * s[left + 2] + c[3] * s[left + 3]
}

/// Fourth-order ENO on eight values; returns `(ω⁻, ω⁺)`.
#[inline]
pub fn eno4(s: &[f64]) -> (f64, f64) {
    let minus = eno4_left([s[0], s[1], s[2], s[3], s[4], s[5], s[6]]);
    let plus = eno4_left([s[7], s[6], s[5], s[4], s[3], s[2], s[1]]);
    (minus, plus)
}

const WENO_EPS: f64 = 1e-6;

#[inline]
fn weno5_left(a: f64, b: f64, c: f64, d: f64, e: f64) -> f64 {
    let q0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0;
    let q1 = (-b + 5.0 * c + 2.0 * d) / 6.0;
    let q2 = (2.0 * c + 5.0 * d - e) / 6.0;
    let b0 = 13.0 / 12.0 * (a - 2.0 * b + c).powi(2) + 0.25 * (a - 4.0 * b + 3.0 * c).powi(2);
    let b1 = 13.0 / 12.0 * (b - 2.0 * c + d).powi(2) + 0.25 * (b - d).powi(2);
    let b2 = 13.0 / 12.0 * (c - 2.0 * d + e).powi(2) + 0.25 * (3.0 * c - 4.0 * d + e).powi(2);
    let a0 = 0.1 / (WENO_EPS + b0).powi(2);
    let a1 = 0.6 / (WENO_EPS + b1).powi(2);
    let a2 = 0.3 / (WENO_EPS + b2).powi(2);
    (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2)
}

/// Fifth-order WENO on six values; returns `(ω⁻, ω⁺)`.
#[inline]
pub fn weno5_reconstruct(s: &[f64]) -> (f64, f64) {
    (weno5_left(s[0], s[1], s[2], s[3], s[4]), weno5_left(s[5], s[4], s[3], s[2], s[1]))
}

/// `θ(ω⁺ − ω⁻)` with `θ = 1` when the reconstructed jump has the sign of
/// `[[ω]]` and `θ = 0` otherwise.
#[inline]
pub fn sign_switch(minus: f64, plus: f64, jump: f64) -> f64 {
    let rec = plus - minus;
    if rec * jump > 0.0 {
        rec
    } else {
        0.0
    }
}

/// Componentwise scaled jump `⟨⟨ω⟩⟩` from a stencil of entropy variables.
pub fn scaled_jump<const N: usize>(eigs: &ScaledEigs<N>, w: &[[f64; N]], recon: Recon) -> [f64; N] {
    let len = 2 * recon.half_width();
    debug_assert_eq!(w.len(), len);
    let mut omega = [[0.0; 8]; N];
    for (j, wj) in w.iter().enumerate() {
        let o = scale_entropy_vars(eigs, wj);
        for c in 0..N {
            omega[c][j] = o[c];
        }
    }
    let mut out = [0.0; N];
    for c in 0..N {
        out[c] = recon.jump(&omega[c][..len]);
    }
    out
}

/// Dissipative correction `½ R|Λ|⟨⟨ω⟩⟩` for an interface.
pub fn es_dissipation<const N: usize>(
    eigs: &ScaledEigs<N>,
    w: &[[f64; N]],
    recon: Recon,
    mode: DissipationMode,
) -> [f64; N] {
    let jump = scaled_jump(eigs, w, recon);
    let abs = abs_lambda(eigs, mode);
    apply_scaled(eigs, &abs, &jump).map(|x| 0.5 * x)
}

/// Entropy-stable flux `F̃²ᵏ − ½ R|Λ|⟨⟨ω⟩⟩` at the interface in the middle of
/// `stencil`, which must hold `2·max(k, half_width)` states.
pub fn es_flux<const N: usize>(
    eos: &Eos,
    stencil: &[Prim],
    k: usize,
    recon: Recon,
    mode: DissipationMode,
    axis: Axis,
) -> Result<[f64; N]> {
    let hw = k.max(recon.half_width());
    if stencil.len() != 2 * hw {
        return Err(Error::Config(format!("entropy-stable flux needs {} states, got {}", 2 * hw, stencil.len())));
    }
    let ec: Vec<EcState> = stencil.iter().map(|p| EcState::new(eos, p)).collect();
    let central: [f64; N] = highorder_ec_flux(eos, &ec[hw - k..hw + k], k, axis)?;
    let avg = interface_average_ec(eos, &ec[hw - 1], &ec[hw]);
    let eigs: ScaledEigs<N> = scaled_eigs_at(&avg, axis)?;
    let rw = recon.half_width();
    let w: Vec<[f64; N]> = stencil[hw - rw..hw + rw].iter().map(|p| entropy_vars(eos, p)).collect();
    let diss = es_dissipation(&eigs, &w, recon, mode);
    let mut f = central;
    for c in 0..N {
        f[c] -= diss[c];
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn eno_coefficient_table() {
        for r in 0..4 {
            let c = eno_coefficients(4, r as isize);
            for j in 0..4 {
                assert_relative_eq!(c[j], ENO4_COEFFS[r][j], epsilon = 1e-14);
            }
        }
        assert_eq!(eno_coefficients(1, 0), vec![1.0]);
        let c2 = eno_coefficients(2, 0);
        assert_relative_eq!(c2[0], 0.5, epsilon = 1e-15);
        assert_relative_eq!(c2[1], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn fast_eno4_matches_general() {
        let s = [0.3, -1.2, 0.7, 2.5, 2.4, -0.1, 5.0, 4.0];
        let (m, p) = eno4(&s);
        let (gm, gp) = eno_reconstruct(&s, 4).unwrap();
        assert_relative_eq!(m, gm, epsilon = 1e-14);
        assert_relative_eq!(p, gp, epsilon = 1e-14);
    }

    #[test]
    fn linear_data_has_zero_jump() {
        let s: Vec<f64> = (0..8).map(|j| 2.0 + 0.5 * j as f64).collect();
        let (m, p) = eno4(&s);
        assert!((p - m).abs() < 1e-14);
        let (m, p) = weno5_reconstruct(&s[1..7]);
        assert!((p - m).abs() < 1e-14);
    }

    #[test]
    fn switch_definition() {
        assert_eq!(sign_switch(1.0, 1.0, 0.5), 0.0);
        assert_eq!(sign_switch(0.0, 0.3, 0.5), 0.3);
        assert_eq!(sign_switch(0.0, -0.3, 0.5), 0.0);
    }

    #[test]
    fn short_stencil_is_rejected() {
        assert!(eno_reconstruct(&[1.0, 2.0, 3.0], 2).is_err());
    }
}
