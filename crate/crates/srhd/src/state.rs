//! Primitive and conservative states, physical fluxes, the entropy pair,
//! entropy variables and the conservative-to-primitive recovery.
//!
//! Conservative vectors are plain arrays `[f64; N]` with `N = d + 2`:
//! `(D, m₁, E)` in one dimension and `(D, m₁, m₂, E)` in two.

use crate::eos::Eos;
use crate::error::{Error, Result};

/// Coordinate direction of a flux or sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    #[inline]
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }
}

/// Largest admissible speed accepted at ingestion.
pub const MAX_SPEED: f64 = 1.0 - 1e-10;

/// Primitive state `(ρ, v, p)`. One-dimensional states keep `v[1] = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Prim {
    pub rho: f64,
    pub v: [f64; 2],
    pub p: f64,
}

impl Prim {
    pub fn new_1d(rho: f64, v1: f64, p: f64) -> Prim {
        Prim { rho, v: [v1, 0.0], p }
    }

    pub fn new_2d(rho: f64, v1: f64, v2: f64, p: f64) -> Prim {
        Prim { rho, v: [v1, v2], p }
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.p / self.rho
    }

    #[inline]
    pub fn speed_sq(&self) -> f64 {
        self.v[0] * self.v[0] + self.v[1] * self.v[1]
    }

    /// `1 − |v|²` evaluated with compensated products, accurate to a few
    /// ulps even as `|v| → 1`.
    #[inline]
    pub fn one_minus_speed_sq(&self) -> f64 {
        minus_squares(1.0, 0.0, self.v[0], self.v[1])
    }

    /// Lorentz factor `1/√(1 − |v|²)`.
    #[inline]
    pub fn lorentz(&self) -> f64 {
        1.0 / self.one_minus_speed_sq().sqrt()
    }

    /// Checks `ρ > 0`, `p > 0` and `|v| ≤ 1 − 1e-10`.
    pub fn check_admissible(&self) -> Result<()> {
        let finite = self.rho.is_finite() && self.p.is_finite() && self.v.iter().all(|v| v.is_finite());
        if !finite || self.rho <= 0.0 || self.p <= 0.0 || self.speed_sq().sqrt() > MAX_SPEED {
            return Err(Error::Domain(format!("inadmissible primitive state {self:?}")));
        }
        Ok(())
    }
}

/// Error-free sum `a + b = s + e`.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Error-free square `a² = p + e` by Dekker splitting.
#[inline]
fn two_square(a: f64) -> (f64, f64) {
    const SPLIT: f64 = 134_217_729.0;
    let t = SPLIT * a;
    let hi = t - (t - a);
    let lo = a - hi;
    let p = a * a;
    (p, ((hi * hi - p) + 2.0 * hi * lo) + lo * lo)
}

/// `(c_hi + c_lo) − a² − b²` with the products and sums compensated.
#[inline]
fn minus_squares(c_hi: f64, c_lo: f64, a: f64, b: f64) -> f64 {
    let (pa, ea) = two_square(a);
    let (pb, eb) = two_square(b);
    let (s1, e1) = two_sum(c_hi, -pa);
    let (s2, e2) = two_sum(s1, -pb);
    s2 + (((e1 + e2) + c_lo) - (ea + eb))
}

/// `(D, m, E) = (ργ, ρhγ²v, ρhγ² − p)`.
#[inline]
pub fn prim_to_cons<const N: usize>(eos: &Eos, prim: &Prim) -> [f64; N] {
    let gamma = prim.lorentz();
    let h = eos.enthalpy(prim.theta());
    let w = prim.rho * h * gamma * gamma;
    let mut u = [0.0; N];
    u[0] = prim.rho * gamma;
    for d in 0..N - 2 {
        u[1 + d] = w * prim.v[d];
    }
    u[N - 1] = w - prim.p;
    u
}

/// Checked variant of [`prim_to_cons`].
pub fn try_prim_to_cons<const N: usize>(eos: &Eos, prim: &Prim) -> Result<[f64; N]> {
    prim.check_admissible()?;
    Ok(prim_to_cons(eos, prim))
}

/// Physical flux `F_i = (D vᵢ, vᵢ m + p eᵢ, mᵢ)`.
#[inline]
pub fn flux<const N: usize>(eos: &Eos, prim: &Prim, axis: Axis) -> [f64; N] {
    let u: [f64; N] = prim_to_cons(eos, prim);
    let k = axis.index();
    let vk = prim.v[k];
    let mut f = [0.0; N];
    f[0] = u[0] * vk;
    for d in 0..N - 2 {
        f[1 + d] = vk * u[1 + d];
    }
    f[1 + k] += prim.p;
    f[N - 1] = u[1 + k];
    f
}

/// Entropy function `η = −D S`.
#[inline]
pub fn entropy_eta(eos: &Eos, prim: &Prim) -> f64 {
    -prim.rho * prim.lorentz() * eos.entropy_s(prim.rho, prim.theta())
}

/// Entropy flux `qᵢ = −D S vᵢ`.
#[inline]
pub fn entropy_flux_q(eos: &Eos, prim: &Prim, axis: Axis) -> f64 {
    entropy_eta(eos, prim) * prim.v[axis.index()]
}

/// Entropy variables `W = (1/θ)(h − θS, γv, −γ)`.
#[inline]
pub fn entropy_vars<const N: usize>(eos: &Eos, prim: &Prim) -> [f64; N] {
    let theta = prim.theta();
    let gamma = prim.lorentz();
    let mut w = [0.0; N];
    w[0] = eos.enthalpy(theta) / theta - eos.entropy_s(prim.rho, theta);
    for d in 0..N - 2 {
        w[1 + d] = gamma * prim.v[d] / theta;
    }
    w[N - 1] = -gamma / theta;
    w
}

/// Entropy potential `ψᵢ = ργvᵢ`.
#[inline]
pub fn potential_psi(prim: &Prim, axis: Axis) -> f64 {
    prim.rho * prim.lorentz() * prim.v[axis.index()]
}

/// Analytic Jacobian `∂U/∂V` with `V = (ρ, v, p)`.
pub fn du_dv<const N: usize>(eos: &Eos, prim: &Prim) -> [[f64; N]; N] {
    let nd = N - 2;
    let rho = prim.rho;
    let theta = prim.theta();
    let gamma = prim.lorentz();
    let (g2, g3, g4) = (gamma * gamma, gamma.powi(3), gamma.powi(4));
    let h = eos.enthalpy(theta);
    let ep = eos.e_prime(theta);
    let dt = h - theta * (1.0 + ep);
    let mut a = [[0.0; N]; N];
    a[0][0] = gamma;
    for j in 0..nd {
        a[0][1 + j] = rho * g3 * prim.v[j];
    }
    for i in 0..nd {
        a[1 + i][0] = g2 * dt * prim.v[i];
        for j in 0..nd {
            let delta = if i == j { 1.0 } else { 0.0 };
            a[1 + i][1 + j] = rho * h * g2 * delta + 2.0 * rho * h * g4 * prim.v[i] * prim.v[j];
        }
        a[1 + i][N - 1] = g2 * (1.0 + ep) * prim.v[i];
    }
    a[N - 1][0] = g2 * dt;
    for j in 0..nd {
        a[N - 1][1 + j] = 2.0 * rho * h * g4 * prim.v[j];
    }
    a[N - 1][N - 1] = g2 * (1.0 + ep) - 1.0;
    a
}

/// Analytic symmetric Jacobian `∂U/∂W`.
pub fn du_dw<const N: usize>(eos: &Eos, prim: &Prim) -> [[f64; N]; N] {
    let rho = prim.rho;
    let theta = prim.theta();
    let gamma = prim.lorentz();
    let g2 = gamma * gamma;
    let rg3 = rho * gamma.powi(3);
    let h = eos.enthalpy(theta);
    let ep1 = 1.0 + eos.e_prime(theta);
    let (v1, v2) = (prim.v[0], prim.v[1]);
    let t2 = theta * theta * ep1;
    let mut a = [[0.0; N]; N];
    if N == 3 {
        a[0][0] = rho * gamma;
        a[0][1] = rho * h * g2 * v1;
        a[0][2] = rho * (h * g2 - theta);
        a[1][1] = rg3 * (t2 * v1 * v1 + theta * h + h * h * v1 * v1);
        a[1][2] = rg3 * v1 * (t2 + h * h + theta * h * v1 * v1);
        a[2][2] = rg3 * (t2 + h * h - 2.0 * theta * h + 3.0 * theta * h * v1 * v1);
    } else {
        let vv = v1 * v1 + v2 * v2;
        let s1 = t2 * v1 * v1 + theta * h + h * h * v1 * v1 - theta * h * v2 * v2;
        let s2 = t2 + theta * h + h * h;
        let s3 = t2 * v2 * v2 + theta * h + h * h * v2 * v2 - theta * h * v1 * v1;
        let s4 = t2 + h * h + theta * h * vv;
        a[0][0] = rho * gamma;
        a[0][1] = rho * h * g2 * v1;
        a[0][2] = rho * h * g2 * v2;
        a[0][3] = rho * (h * g2 - theta);
        a[1][1] = rg3 * s1;
        a[1][2] = rg3 * v1 * v2 * s2;
        a[1][3] = rg3 * v1 * s4;
        a[2][2] = rg3 * s3;
        a[2][3] = rg3 * v2 * s4;
        a[3][3] = rg3 * (s4 - 2.0 * theta * h * (1.0 - vv));
    }
    for i in 0..N {
        for j in 0..i {
            a[i][j] = a[j][i];
        }
    }
    a
}

/// Newton iteration cap of the recovery.
pub const RECOVERY_MAX_ITER: usize = 200;

/// Recovers `(ρ, v, p)` from `(D, m, E)`.
///
/// Newton iteration on the pressure for the residual
/// `g(p) = h(θ(p)) − (E + p)/(D γ(p))`, where `|v| = |m|/(E + p)` and
/// `θ = pγ/D`, safeguarded by bisection on a sign-change bracket. The optional
/// guess (typically the pressure of the previous stage) seeds the iteration.
/// No floors are applied: a state without admissible preimage is an error.
pub fn cons_to_prim<const N: usize>(eos: &Eos, u: &[f64; N], guess: Option<f64>) -> Result<Prim> {
    let d = u[0];
    let e = u[N - 1];
    let mut m = [0.0; 2];
    m[..N - 2].copy_from_slice(&u[1..N - 1]);
    let mm = (m[0] * m[0] + m[1] * m[1]).sqrt();
    let gap = e_minus_mm(e, &m, mm);
    let fail = |detail: String| Error::Recovery { cell: None, detail };
    if !(d > 0.0 && e > 0.0 && d.is_finite() && e.is_finite() && mm.is_finite()) {
        return Err(fail(format!("nonphysical conservative state {u:?}")));
    }

    let eval = |p: f64| -> (f64, f64, f64) {
        let ep = e + p;
        let v = mm / ep;
        let gamma = ep / ((gap + p) * (ep + mm)).sqrt();
        let theta = p * gamma / d;
        let g = eos.enthalpy(theta) - (e + p) / (d * gamma);
        let dgamma = -gamma.powi(3) * v * v / (e + p);
        let dtheta = (gamma + p * dgamma) / d;
        let dg = (1.0 + eos.e_prime(theta)) * dtheta - gamma / d;
        (g, dg, gamma)
    };

    let p_min = (-gap).max(1e-300) * (1.0 + 1e-10);
    let (g_min, _, _) = eval(p_min);
    if !(g_min < 0.0) {
        return Err(fail(format!("no admissible pressure for {u:?}")));
    }
    let mut lo = p_min;
    let mut hi = f64::INFINITY;
    let mut p = match guess {
        Some(g) if g > p_min && g.is_finite() => g,
        _ => {
            let start = gap.max(1e-13) / 3.0;
            start.max(2.0 * p_min)
        }
    };

    for _ in 0..RECOVERY_MAX_ITER {
        let (g, dg, _) = eval(p);
        if g == 0.0 {
            return Ok(finish(d, &m, e, gap, p, N));
        }
        if g < 0.0 {
            lo = lo.max(p);
        } else {
            hi = hi.min(p);
        }
        let mut next = p - g / dg;
        if !(next.is_finite() && next > lo && next < hi && dg > 0.0) {
            next = if hi.is_finite() { 0.5 * (lo + hi) } else { 2.0 * p };
        }
        let step = (next - p).abs();
        p = next;
        if step <= 1e-15 * p || (hi.is_finite() && hi - lo <= 1e-15 * hi) {
            return Ok(finish(d, &m, e, gap, p, N));
        }
    }
    Err(fail(format!("no convergence in {RECOVERY_MAX_ITER} iterations for {u:?}")))
}

/// `E − |m|` computed as `(E² − |m|²)/(E + |m|)` with a compensated numerator.
#[inline]
fn e_minus_mm(e: f64, m: &[f64; 2], mm: f64) -> f64 {
    let (e2, e2_err) = two_square(e);
    minus_squares(e2, e2_err, m[0], m[1]) / (e + mm)
}

fn finish(d: f64, m: &[f64; 2], e: f64, gap: f64, p: f64, n: usize) -> Prim {
    let ep = e + p;
    let v = [m[0] / ep, if n == 4 { m[1] / ep } else { 0.0 }];
    let mm = (m[0] * m[0] + m[1] * m[1]).sqrt();
    let gamma = ep / ((gap + p) * (ep + mm)).sqrt();
    Prim { rho: d / gamma, v, p }
}
