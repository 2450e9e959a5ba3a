//! Synge-type equations of state `h = h(θ)` with `θ = p/ρ`.
//!
//! Four models are provided: the ideal gas law with adiabatic index Γ (ID),
//! and the RC, IP and TM approximations to the relativistic perfect gas.
//! Besides `h`, `e`, `e′` and the sound speed, each model supplies the
//! entropy `S(ρ, θ)` and the coefficient ℰ used by the two-point
//! entropy-conservative flux.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::means::{amean, logmean};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eos {
    /// Ideal gas with adiabatic index `1 < Γ ≤ 2`.
    Ideal {
        gamma: f64,
    },
    Rc,
    Ip,
    Tm,
}

/// Per-state auxiliary values for the closed-form ℰ.
///
/// For RC this holds `2z₂ + 3`; for IP and TM it holds `a = κ/z₂`,
/// `s = √(1 + a²)` and `a + s` with `κ = 2` (IP) or `κ = 3/2` (TM).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EcAux {
    pub a: f64,
    pub s: f64,
    pub l: f64,
}

impl Eos {
    /// Ideal-gas model, rejecting Γ outside `(1, 2]`.
    pub fn ideal(gamma: f64) -> Result<Eos> {
        if !(gamma > 1.0 && gamma <= 2.0) {
            return Err(Error::Domain(format!("adiabatic index must lie in (1, 2], got {gamma}")));
        }
        Ok(Eos::Ideal { gamma })
    }

    /// Looks up a model by name (`id`, `rc`, `ip`, `tm`). The adiabatic index
    /// is required for `id` and ignored otherwise.
    pub fn from_name(name: &str, gamma: Option<f64>) -> Result<Eos> {
        match name.to_ascii_lowercase().as_str() {
            "id" => Eos::ideal(gamma.unwrap_or(5.0 / 3.0)),
            "rc" => Ok(Eos::Rc),
            "ip" => Ok(Eos::Ip),
            "tm" => Ok(Eos::Tm),
            other => Err(Error::Config(format!("unknown eos '{other}', expected one of id, rc, ip, tm"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Eos::Ideal { .. } => "id",
            Eos::Rc => "rc",
            Eos::Ip => "ip",
            Eos::Tm => "tm",
        }
    }

    /// Specific enthalpy `h(θ)`.
    #[inline]
    pub fn enthalpy(&self, theta: f64) -> f64 {
        match *self {
            Eos::Ideal { gamma } => 1.0 + gamma * theta / (gamma - 1.0),
            Eos::Rc => 2.0 * (6.0 * theta * theta + 4.0 * theta + 1.0) / (3.0 * theta + 2.0),
            Eos::Ip => 2.0 * theta + (1.0 + 4.0 * theta * theta).sqrt(),
            Eos::Tm => 2.5 * theta + (1.0 + 2.25 * theta * theta).sqrt(),
        }
    }

    /// Specific internal energy `e(θ)`.
    #[inline]
    pub fn internal_energy(&self, theta: f64) -> f64 {
        match *self {
            Eos::Ideal { gamma } => theta / (gamma - 1.0),
            Eos::Rc => 3.0 * theta * (3.0 * theta + 1.0) / (3.0 * theta + 2.0),
            Eos::Ip => theta - 1.0 + (1.0 + 4.0 * theta * theta).sqrt(),
            Eos::Tm => 1.5 * theta - 1.0 + (1.0 + 2.25 * theta * theta).sqrt(),
        }
    }

    /// Derivative `e′(θ)`.
    #[inline]
    pub fn e_prime(&self, theta: f64) -> f64 {
        match *self {
            Eos::Ideal { gamma } => 1.0 / (gamma - 1.0),
            Eos::Rc => {
                let q = 3.0 * theta + 2.0;
                (27.0 * theta * theta + 36.0 * theta + 6.0) / (q * q)
            }
            Eos::Ip => 1.0 + 4.0 * theta / (1.0 + 4.0 * theta * theta).sqrt(),
            Eos::Tm => 1.5 + 2.25 * theta / (1.0 + 2.25 * theta * theta).sqrt(),
        }
    }

    /// Squared sound speed `θ(1 + e′)/(h e′)`.
    #[inline]
    pub fn sound_speed_sq(&self, theta: f64) -> f64 {
        sound_speed_sq_with(theta, self.enthalpy(theta), self.e_prime(theta))
    }

    /// Entropy `S(ρ, θ)` with the additive constants of the closed forms.
    #[inline]
    pub fn entropy_s(&self, rho: f64, theta: f64) -> f64 {
        match *self {
            Eos::Ideal { gamma } => theta.ln() / (gamma - 1.0) - rho.ln(),
            Eos::Rc => {
                let q = 3.0 * theta + 2.0;
                -rho.ln() + 1.5 * theta.ln() + 1.5 * q.ln() - 3.0 / q
            }
            Eos::Ip => -rho.ln() + theta.ln() + 2.0 * (2.0 * theta + (1.0 + 4.0 * theta * theta).sqrt()).ln(),
            Eos::Tm => -rho.ln() + 1.5 * theta.ln() + 1.5 * (1.5 * theta + (1.0 + 2.25 * theta * theta).sqrt()).ln(),
        }
    }

    /// Auxiliary values of a single state entering the closed-form ℰ.
    #[inline]
    pub fn ec_aux(&self, z2: f64) -> EcAux {
        match *self {
            Eos::Ideal { .. } => EcAux::default(),
            Eos::Rc => EcAux { a: 0.0, s: 0.0, l: 2.0 * z2 + 3.0 },
            Eos::Ip | Eos::Tm => {
                let a = self.kappa() / z2;
                let s = (1.0 + a * a).sqrt();
                EcAux { a, s, l: a + s }
            }
        }
    }

    #[inline]
    fn kappa(&self) -> f64 {
        match self {
            Eos::Tm => 1.5,
            _ => 2.0,
        }
    }

    /// Closed-form ℰ from precomputed per-state auxiliaries.
    #[inline]
    pub fn ec_coefficient_aux(&self, z2_l: f64, aux_l: &EcAux, z2_r: f64, aux_r: &EcAux) -> f64 {
        let z2_ln = logmean(z2_l, z2_r);
        match *self {
            Eos::Ideal { gamma } => 1.0 + 1.0 / ((gamma - 1.0) * z2_ln),
            Eos::Rc => 1.0 + 3.0 / z2_ln - 3.0 / logmean(aux_l.l, aux_r.l),
            Eos::Ip | Eos::Tm => {
                let kappa = self.kappa();
                let c1 = if matches!(self, Eos::Tm) { 1.5 } else { 1.0 };
                let z2_am = amean(z2_l, z2_r);
                let a_am = amean(aux_l.a, aux_r.a);
                let s_am = amean(aux_l.s, aux_r.s);
                let l_ln = logmean(aux_l.l, aux_r.l);
                c1 / z2_ln + s_am - (a_am / z2_am) * (z2_am * a_am / s_am - kappa * (1.0 + a_am / s_am) / l_ln)
            }
        }
    }

    /// Closed-form ℰ(z₂,L, z₂,R) with `z₂ = ρ/p = 1/θ`.
    #[inline]
    pub fn ec_coefficient(&self, z2_l: f64, z2_r: f64) -> f64 {
        self.ec_coefficient_aux(z2_l, &self.ec_aux(z2_l), z2_r, &self.ec_aux(z2_r))
    }

    /// ℰ evaluated from its integral form `1 + ∫₀¹ e(1/(z₂,L + sΔz₂)) ds`.
    ///
    /// The integral is mapped to `u = ln z₂` and evaluated with composite
    /// 16-node Gauss-Legendre panels. Fluxes built on this value conserve
    /// entropy only to quadrature accuracy.
    pub fn ec_coefficient_quadrature(&self, z2_l: f64, z2_r: f64) -> f64 {
        let (lo, hi) = if z2_l <= z2_r { (z2_l, z2_r) } else { (z2_r, z2_l) };
        let (ul, uh) = (lo.ln(), hi.ln());
        let panels = ((uh - ul) / 0.5).ceil().max(1.0) as usize;
        let width = (uh - ul) / panels as f64;
        let (nodes, weights) = gauss_legendre_16();
        let mut mean = 0.0;
        for k in 0..panels {
            let centre = ul + (k as f64 + 0.5) * width;
            let mut acc = 0.0;
            for (x, w) in nodes.iter().zip(weights.iter()) {
                let z = (centre + 0.5 * width * x).exp();
                acc += w * z * self.internal_energy(1.0 / z);
            }
            mean += 0.5 * acc;
        }
        mean /= panels as f64;
        1.0 + mean / logmean(lo, hi)
    }

    /// Causality margin `h e′ − θ(1 + e′)`, positive for admissible θ.
    pub fn causality_margin(&self, theta: f64) -> f64 {
        let ep = self.e_prime(theta);
        self.enthalpy(theta) * ep - theta * (1.0 + ep)
    }

    pub fn try_enthalpy(&self, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(self.enthalpy(theta))
    }

    pub fn try_internal_energy(&self, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(self.internal_energy(theta))
    }

    pub fn try_sound_speed_sq(&self, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        if self.causality_margin(theta) <= 0.0 {
            return Err(Error::Invariant(format!("causality violated at theta = {theta}")));
        }
        Ok(self.sound_speed_sq(theta))
    }

    pub fn try_entropy_s(&self, rho: f64, theta: f64) -> Result<f64> {
        if !(rho > 0.0 && rho.is_finite() && theta > 0.0 && theta.is_finite()) {
            return Err(Error::Domain(format!("entropy needs positive density and temperature, got ({rho}, {theta})")));
        }
        Ok(self.entropy_s(rho, theta))
    }

    pub fn try_ec_coefficient(&self, z2_l: f64, z2_r: f64) -> Result<f64> {
        if !(z2_l > 0.0 && z2_r > 0.0 && z2_l.is_finite() && z2_r.is_finite()) {
            return Err(Error::Domain(format!("ec coefficient needs positive arguments, got ({z2_l}, {z2_r})")));
        }
        Ok(self.ec_coefficient(z2_l, z2_r))
    }
}

impl fmt::Display for Eos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eos::Ideal { gamma } => write!(f, "id(gamma={gamma})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Squared sound speed from θ, an enthalpy value and `e′(θ)`.
#[inline]
pub fn sound_speed_sq_with(theta: f64, h: f64, e_prime: f64) -> f64 {
    theta * (1.0 + e_prime) / (h * e_prime)
}

fn check_theta(theta: f64) -> Result<()> {
    if theta >= 0.0 && theta.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("theta must be finite and nonnegative, got {theta}")))
    }
}

/// Nodes and weights of the 16-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre_16() -> &'static ([f64; 16], [f64; 16]) {
    static RULE: OnceLock<([f64; 16], [f64; 16])> = OnceLock::new();
    RULE.get_or_init(|| {
        const N: usize = 16;
        let mut nodes = [0.0; N];
        let mut weights = [0.0; N];
        for i in 0..N {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=N {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    })
}
