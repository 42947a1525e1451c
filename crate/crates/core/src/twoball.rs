//! The completed two-ball torsional energy E(a, b, τ).
//!
//! With x = a√τ and q_k = x·I_{ν+k}(x)/I_{ν+k+1}(x) (see [`crate::specfn`]),
//! every τ^{-1} and τ^{-2} prefactor of the Bessel closed forms cancels
//! exactly against the continued-fraction identities
//! q₀ − d = x²/q₁ and q₀ − d − x²/(d+2) = −x⁴/((d+2)q₁q₂),
//! so each quantity below is evaluated without cancellation and stays valid
//! down to τ = 0.

use crate::ball::{torsional_rigidity_ball, Ball};
use crate::error::{domain, Error, Result};
use crate::gamma_fn::unit_ball_volume;
use crate::profile::RadialProfile;
use crate::real::{lit, Real};
use crate::specfn::x_ratio_i_raw;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBallConfig<T> {
    pub d: u32,
    pub a: T,
    pub b: T,
    pub tau: T,
}

impl<T: Real> TwoBallConfig<T> {
    pub fn new(d: u32, a: T, b: T, tau: T) -> Result<Self> {
        if d < 2 {
            return Err(domain("dimension must be at least 2"));
        }
        if !(a >= T::zero() && b >= T::zero() && a.is_finite() && b.is_finite()) {
            return Err(domain("radii must be finite and non-negative"));
        }
        if a == T::zero() && b == T::zero() {
            return Err(domain("radii cannot both vanish"));
        }
        if !(tau >= T::zero() && tau.is_finite()) {
            return Err(domain("tau must be finite and ≥ 0"));
        }
        Ok(Self { d, a, b, tau })
    }

    /// The configuration with a^d + b^d = 1.
    pub fn constrained(d: u32, a: T, tau: T) -> Result<Self> {
        if !(a >= T::zero() && a <= T::one()) {
            return Err(domain("constrained radius must lie in [0, 1]"));
        }
        let dd = lit::<T>(f64::from(d));
        let b = (T::one() - a.powf(dd)).max(T::zero()).powf(T::one() / dd);
        Self::new(d, a, b, tau)
    }

    fn dims(&self) -> (T, T, T) {
        let d = lit::<T>(f64::from(self.d));
        (d, lit::<T>(f64::from(self.d) / 2.0 - 1.0), unit_ball_volume::<T>(self.d))
    }

    /// (q₀, q₁, q₂) at x = a√τ.
    fn ratios(&self) -> (T, T, T) {
        let (_, nu, _) = self.dims();
        let x = self.a * self.tau.sqrt();
        (
            x_ratio_i_raw(nu, x),
            x_ratio_i_raw(nu + T::one(), x),
            x_ratio_i_raw(nu + lit(2.0), x),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliaryIntegrals<T> {
    /// ∫_{B_a} h_a (negative).
    pub int_ha: T,
    /// ∫_{B_a} h_a².
    pub int_ha_sq: T,
    /// ∫_{∂B_a} Δh_a.
    pub bnd_lap_ha: T,
    /// ∫_{∂B_b} Δh_b⁰ = d²|B₁|b^{d−2}.
    pub bnd_lap_hb0: T,
    /// ∫_{B_a} v_a = T(B_a, τ).
    pub int_va: T,
}

fn check_aux<T: Real>(d: u32, a: T, tau: T) -> Result<()> {
    if d < 2 {
        return Err(domain("dimension must be at least 2"));
    }
    if !(a > T::zero() && a.is_finite()) {
        return Err(domain("a must be positive"));
    }
    if !(tau >= T::zero() && tau.is_finite()) {
        return Err(domain("tau must be finite and ≥ 0"));
    }
    Ok(())
}

/// h_a: (Δ² − τΔ)h = 0 on B_a with h = 0 and ∂_r h = 1 on ∂B_a. At τ = 0 it
/// reduces to (r² − a²)/(2a).
pub fn h_a_profile<T: Real>(d: u32, a: T, tau: T) -> Result<RadialProfile<T>> {
    check_aux(d, a, tau)?;
    Ok(RadialProfile::aux(d, a, tau))
}

/// ∫_{B_a} h_a = −|B₁|a^{d+1}/q₁.
pub fn integral_ha<T: Real>(d: u32, a: T, tau: T) -> Result<T> {
    check_aux(d, a, tau)?;
    let cfg = TwoBallConfig { d, a, b: T::zero(), tau };
    let (_, _, b1) = cfg.dims();
    let (_, q1, _) = cfg.ratios();
    Ok(-b1 * a.powi(d as i32 + 1) / q1)
}

/// ∫_{B_a} h_a² = (|B₁|a^{d+2}/2)·((d+2)q₂ − d·q₁)/(q₁²q₂).
pub fn integral_ha_sq<T: Real>(d: u32, a: T, tau: T) -> Result<T> {
    check_aux(d, a, tau)?;
    let cfg = TwoBallConfig { d, a, b: T::zero(), tau };
    let (dd, _, b1) = cfg.dims();
    let (_, q1, q2) = cfg.ratios();
    let num = (dd + lit(2.0)) * q2 - dd * q1;
    Ok(b1 * a.powi(d as i32 + 2) / lit(2.0) * num / (q1 * q1 * q2))
}

/// All boundary and volume integrals the energy is assembled from.
pub fn auxiliary_integrals<T: Real>(cfg: &TwoBallConfig<T>) -> Result<AuxiliaryIntegrals<T>> {
    let (dd, _, b1) = cfg.dims();
    let d = cfg.d as i32;
    let int_ha = integral_ha(cfg.d, cfg.a, cfg.tau)?;
    let int_ha_sq = integral_ha_sq(cfg.d, cfg.a, cfg.tau)?;
    // Integrating (Δ² − τΔ)h_a = 0 over B_a and using ∂_r h_a = 1.
    let bnd_lap_ha = dd * dd * b1 * cfg.a.powi(d - 2) - cfg.tau * dd * int_ha / cfg.a;
    let bnd_lap_hb0 = if cfg.b > T::zero() {
        dd * dd * b1 * cfg.b.powi(d - 2)
    } else {
        T::zero()
    };
    let int_va = torsional_rigidity_ball(&Ball::new(cfg.d, cfg.a)?, cfg.tau)?;
    Ok(AuxiliaryIntegrals { int_ha, int_ha_sq, bnd_lap_ha, bnd_lap_hb0, int_va })
}

/// E by the explicit formula.
pub fn two_ball_energy_explicit<T: Real>(cfg: &TwoBallConfig<T>) -> Result<T> {
    let (dd, _, b1) = cfg.dims();
    let d = cfg.d as i32;
    if cfg.a == T::zero() {
        return Ok(T::zero());
    }
    let vol_a = b1 * cfg.a.powi(d);
    let two = lit::<T>(2.0);
    let ratio = if cfg.b > T::zero() {
        (cfg.a / cfg.b).powi(d)
    } else {
        T::infinity()
    };
    if cfg.tau == T::zero() {
        let coupling = if ratio.is_finite() {
            T::one() / (dd * (T::one() + ratio))
        } else {
            T::zero()
        };
        let pre = cfg.a.powi(4) * vol_a / (dd * (dd + two) * (dd + two));
        return Ok(-pre * (T::one() / (dd + lit(4.0)) + coupling));
    }
    let (q0, q1, q2) = cfg.ratios();
    let coupling = if ratio.is_finite() {
        T::one() / (q1 * q1 * (dd * ratio + q0))
    } else {
        T::zero()
    };
    Ok(-(vol_a * cfg.a.powi(4) / dd) * (coupling + T::one() / ((dd + two) * q1 * q2)))
}

/// E assembled from ∫h_a, ∫_{∂B_a}Δh_a, ∫_{∂B_b}Δh_b⁰ and T(B_a, τ).
pub fn two_ball_energy_assembled<T: Real>(cfg: &TwoBallConfig<T>) -> Result<T> {
    if cfg.a == T::zero() {
        return Ok(T::zero());
    }
    let aux = auxiliary_integrals(cfg)?;
    if cfg.b == T::zero() {
        return Ok(-aux.int_va);
    }
    let d = cfg.d as i32;
    let scale = cfg.a.powi(2 * d - 2) / cfg.b.powi(2 * d - 2);
    let den = aux.bnd_lap_ha + scale * aux.bnd_lap_hb0;
    Ok(-aux.int_ha * aux.int_ha / den - aux.int_va)
}

/// Relative agreement required between the two routes.
pub const ROUTE_TOL: f64 = 1e-9;

/// E(a, b, τ), computed by both routes; disagreement is an error.
pub fn two_ball_energy<T: Real>(cfg: &TwoBallConfig<T>) -> Result<T> {
    let e1 = two_ball_energy_explicit(cfg)?;
    let e2 = two_ball_energy_assembled(cfg)?;
    let scale = e1.abs().max(e2.abs());
    let tol = lit::<T>(ROUTE_TOL).max(T::epsilon() * lit(1e4));
    if (e1 - e2).abs() > tol * scale {
        return Err(Error::Consistency(format!(
            "energy routes disagree: explicit {e1}, assembled {e2} (d = {}, a = {}, tau = {})",
            cfg.d, cfg.a, cfg.tau
        )));
    }
    Ok(e1)
}

/// ∂_a E on the constraint a^d + b^d = 1, 0 < a < 1.
pub fn two_ball_energy_da<T: Real>(d: u32, a: T, tau: T) -> Result<T> {
    if !(a > T::zero() && a < T::one()) {
        return Err(domain("derivative needs 0 < a < 1"));
    }
    let cfg = TwoBallConfig::constrained(d, a, tau)?;
    let (dd, _, b1) = cfg.dims();
    let di = d as i32;
    let aux = auxiliary_integrals(&cfg)?;
    let (q0, _, _) = cfg.ratios();
    let ratio = (a / cfg.b).powi(di);
    let a2 = a * a;
    let lead = dd * dd * a2 * (T::one() + lit::<T>(2.0) * ratio) + dd * a2 * q0;
    let den = aux.bnd_lap_ha + a.powi(2 * di - 2) / cfg.b.powi(di) * dd * dd * b1;
    Ok(lead / (den * den) * b1 * b1 * a.powi(2 * di - 4) * aux.int_ha)
}

/// The default constrained grid a = 0.01, 0.02, …, 0.99.
pub fn default_a_grid<T: Real>() -> Vec<T> {
    (1..=99).map(|i| lit::<T>(f64::from(i) / 100.0)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow<T> {
    pub d: u32,
    pub tau: T,
    pub a: T,
    pub energy: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep<T> {
    pub rows: Vec<SweepRow<T>>,
    /// Consecutive pairs (earlier, later) along one curve where E failed to
    /// decrease strictly.
    pub violations: Vec<(SweepRow<T>, SweepRow<T>)>,
}

impl<T> Sweep<T> {
    pub fn is_monotone(&self) -> bool {
        self.violations.is_empty()
    }
}

/// E(a, τ) on the constrained grid for each τ, checking strict decrease in a.
pub fn sweep<T: Real>(d: u32, taus: &[T], a_grid: &[T]) -> Result<Sweep<T>> {
    if a_grid.windows(2).any(|w| w[0] >= w[1])
        || a_grid.iter().any(|&a| !(a > T::zero() && a < T::one()))
    {
        return Err(domain("a-grid must be strictly increasing inside (0, 1)"));
    }
    let mut rows = Vec::with_capacity(taus.len() * a_grid.len());
    let mut violations = Vec::new();
    for &tau in taus {
        let start = rows.len();
        for &a in a_grid {
            let energy = two_ball_energy(&TwoBallConfig::constrained(d, a, tau)?)?;
            rows.push(SweepRow { d, tau, a, energy });
        }
        for w in rows[start..].windows(2) {
            if w[1].energy >= w[0].energy {
                violations.push((w[0], w[1]));
            }
        }
    }
    Ok(Sweep { rows, violations })
}
