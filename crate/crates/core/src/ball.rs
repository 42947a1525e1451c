//! Closed-form spectral and torsion quantities on Euclidean balls.

use crate::error::{domain, Error, Result};
use crate::gamma_fn::unit_ball_volume;
use crate::profile::RadialProfile;
use crate::real::{lit, Real};
use crate::roots::{brent, first_sign_change};
use crate::specfn::{self, jhat, j_raw, x_ratio_i_raw, Order};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball<T> {
    d: u32,
    radius: T,
}

impl<T: Real> Ball<T> {
    pub fn new(d: u32, radius: T) -> Result<Self> {
        if d < 2 {
            return Err(domain(format!("dimension {d} must be at least 2")));
        }
        if !(radius.is_finite() && radius > T::zero()) {
            return Err(domain(format!("radius {radius} must be positive and finite")));
        }
        Ok(Self { d, radius })
    }

    pub fn unit(d: u32) -> Result<Self> {
        Self::new(d, T::one())
    }

    /// The ball of the given volume.
    pub fn with_volume(d: u32, volume: T) -> Result<Self> {
        let r = (volume / unit_ball_volume::<T>(d)).powf(T::one() / lit(f64::from(d)));
        Self::new(d, r)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn order(&self) -> Order<T> {
        Order::from_dimension(self.d).expect("d ≥ 2 gives a valid order")
    }

    pub fn nu(&self) -> T {
        self.order().value()
    }

    pub fn volume(&self) -> T {
        unit_ball_volume::<T>(self.d) * self.radius.powi(self.d as i32)
    }

    /// Surface measure of the boundary sphere.
    pub fn boundary_measure(&self) -> T {
        lit::<T>(f64::from(self.d)) * self.volume() / self.radius
    }

    pub fn scaled(&self, alpha: T) -> Result<Self> {
        Self::new(self.d, self.radius * alpha)
    }
}

/// First eigenpair data of S_τ on a ball.
///
/// The unnormalized radial eigenfunction is
/// (r/R)^{-ν}·[coeff_j·J_ν(k_osc r) + coeff_i·I_ν(k_exp r)];
/// `coeff_i` underflows to zero once k_exp·R exceeds the range of I_ν, which
/// does not affect [`PlateEigenResult::profile`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateEigenResult<T> {
    pub gamma: T,
    pub k_osc: T,
    pub k_exp: T,
    pub coeff_j: T,
    pub coeff_i: T,
}

impl<T: Real> PlateEigenResult<T> {
    /// The L²-normalized eigenfunction, positive at the origin.
    pub fn profile(&self, ball: &Ball<T>) -> Result<RadialProfile<T>> {
        let raw = RadialProfile::clamped(ball.d, ball.radius, self.k_osc, self.k_exp, T::one());
        let norm = raw.integral_sq()?.sqrt();
        let sign = raw.value(T::zero()).signum();
        Ok(RadialProfile::clamped(ball.d, ball.radius, self.k_osc, self.k_exp, sign / norm))
    }
}

/// λ(B) = j²_{ν,1}/R².
pub fn dirichlet_first_eig_ball<T: Real>(ball: &Ball<T>) -> Result<T> {
    let j = specfn::bessel_j_zero(ball.order(), 1)?;
    Ok(j * j / (ball.radius * ball.radius))
}

/// Γ(B, τ) for τ ≥ 0.
pub fn plate_first_eig_ball<T: Real>(ball: &Ball<T>, tau: T) -> Result<PlateEigenResult<T>> {
    if !(tau.is_finite() && tau >= T::zero()) {
        return Err(domain(format!("tau = {tau} must be finite and ≥ 0")));
    }
    plate_first_eig_ball_extended(ball, tau)
}

/// Γ(B, τ) continued to −λ(B) < τ < 0, where the same secular equation still
/// has real wavenumbers. Used for central differences at τ = 0.
pub fn plate_first_eig_ball_extended<T: Real>(
    ball: &Ball<T>,
    tau: T,
) -> Result<PlateEigenResult<T>> {
    let nu = ball.nu();
    let big_r = ball.radius;
    let j1 = specfn::bessel_j_zero(ball.order(), 1)?;
    let j2 = specfn::bessel_j_zero(ball.order(), 2)?;
    if !(tau.is_finite() && tau > -(j1 * j1) / (big_r * big_r)) {
        return Err(domain(format!("tau = {tau} is below the range of the secular equation")));
    }
    // k·J_{ν+1}(kR) + J_ν(kR)·q·I_{ν+1}(qR)/I_ν(qR), with q² = k² + τ: the
    // secular equation multiplied through by J_ν(kR), so it has no poles.
    let secular = |k: T| {
        let q2 = k * k + tau;
        let qr = q2.sqrt() * big_r;
        k * j_raw(nu + T::one(), k * big_r) + j_raw(nu, k * big_r) * q2 * big_r / x_ratio_i_raw(nu, qr)
    };
    let eps = lit::<T>(1e-9);
    let lo = (j1 + eps) / big_r;
    let hi = (j2 - eps) / big_r;
    let (a, b) = first_sign_change(secular, lo, hi, 512).ok_or_else(|| {
        Error::NoBracket(format!("clamped secular equation, d = {}, tau = {tau}", ball.d))
    })?;
    let k = brent(secular, a, b, T::epsilon() * b)?;
    let q = (k * k + tau).sqrt();
    let coeff_j = T::one() / j_raw(nu, k * big_r);
    let coeff_i = -(-(q * big_r)).exp() / specfn::bessel_i_scaled(ball.order(), q * big_r)?;
    Ok(PlateEigenResult { gamma: k * k * q * q, k_osc: k, k_exp: q, coeff_j, coeff_i })
}

/// u_{B,0}: the L²-normalized first eigenfunction of Δ² on the ball, with the
/// closed-form normalization ±(d|B|)^{-1/2}.
pub fn first_eigfn_ball_tau0<T: Real>(ball: &Ball<T>) -> Result<RadialProfile<T>> {
    let g = specfn::gamma_nu(ball.order())?;
    let k = g / ball.radius;
    let mag = T::one() / (lit::<T>(f64::from(ball.d)) * ball.volume()).sqrt();
    let trial = RadialProfile::clamped(ball.d, ball.radius, k, k, T::one());
    let sign = trial.value(T::zero()).signum();
    Ok(RadialProfile::clamped(ball.d, ball.radius, k, k, sign * mag))
}

/// L²-normalized first eigenfunction of S_τ on the ball.
pub fn plate_eigfn_ball<T: Real>(ball: &Ball<T>, tau: T) -> Result<RadialProfile<T>> {
    plate_first_eig_ball(ball, tau)?.profile(ball)
}

/// ∫_B |∇u_{B,0}|² = (γ_ν²/R²)·|J_{ν+1}(γ_ν)·J_{ν−1}(γ_ν)|/J_ν(γ_ν)².
pub fn grad_norm_sq_u0<T: Real>(ball: &Ball<T>) -> Result<T> {
    let nu = ball.nu();
    let g = specfn::gamma_nu(ball.order())?;
    let jn = j_raw(nu, g);
    let jp = j_raw(nu + T::one(), g);
    let jm = j_raw(nu - T::one(), g);
    Ok(g * g / (ball.radius * ball.radius) * (jp * jm).abs() / (jn * jn))
}

/// ∫_B |∇u|² for the normalized first eigenfunction of S_τ, by quadrature.
/// This equals ∂_τΓ(B, τ).
pub fn plate_eigfn_grad_norm_sq<T: Real>(ball: &Ball<T>, tau: T) -> Result<T> {
    plate_eigfn_ball(ball, tau)?.grad_norm_sq()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BucklingMode<T> {
    pub lambda: T,
    pub kappa: u32,
    pub i: usize,
}

impl<T> BucklingMode<T> {
    pub fn is_radial(&self) -> bool {
        self.kappa == 0
    }
}

/// Λ = j²_{ν+κ+1,i}/R² for 0 ≤ κ ≤ kappa_max, 1 ≤ i ≤ i_max, ascending.
pub fn buckling_eigs<T: Real>(
    ball: &Ball<T>,
    kappa_max: u32,
    i_max: usize,
) -> Result<Vec<BucklingMode<T>>> {
    if i_max == 0 {
        return Err(domain("i_max must be at least 1"));
    }
    let r2 = ball.radius * ball.radius;
    let mut out = Vec::new();
    for kappa in 0..=kappa_max {
        let table = specfn::BesselZeroTable::new(ball.order().shifted(kappa + 1), i_max)?;
        for (idx, z) in table.zeros.into_iter().enumerate() {
            out.push(BucklingMode { lambda: z * z / r2, kappa, i: idx + 1 });
        }
    }
    out.sort_by(|a, b| a.lambda.partial_cmp(&b.lambda).expect("finite eigenvalues"));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionStatus {
    Unique,
    /// −τ is a non-radial buckling eigenvalue; the profile is the radial
    /// particular solution and any multiple of the buckling mode may be added.
    NonUniqueParticular,
    NonExistent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionBallResult<T> {
    pub status: TorsionStatus,
    pub profile: Option<RadialProfile<T>>,
    pub rigidity: Option<T>,
    /// −τ lies within 1e−8 (relative) of a radial buckling eigenvalue.
    pub near_singular: bool,
}

/// Relative distance below which −τ is treated as exactly a buckling value.
const EXACT_REL: f64 = 1e-13;
/// Relative distance below which the result is flagged as near singular.
const NEAR_REL: f64 = 1e-8;

fn classify<T: Real>(ball: &Ball<T>, tau: T) -> Result<(TorsionStatus, bool)> {
    if tau >= T::zero() {
        return Ok((TorsionStatus::Unique, false));
    }
    let lam = -tau * ball.radius * ball.radius;
    let y = lam.sqrt();
    let near = |z: T| ((z * z - lam) / (z * z)).abs();
    let mut nearest_radial = T::infinity();
    let mut count = 4usize;
    loop {
        let zs = specfn::BesselZeroTable::new(ball.order().shifted(1), count)?.zeros;
        if *zs.last().expect("non-empty") > y + T::one() {
            for z in zs {
                nearest_radial = nearest_radial.min(near(z));
            }
            break;
        }
        count *= 2;
    }
    if nearest_radial <= lit(EXACT_REL) {
        return Ok((TorsionStatus::NonExistent, true));
    }
    let near_singular = nearest_radial <= lit(NEAR_REL);
    let mut kappa = 1u32;
    loop {
        let order = ball.order().shifted(kappa + 1);
        if specfn::bessel_j_zero(order, 1)? > y + T::one() {
            break;
        }
        let mut i = 1;
        loop {
            let z = specfn::bessel_j_zero(order, i)?;
            if near(z) <= lit(EXACT_REL) {
                return Ok((TorsionStatus::NonUniqueParticular, near_singular));
            }
            if z > y + T::one() {
                break;
            }
            i += 1;
        }
        kappa += 1;
    }
    Ok((TorsionStatus::Unique, near_singular))
}

/// Torsion function of S_τ on the ball, for any real τ.
pub fn torsion_ball<T: Real>(ball: &Ball<T>, tau: T) -> Result<TorsionBallResult<T>> {
    if !tau.is_finite() {
        return Err(domain("tau must be finite"));
    }
    let (status, near_singular) = classify(ball, tau)?;
    if status == TorsionStatus::NonExistent {
        return Ok(TorsionBallResult { status, profile: None, rigidity: None, near_singular });
    }
    let profile = RadialProfile::torsion(ball.d, ball.radius, tau);
    let rigidity = rigidity_unchecked(ball, tau);
    Ok(TorsionBallResult { status, profile: Some(profile), rigidity: Some(rigidity), near_singular })
}

/// T(B, τ) = |B|R⁴/(d(d+2)) · I_{ν+3}(x)/(x²·I_{ν+1}(x)), x = R√τ, written as
/// 1/(q₁q₂) with q_k = x·I_{ν+k}/I_{ν+k+1} so that no cancellation occurs
/// for any τ ≥ 0. For τ < 0 the same expression with J in place of I.
fn rigidity_unchecked<T: Real>(ball: &Ball<T>, tau: T) -> T {
    let d = lit::<T>(f64::from(ball.d));
    let nu = ball.nu();
    let big_r = ball.radius;
    let pre = ball.volume() * big_r.powi(4) / (d * (d + lit(2.0)));
    let factor = if tau >= T::zero() {
        let x = big_r * tau.sqrt();
        let q1 = x_ratio_i_raw(nu + T::one(), x);
        let q2 = x_ratio_i_raw(nu + lit(2.0), x);
        T::one() / (q1 * q2)
    } else {
        let y = big_r * (-tau).sqrt();
        jhat(nu + lit(3.0), y) / jhat(nu + T::one(), y)
    };
    pre * factor
}

/// T(B, τ). Errors with [`Error::NonExistent`] when −τ is a radial buckling
/// eigenvalue.
pub fn torsional_rigidity_ball<T: Real>(ball: &Ball<T>, tau: T) -> Result<T> {
    if !tau.is_finite() {
        return Err(domain("tau must be finite"));
    }
    // j²_{ν+1,1} ≥ j²_{1,1} ≈ 14.68 for d ≥ 2, so milder τ need no search.
    if tau < T::zero() && (-tau * ball.radius * ball.radius) > lit(14.0) {
        let (status, _) = classify(ball, tau)?;
        if status == TorsionStatus::NonExistent {
            return Err(Error::NonExistent(format!(
                "-tau = {} is a radial buckling eigenvalue",
                -tau
            )));
        }
    }
    Ok(rigidity_unchecked(ball, tau))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeCheck<T> {
    pub slope: T,
    pub lower: T,
    pub upper: T,
}

impl<T: Real> SlopeCheck<T> {
    /// lower ≤ slope ≤ upper up to a relative tolerance.
    pub fn holds(&self, rel_tol: T) -> bool {
        self.slope >= self.lower * (T::one() - rel_tol) && self.slope <= self.upper * (T::one() + rel_tol)
    }
}

/// Default difference step 1e−3·max(1, τ).
pub fn default_slope_step<T: Real>(tau: T) -> T {
    lit::<T>(1e-3) * tau.max(T::one())
}

/// Central difference of Γ(B, ·) at τ against λ(B) and ∫|∇u_{B,0}|².
pub fn gamma_tau_slope_check<T: Real>(ball: &Ball<T>, tau: T, h: T) -> Result<SlopeCheck<T>> {
    if !(h > T::zero() && h.is_finite()) {
        return Err(domain("step must be positive"));
    }
    if tau < T::zero() {
        return Err(domain("tau must be ≥ 0"));
    }
    let up = plate_first_eig_ball_extended(ball, tau + h)?.gamma;
    let down = plate_first_eig_ball_extended(ball, tau - h)?.gamma;
    Ok(SlopeCheck {
        slope: (up - down) / (lit::<T>(2.0) * h),
        lower: dirichlet_first_eig_ball(ball)?,
        upper: grad_norm_sq_u0(ball)?,
    })
}

/// τ_Ω = (Γ(B) − Γ(Ω))/(λ(Ω) − ∫_B|∇u_{B,0}|²).
pub fn tau_threshold<T: Real>(omega_gamma0: T, omega_lambda: T, ball: &Ball<T>) -> Result<T> {
    let den = omega_lambda - grad_norm_sq_u0(ball)?;
    if den <= T::zero() {
        return Err(Error::CriterionFails(format!(
            "lambda(Omega) = {omega_lambda} does not exceed the ball gradient norm"
        )));
    }
    let gb = plate_first_eig_ball(ball, T::zero())?.gamma;
    Ok((gb - omega_gamma0) / den)
}
