//! Radial profiles on a ball of radius R in ℝ^d.
//!
//! All closed forms are written with ĵ_ν(z) = J_ν(z)/z^ν and
//! î_ν(z) = e^{-z}I_ν(z)/z^ν, which are finite at the origin, so the
//! (r/R)^{-ν} factors never have to be formed.

use crate::error::Result;
use crate::gamma_fn::unit_ball_volume;
use crate::quad::integrate;
use crate::real::{lit, Real};
use crate::specfn::{ihat_scaled, jhat};

/// Largest |τ|·R² handled by the power series; beyond it the Bessel closed
/// forms are used. Both are accurate near the switch.
pub(crate) const SERIES_LIMIT: f64 = 16.0;

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind<T> {
    /// scale·[J_ν(k r)/J_ν(kR) − I_ν(q r)/I_ν(qR)]·(r/R)^{-ν}, the radial
    /// clamped-plate eigenfunction with k² = k_osc², q² = k_osc² + τ.
    Clamped { k: T, q: T, scale: T },
    /// Solution of (Δ² − τΔ)w = 1 with w = ∂_r w = 0 at R.
    Torsion { tau: T, form: Form<T> },
    /// Solution of (Δ² − τΔ)h = 0 with h = 0, ∂_r h = 1 at R.
    Aux { tau: T, form: Form<T> },
    /// Tabulated (r, value) pairs with linear interpolation.
    Samples(Vec<(T, T)>),
}

/// Evaluation strategy shared by the torsion and auxiliary profiles.
#[derive(Debug, Clone, PartialEq)]
pub enum Form<T> {
    /// Power series in τ; `den` is the normalizing sum at r = R.
    Series { den: T, den2: T },
    /// τ > 0: `s = √τ`, with î_ν(sR) and î_{ν+1}(sR) cached.
    Modified { s: T, i0: T, i1: T },
    /// τ < 0: `s = √-τ`, with ĵ_ν(sR) and ĵ_{ν+1}(sR) cached.
    Oscillatory { s: T, j0: T, j1: T },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile<T> {
    d: u32,
    radius: T,
    kind: ProfileKind<T>,
}

fn nu_of<T: Real>(d: u32) -> T {
    lit::<T>(f64::from(d) / 2.0 - 1.0)
}

/// Coefficients c_k = Π_{j≤k} 1/(4j(ν+j)), i.e. the ascending-series
/// coefficients of î_ν up to a constant.
fn series_coeffs<T: Real>(nu: T, tau: T, r2max: T) -> Vec<T> {
    let mut c = vec![T::one()];
    let x = (tau * r2max).abs();
    let mut ck = T::one();
    let mut xk = T::one();
    let mut biggest = T::one();
    for k in 1..400 {
        let kf = T::from_usize_lossy(k);
        ck = ck / (lit::<T>(4.0) * kf * (nu + kf));
        xk = xk * x;
        c.push(ck);
        let t = ck * xk;
        biggest = biggest.max(t);
        if k >= 3 && t <= T::epsilon() * lit(1e-3) * biggest {
            break;
        }
    }
    c
}

/// Σ_{k≥from} c_k τ^{k-from} (r^{2k} − R^{2k}) and its r-derivative.
fn shifted_sum<T: Real>(c: &[T], from: usize, tau: T, r: T, big_r: T) -> (T, T) {
    let (r2, big_r2) = (r * r, big_r * big_r);
    let mut val = T::zero();
    let mut der = T::zero();
    let mut tp = T::one();
    let mut rp = r2.powi(from as i32 - 1);
    let mut bp = big_r2.powi(from as i32);
    for (k, &ck) in c.iter().enumerate().skip(from) {
        let rk = rp * r2;
        val = val + ck * tp * (rk - bp);
        der = der + ck * tp * lit::<T>(2.0 * k as f64) * rp * r;
        tp = tp * tau;
        rp = rk;
        bp = bp * big_r2;
    }
    (val, der)
}

/// Σ_{k≥from} 2k c_k τ^{k-from} R^{2k}.
fn weighted_sum<T: Real>(c: &[T], from: usize, tau: T, big_r: T) -> T {
    let r2 = big_r * big_r;
    let mut acc = T::zero();
    let mut tp = T::one();
    let mut rp = r2.powi(from as i32);
    for (k, &ck) in c.iter().enumerate().skip(from) {
        acc = acc + lit::<T>(2.0 * k as f64) * ck * tp * rp;
        tp = tp * tau;
        rp = rp * r2;
    }
    acc
}

impl<T: Real> RadialProfile<T> {
    pub fn from_samples(d: u32, samples: Vec<(T, T)>) -> Self {
        let radius = samples.last().map(|s| s.0).unwrap_or_else(T::zero);
        Self { d, radius, kind: ProfileKind::Samples(samples) }
    }

    pub(crate) fn clamped(d: u32, radius: T, k: T, q: T, scale: T) -> Self {
        Self { d, radius, kind: ProfileKind::Clamped { k, q, scale } }
    }

    /// Torsion function of S_τ on the ball; caller guarantees τ is not a
    /// radial buckling value.
    pub(crate) fn torsion(d: u32, radius: T, tau: T) -> Self {
        let nu = nu_of::<T>(d);
        let form = Self::form(nu, radius, tau, 2);
        Self { d, radius, kind: ProfileKind::Torsion { tau, form } }
    }

    /// The auxiliary h of the two-ball problem on the ball of radius `a`.
    pub(crate) fn aux(d: u32, a: T, tau: T) -> Self {
        let nu = nu_of::<T>(d);
        let form = Self::form(nu, a, tau, 1);
        Self { d, radius: a, kind: ProfileKind::Aux { tau, form } }
    }

    fn form(nu: T, big_r: T, tau: T, from: usize) -> Form<T> {
        let x2 = tau * big_r * big_r;
        if x2.abs() <= lit(SERIES_LIMIT) {
            let c = series_coeffs(nu, tau, big_r * big_r);
            let den = weighted_sum(&c, 1, tau, big_r);
            let den2 = if from >= 2 { weighted_sum(&c, 2, tau, big_r) } else { T::zero() };
            Form::Series { den, den2 }
        } else if tau > T::zero() {
            let s = tau.sqrt();
            let z = s * big_r;
            Form::Modified { s, i0: ihat_scaled(nu, z), i1: ihat_scaled(nu + T::one(), z) }
        } else {
            let s = (-tau).sqrt();
            let z = s * big_r;
            Form::Oscillatory { s, j0: jhat(nu, z), j1: jhat(nu + T::one(), z) }
        }
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn kind(&self) -> &ProfileKind<T> {
        &self.kind
    }

    fn nu(&self) -> T {
        nu_of(self.d)
    }

    /// Profile value at 0 ≤ r ≤ R.
    pub fn value(&self, r: T) -> T {
        self.eval(r).0
    }

    /// Radial derivative at 0 ≤ r ≤ R.
    pub fn derivative(&self, r: T) -> T {
        self.eval(r).1
    }

    /// Laplacian, available for the clamped eigenfunction profiles.
    pub fn laplacian(&self, r: T) -> Option<T> {
        match &self.kind {
            ProfileKind::Clamped { k, q, scale } => {
                let nu = self.nu();
                let big_r = self.radius;
                let jr = jhat(nu, *k * r) / jhat(nu, *k * big_r);
                let ir = (*q * (r - big_r)).exp() * ihat_scaled(nu, *q * r)
                    / ihat_scaled(nu, *q * big_r);
                Some(*scale * (-(*k * *k) * jr - *q * *q * ir))
            }
            _ => None,
        }
    }

    fn eval(&self, r: T) -> (T, T) {
        let nu = self.nu();
        let big_r = self.radius;
        let d = lit::<T>(f64::from(self.d));
        match &self.kind {
            ProfileKind::Clamped { k, q, scale } => {
                let (k, q) = (*k, *q);
                let jn = jhat(nu, k * big_r);
                let inn = ihat_scaled(nu, q * big_r);
                let e = (q * (r - big_r)).exp();
                let v = jhat(nu, k * r) / jn - e * ihat_scaled(nu, q * r) / inn;
                let dv = -k * k * r * jhat(nu + T::one(), k * r) / jn
                    - q * q * r * e * ihat_scaled(nu + T::one(), q * r) / inn;
                (*scale * v, *scale * dv)
            }
            ProfileKind::Torsion { tau, form } => {
                let tau = *tau;
                match form {
                    Form::Series { den, den2 } => {
                        let c = series_coeffs(nu, tau, big_r * big_r);
                        let (n2, dn2) = shifted_sum(&c, 2, tau, r, big_r);
                        let two = lit::<T>(2.0);
                        let w = (big_r * big_r - r * r) * *den2 / (two * d * *den)
                            + big_r * big_r * n2 / (d * *den);
                        let dw = -r * *den2 / (d * *den) + big_r * big_r * dn2 / (d * *den);
                        (w, dw)
                    }
                    _ => {
                        let (g, dg) = self.bessel_part(form, r);
                        let w = (big_r * big_r - r * r) / (lit::<T>(2.0) * d * tau)
                            + g / (d * tau * tau);
                        let dw = -r / (d * tau) + dg / (d * tau * tau);
                        (w, dw)
                    }
                }
            }
            ProfileKind::Aux { tau, form } => {
                let tau = *tau;
                let a = big_r;
                match form {
                    Form::Series { den, .. } => {
                        let c = series_coeffs(nu, tau, a * a);
                        let (n1, dn1) = shifted_sum(&c, 1, tau, r, a);
                        // den carries an extra factor a² relative to the
                        // normalization, hence the 1/a below.
                        (a * n1 / *den, a * dn1 / *den)
                    }
                    _ => {
                        let (g, dg) = self.bessel_part(form, r);
                        // g/(τ·a) with g normalized so that g'(a) = τ·a.
                        (g / (tau * a), dg / (tau * a))
                    }
                }
            }
            ProfileKind::Samples(s) => interpolate(s, r),
        }
    }

    /// For the Bessel forms, g(r) = [f_ν(sr) − f_ν(sR)]/f_{ν+1}(sR) with f
    /// the hatted J or I, and its derivative ±s²·r·f_{ν+1}(sr)/f_{ν+1}(sR).
    fn bessel_part(&self, form: &Form<T>, r: T) -> (T, T) {
        let nu = self.nu();
        let big_r = self.radius;
        match form {
            Form::Modified { s, i0, i1 } => {
                let s = *s;
                let e = (s * (r - big_r)).exp();
                let g = (e * ihat_scaled(nu, s * r) - *i0) / *i1;
                let dg = s * s * r * e * ihat_scaled(nu + T::one(), s * r) / *i1;
                (g, dg)
            }
            Form::Oscillatory { s, j0, j1 } => {
                let s = *s;
                let g = (jhat(nu, s * r) - *j0) / *j1;
                let dg = -s * s * r * jhat(nu + T::one(), s * r) / *j1;
                (g, dg)
            }
            Form::Series { .. } => unreachable!("series handled by caller"),
        }
    }

    /// `n + 1` equally spaced samples on [0, R].
    pub fn samples(&self, n: usize) -> Vec<(T, T)> {
        (0..=n)
            .map(|i| {
                let r = self.radius * T::from_usize_lossy(i) / T::from_usize_lossy(n.max(1));
                (r, self.value(r))
            })
            .collect()
    }

    fn shell(&self, g: impl Fn(T) -> T) -> Result<T> {
        let area = lit::<T>(f64::from(self.d)) * unit_ball_volume::<T>(self.d);
        let dm1 = (self.d - 1) as i32;
        let rel = lit::<T>(1e-13).max(T::epsilon() * lit(64.0));
        let q = integrate(|r: T| g(r) * r.powi(dm1), T::zero(), self.radius, T::zero(), rel)?;
        Ok(area * q.value)
    }

    /// ∫_B f.
    pub fn integral(&self) -> Result<T> {
        self.shell(|r| self.value(r))
    }

    /// ∫_B f².
    pub fn integral_sq(&self) -> Result<T> {
        self.shell(|r| {
            let v = self.value(r);
            v * v
        })
    }

    /// ∫_B |∇f|².
    pub fn grad_norm_sq(&self) -> Result<T> {
        self.shell(|r| {
            let v = self.derivative(r);
            v * v
        })
    }
}

fn interpolate<T: Real>(s: &[(T, T)], r: T) -> (T, T) {
    if s.is_empty() {
        return (T::zero(), T::zero());
    }
    let idx = s.partition_point(|p| p.0 < r);
    if idx == 0 {
        return (s[0].1, T::zero());
    }
    if idx >= s.len() {
        return (s[s.len() - 1].1, T::zero());
    }
    let (r0, v0) = s[idx - 1];
    let (r1, v1) = s[idx];
    let slope = (v1 - v0) / (r1 - r0);
    (v0 + slope * (r - r0), slope)
}
