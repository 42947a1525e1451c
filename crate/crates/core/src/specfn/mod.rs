//! Bessel functions J_ν and I_ν of real order, the ratio I_ν/I_{ν+1}, zeros
//! of J_ν and the constant γ_ν.

mod bessel;
mod zeros;

pub(crate) use bessel::{ihat_scaled, j as j_raw, jhat, x_ratio_i as x_ratio_i_raw};

use crate::error::{domain, Result};
use crate::real::{lit, Real};

/// Bessel order ν ≥ −1/2.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order<T> {
    nu: T,
}

impl<T: Real> Order<T> {
    pub fn new(nu: T) -> Result<Self> {
        if !nu.is_finite() || nu < lit(-0.5) {
            return Err(domain(format!("order {nu} must be finite and ≥ -1/2")));
        }
        Ok(Self { nu })
    }

    /// ν = d/2 − 1.
    pub fn from_dimension(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(domain("dimension must be positive"));
        }
        Self::new(lit::<T>(f64::from(d) / 2.0 - 1.0))
    }

    pub fn value(self) -> T {
        self.nu
    }

    /// The order ν + k.
    pub fn shifted(self, k: u32) -> Self {
        Self { nu: self.nu + lit(f64::from(k)) }
    }
}

fn check_arg<T: Real>(x: T) -> Result<()> {
    if !x.is_finite() || x < T::zero() {
        return Err(domain(format!("argument {x} must be finite and ≥ 0")));
    }
    Ok(())
}

/// J_ν(x).
pub fn bessel_j<T: Real>(nu: Order<T>, x: T) -> Result<T> {
    check_arg(x)?;
    Ok(bessel::j(nu.nu, x))
}

/// I_ν(x). Overflows to infinity past x ≈ 709 in `f64`; use
/// [`bessel_i_scaled`] or [`ratio_i`] there.
pub fn bessel_i<T: Real>(nu: Order<T>, x: T) -> Result<T> {
    check_arg(x)?;
    Ok(bessel::i_scaled(nu.nu, x) * x.exp())
}

/// e^{-x}·I_ν(x).
pub fn bessel_i_scaled<T: Real>(nu: Order<T>, x: T) -> Result<T> {
    check_arg(x)?;
    Ok(bessel::i_scaled(nu.nu, x))
}

/// I_ν(x)/I_{ν+1}(x), evaluated without forming either function.
pub fn ratio_i<T: Real>(nu: Order<T>, x: T) -> Result<T> {
    if !x.is_finite() || x <= T::zero() {
        return Err(domain(format!("ratio_i needs x > 0, got {x}")));
    }
    Ok(bessel::x_ratio_i(nu.nu, x) / x)
}

/// x·I_ν(x)/I_{ν+1}(x), which extends continuously to 2(ν+1) at x = 0.
pub fn x_ratio_i<T: Real>(nu: Order<T>, x: T) -> Result<T> {
    check_arg(x)?;
    Ok(bessel::x_ratio_i(nu.nu, x))
}

/// The i-th positive zero j_{ν,i} (1-based).
pub fn bessel_j_zero<T: Real>(nu: Order<T>, i: usize) -> Result<T> {
    if i == 0 {
        return Err(domain("zero index is 1-based"));
    }
    Ok(zeros::zeros(nu.nu, i)?[i - 1])
}

/// First positive root of J_{ν+1}/J_ν + I_{ν+1}/I_ν.
pub fn gamma_nu<T: Real>(nu: Order<T>) -> Result<T> {
    zeros::gamma_nu(nu.nu)
}

/// The leading zeros of one J_ν, strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselZeroTable<T> {
    pub order: Order<T>,
    pub zeros: Vec<T>,
}

impl<T: Real> BesselZeroTable<T> {
    pub fn new(order: Order<T>, count: usize) -> Result<Self> {
        Ok(Self { order, zeros: zeros::zeros(order.nu, count)? })
    }
}
