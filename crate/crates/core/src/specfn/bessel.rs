//! Real-order Bessel functions of the first kind, J and I.
//!
//! Small arguments use the ascending series. For x ≥ 2 the J branch uses
//! Steed's method (forward continued fraction for J'/J, downward recurrence,
//! complex continued fraction for the Wronskian normalization) and the I
//! branch the analogous Temme scheme, returning e^{-x}·I so nothing
//! overflows before x ≈ 10³⁰⁸.

use crate::gamma_fn::gamma;
use crate::real::{lit, Real};

const SERIES_MAX: f64 = 2.0;
const MAX_ITER: usize = 100_000;

fn is_integer<T: Real>(x: T) -> bool {
    x == x.floor()
}

/// Σ_k s^k/(k!(ν+1)_k) with s = ±x²/4.
fn ascending_sum<T: Real>(nu: T, s: T) -> T {
    let mut term = T::one();
    let mut sum = T::one();
    let mut k = T::one();
    for _ in 0..500 {
        term = term * s / (k * (nu + k));
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() * lit(0.25) {
            break;
        }
        k = k + T::one();
    }
    sum
}

/// J_ν(z)/z^ν, finite at z = 0 where it equals 2^{-ν}/Γ(ν+1).
pub(crate) fn jhat<T: Real>(nu: T, z: T) -> T {
    let two = lit::<T>(2.0);
    if z < lit(SERIES_MAX) {
        let s = -(z * z) / lit(4.0);
        ascending_sum(nu, s) / (two.powf(nu) * gamma(nu + T::one()))
    } else {
        j(nu, z) / z.powf(nu)
    }
}

/// e^{-z}·I_ν(z)/z^ν, finite at z = 0.
pub(crate) fn ihat_scaled<T: Real>(nu: T, z: T) -> T {
    let two = lit::<T>(2.0);
    if z < lit(SERIES_MAX) {
        let s = z * z / lit(4.0);
        (-z).exp() * ascending_sum(nu, s) / (two.powf(nu) * gamma(nu + T::one()))
    } else {
        i_scaled(nu, z) / z.powf(nu)
    }
}

fn j_series<T: Real>(nu: T, x: T) -> T {
    let half_x = x / lit(2.0);
    ascending_sum(nu, -(half_x * half_x)) * half_x.powf(nu) / gamma(nu + T::one())
}

/// J_ν(x) for real ν and x ≥ 0. Negative non-integer orders come from
/// downward recurrence, which is stable for the minimal solution J.
pub(crate) fn j<T: Real>(nu: T, x: T) -> T {
    if x == T::zero() {
        return if nu == T::zero() {
            T::one()
        } else if nu > T::zero() || is_integer(nu) {
            T::zero()
        } else {
            T::infinity()
        };
    }
    if nu < T::zero() {
        if is_integer(nu) {
            let n = (-nu).to_i64().unwrap_or(0);
            let v = j(-nu, x);
            return if n % 2 == 0 { v } else { -v };
        }
        if x < lit(SERIES_MAX) {
            return j_series(nu, x);
        }
        let shift = (-nu).ceil();
        let mu = nu + shift;
        let mut hi = j(mu + T::one(), x);
        let mut cur = j(mu, x);
        let mut m = mu;
        while m > nu {
            let lower = lit::<T>(2.0) * m / x * cur - hi;
            hi = cur;
            cur = lower;
            m = m - T::one();
        }
        return cur;
    }
    if x < lit(SERIES_MAX) {
        return j_series(nu, x);
    }
    steed_j(nu, x).0
}

/// Steed's method for J_ν(x), J'_ν(x) with ν ≥ 0 and x ≥ 2.
fn steed_j<T: Real>(nu: T, x: T) -> (T, T) {
    let eps = T::epsilon();
    let fpmin = T::tiny();
    let one = T::one();
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);

    let nl_f = (nu - x + lit(1.5)).floor().max(T::zero());
    let nl = nl_f.to_usize().unwrap_or(0);
    let xmu = nu - nl_f;
    let xmu2 = xmu * xmu;
    let xi = one / x;
    let xi2 = two * xi;
    let w = xi2 / T::PI();

    // CF1: J'_ν/J_ν.
    let mut isign = one;
    let mut h = (nu * xi).max(fpmin);
    let mut b = xi2 * nu;
    let mut d = T::zero();
    let mut c = h;
    for _ in 0..MAX_ITER {
        b = b + xi2;
        d = b - d;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = b - one / c;
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = one / d;
        let del = c * d;
        h = del * h;
        if d < T::zero() {
            isign = -isign;
        }
        if (del - one).abs() < eps {
            break;
        }
    }

    // Downward recurrence from ν to μ = ν − nl on unnormalized values.
    let mut rjl = isign * fpmin;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact = fact - xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == T::zero() {
        rjl = eps;
    }
    let f = rjpl / rjl;

    // CF2: p + iq = (J' + iY')/(J + iY) at order μ.
    let mut a = lit::<T>(0.25) - xmu2;
    let mut p = -half * xi;
    let mut q = one;
    let br = two * x;
    let mut bi = two;
    let fact2 = a * xi / (p * p + q * q);
    let mut cr = br + q * fact2;
    let mut ci = bi + p * fact2;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 1..MAX_ITER {
        a = a + two * T::from_usize_lossy(i);
        bi = bi + two;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < fpmin {
            dr = fpmin;
        }
        let fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < fpmin {
            cr = fpmin;
        }
        den = dr * dr + di * di;
        dr = dr / den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - one).abs() + dli.abs() <= eps {
            break;
        }
    }
    let gam = (p - f) / q;
    let mut rjmu = (w / ((p - f) * gam + q)).sqrt();
    if rjl < T::zero() {
        rjmu = -rjmu;
    }
    let scale = rjmu / rjl;
    (rjl1 * scale, rjp1 * scale)
}

/// e^{-x}·I_ν(x) for ν ≥ −1/2, x ≥ 0.
pub(crate) fn i_scaled<T: Real>(nu: T, x: T) -> T {
    if x == T::zero() {
        return if nu == T::zero() {
            T::one()
        } else if nu > T::zero() {
            T::zero()
        } else {
            T::infinity()
        };
    }
    if x < lit(SERIES_MAX) {
        let half_x = x / lit(2.0);
        return (-x).exp() * ascending_sum(nu, half_x * half_x) * half_x.powf(nu)
            / gamma(nu + T::one());
    }
    if nu < T::zero() {
        // I_ν = I_{ν+2} + (2(ν+1)/x)·I_{ν+1}, all terms positive.
        let i1 = temme_i_scaled(nu + T::one(), x);
        let i2 = temme_i_scaled(nu + lit(2.0), x);
        return i2 + lit::<T>(2.0) * (nu + T::one()) / x * i1;
    }
    temme_i_scaled(nu, x)
}

/// Temme/Steed scheme for e^{-x}·I_ν(x), ν ≥ 0, x ≥ 2.
fn temme_i_scaled<T: Real>(nu: T, x: T) -> T {
    let eps = T::epsilon();
    let fpmin = T::tiny();
    let one = T::one();
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);

    let nl_f = (nu + half).floor();
    let nl = nl_f.to_usize().unwrap_or(0);
    let xmu = nu - nl_f;
    let xmu2 = xmu * xmu;
    let xi = one / x;
    let xi2 = two * xi;

    // CF1: I'_ν/I_ν.
    let mut h = (nu * xi).max(fpmin);
    let mut b = xi2 * nu;
    let mut d = T::zero();
    let mut c = h;
    for _ in 0..MAX_ITER {
        b = b + xi2;
        d = one / (b + d);
        c = b + one / c;
        let del = c * d;
        h = del * h;
        if (del - one).abs() < eps {
            break;
        }
    }
    let mut ril = fpmin;
    let mut ripl = h * ril;
    let ril1 = ril;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact = fact - xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    let f = ripl / ril;

    // CF2 (Steed–Temme) for e^{x}·K_μ and K_{μ+1}.
    let mut b = two * (one + x);
    let mut d = one / b;
    let mut delh = d;
    let mut hh = d;
    let mut q1 = T::zero();
    let mut q2 = one;
    let a1 = lit::<T>(0.25) - xmu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = one + q * delh;
    for i in 1..MAX_ITER {
        let fi = T::from_usize_lossy(i);
        a = a - two * fi;
        c = -a * c / (fi + one);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + c * qnew;
        b = b + two;
        d = one / (b + a * d);
        delh = (b * d - one) * delh;
        hh = hh + delh;
        let dels = q * delh;
        s = s + dels;
        if (dels / s).abs() < eps {
            break;
        }
    }
    hh = a1 * hh;
    let rkmu = (T::PI() / (two * x)).sqrt() / s;
    let rk1 = rkmu * (xmu + x + half - hh) * xi;
    let rkmup = xmu * xi * rkmu - rk1;
    let rimu = xi / (f * rkmu - rkmup);
    rimu * ril1 / ril
}

/// q(ν, x) = x·I_ν(x)/I_{ν+1}(x) by modified Lentz on
/// q = 2(ν+1) + x²/(2(ν+2) + x²/(2(ν+3) + …)).
///
/// Every partial numerator and denominator is positive, so the fraction is
/// unconditionally stable; at x = 0 it returns 2(ν+1).
pub(crate) fn x_ratio_i<T: Real>(nu: T, x: T) -> T {
    let two = lit::<T>(2.0);
    let x2 = x * x;
    let mut f = two * (nu + T::one());
    if x2 == T::zero() {
        return f;
    }
    let fpmin = T::tiny();
    let mut c = f;
    let mut d = T::zero();
    let mut bj = f;
    for _ in 0..MAX_ITER {
        bj = bj + two;
        d = bj + x2 * d;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = bj + x2 / c;
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = T::one() / d;
        let del = c * d;
        f = f * del;
        if (del - T::one()).abs() <= T::epsilon() {
            break;
        }
    }
    f
}
