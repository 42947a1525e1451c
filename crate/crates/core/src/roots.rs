//! Bracketed scalar root finding.

use crate::error::{Error, Result};
use crate::real::{lit, Real};

/// Brent's method on a bracket `[a, b]` with `f(a)·f(b) ≤ 0`.
///
/// Stops once the bracket is narrower than `xtol` (plus a few ulps of the
/// iterate) or an exact zero is hit.
pub fn brent<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, xtol: T) -> Result<T> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoBracket(format!(
            "f({}) = {}, f({}) = {}",
            a, fa, b, fb
        )));
    }
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = two * T::epsilon() * b.abs() + half * xtol;
        let m = half * (c - b);
        if m.abs() <= tol || fb == T::zero() {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * m * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * m * qa * (qa - r) - (b - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            let lim1 = lit::<T>(3.0) * m * q - (tol * q).abs();
            let lim2 = (e * q).abs();
            if two * p < lim1.min(lim2) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol { b + d } else { b + tol * m.signum() };
        fb = f(b);
    }
    Err(Error::NoConvergence("brent exceeded 200 iterations".into()))
}

/// Scans `[lo, hi]` on `n` equal subintervals and returns the first bracket
/// on which `f` changes sign.
pub fn first_sign_change<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    lo: T,
    hi: T,
    n: usize,
) -> Option<(T, T)> {
    let step = (hi - lo) / T::from_usize_lossy(n);
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=n {
        let x1 = if i == n { hi } else { lo + step * T::from_usize_lossy(i) };
        let f1 = f(x1);
        if f0 == T::zero() || f0.signum() != f1.signum() {
            return Some((x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    None
}
