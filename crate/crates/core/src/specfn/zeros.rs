//! Memoized zeros j_{ν,i} and the clamped-plate constant γ_ν.

use std::any::TypeId;
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::bessel::{j, x_ratio_i};
use crate::error::{Error, Result};
use crate::real::{lit, Real};
use crate::roots::brent;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Zeros,
    GammaNu,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Key {
    ty: TypeId,
    nu: u64,
    kind: Kind,
}

type Table = RwLock<HashMap<Key, Vec<f64>>>;

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn key<T: Real>(nu: T, kind: Kind) -> Key {
    Key { ty: TypeId::of::<T>(), nu: nu.to_f64_lossy().to_bits(), kind }
}

const SCAN_STEP: f64 = 0.25;

fn xtol<T: Real>(x: T) -> T {
    T::epsilon() * x.max(T::one())
}

/// Next zero of J_ν strictly beyond `after` (`None` for the first one).
fn next_zero<T: Real>(nu: T, after: Option<T>) -> Result<T> {
    // Consecutive zeros are more than 2.9 apart for ν ≥ −1/2 and j_{ν,1} > ν,
    // so neither starting point can skip a zero.
    let mut lo = match after {
        Some(z) => z + T::one(),
        None => nu.max(lit(1e-3)),
    };
    let step = lit::<T>(SCAN_STEP);
    let mut flo = j(nu, lo);
    for _ in 0..1_000_000 {
        let hi = lo + step;
        let fhi = j(nu, hi);
        if flo == T::zero() {
            return Ok(lo);
        }
        if flo.signum() != fhi.signum() {
            return brent(|x| j(nu, x), lo, hi, xtol(hi));
        }
        lo = hi;
        flo = fhi;
    }
    Err(Error::NoBracket(format!("no zero of J_{nu} found")))
}

/// Returns the first `count` zeros of J_ν, computing and caching any that
/// are missing. Readers share the lock; insertion is serialized.
pub(crate) fn zeros<T: Real>(nu: T, count: usize) -> Result<Vec<T>> {
    let k = key(nu, Kind::Zeros);
    if let Some(v) = table().read().expect("zero table poisoned").get(&k) {
        if v.len() >= count {
            return Ok(v[..count].iter().map(|&z| T::lit(z)).collect());
        }
    }
    let mut guard = table().write().expect("zero table poisoned");
    let entry = guard.entry(k).or_default();
    while entry.len() < count {
        let last = entry.last().map(|&z| T::lit(z));
        let z = next_zero(nu, last)?;
        entry.push(z.to_f64_lossy());
    }
    Ok(entry[..count].iter().map(|&z| T::lit(z)).collect())
}

/// Root of J_{ν+1}(r) + J_ν(r)·I_{ν+1}(r)/I_ν(r) in (j_{ν,1}, j_{ν+1,1}).
///
/// This is J_ν times the defining sum of ratios, so it carries no poles.
pub(crate) fn gamma_nu<T: Real>(nu: T) -> Result<T> {
    let k = key(nu, Kind::GammaNu);
    if let Some(v) = table().read().expect("zero table poisoned").get(&k) {
        return Ok(T::lit(v[0]));
    }
    let lo = zeros(nu, 1)?[0];
    let hi = zeros(nu + T::one(), 1)?[0];
    let g = |r: T| j(nu + T::one(), r) + j(nu, r) * r / x_ratio_i(nu, r);
    let root = brent(g, lo, hi, xtol(hi)).map_err(|e| {
        Error::Consistency(format!("gamma_nu bracket ({lo}, {hi}) failed: {e}"))
    })?;
    table()
        .write()
        .expect("zero table poisoned")
        .insert(k, vec![root.to_f64_lossy()]);
    Ok(root)
}
