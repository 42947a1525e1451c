//! Adaptive Gauss–Kronrod (7/15) quadrature for smooth radial integrands.

use crate::error::{Error, Result};
use crate::real::{lit, Real};

// Published 30-digit nodes and weights, kept verbatim.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_SEGMENTS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    pub error: T,
    pub segments: usize,
}

fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = lit::<T>(0.5);
    let c = half * (a + b);
    let h = half * (b - a);
    let fc = f(c);
    let mut k = fc * lit::<T>(WGK[7]);
    let mut g = fc * lit::<T>(WG[3]);
    for j in 0..7 {
        let dx = h * lit::<T>(XGK[j]);
        let s = f(c - dx) + f(c + dx);
        k = k + s * lit::<T>(WGK[j]);
        if j % 2 == 1 {
            g = g + s * lit::<T>(WG[j / 2]);
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Integrates `f` over `[a, b]`, bisecting the worst segment until the summed
/// error estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    abs_tol: T,
    rel_tol: T,
) -> Result<Quadrature<T>> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("integration limits must be finite".into()));
    }
    if a == b {
        return Ok(Quadrature { value: T::zero(), error: T::zero(), segments: 0 });
    }
    let (v, e) = gk15(&f, a, b);
    let mut segs = vec![(a, b, v, e)];
    loop {
        let total: T = segs.iter().fold(T::zero(), |s, x| s + x.2);
        let err: T = segs.iter().fold(T::zero(), |s, x| s + x.3);
        if !total.is_finite() {
            return Err(Error::Domain("integrand is not finite".into()));
        }
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(Quadrature { value: total, error: err, segments: segs.len() });
        }
        if segs.len() >= MAX_SEGMENTS {
            return Err(Error::NoConvergence(format!(
                "quadrature error {} after {} segments",
                err,
                segs.len()
            )));
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |acc, (i, s)| if s.3 > acc.1 { (i, s.3) } else { acc });
        let (lo, hi, _, _) = segs.swap_remove(worst);
        let mid = lit::<T>(0.5) * (lo + hi);
        if mid <= lo || mid >= hi {
            // Segment cannot be split further at this precision.
            let total: T = segs.iter().fold(T::zero(), |s, x| s + x.2);
            return Ok(Quadrature { value: total, error: err, segments: segs.len() });
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        segs.push((lo, mid, v1, e1));
        segs.push((mid, hi, v2, e2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x: f64| x.powi(10) - 3.0 * x, 0.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((q.value - (2f64.powi(11) / 11.0 - 6.0)).abs() < 1e-11);
    }

    #[test]
    fn oscillatory_and_peaked() {
        let q = integrate(|x: f64| (30.0 * x).sin(), 0.0, 1.0, 1e-13, 0.0).unwrap();
        assert!((q.value - (1.0 - 30f64.cos()) / 30.0).abs() < 1e-12);
        let q = integrate(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10, 0.0).unwrap();
        let exact = 2.0 * (1.0 / 1e-2f64) * (1.0 / 1e-2f64).atan();
        assert!((q.value - exact).abs() < 1e-8 * exact);
    }
}
