//! Euler gamma function.

use crate::real::{lit, Real};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x). Integer and half-integer arguments, which are all the dimension
/// formulas ever produce, go through exact products; everything else uses a
/// Lanczos approximation with reflection below 1/2.
pub fn gamma<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    let half = lit::<T>(0.5);
    let max_exact = lit::<T>(160.0);
    if x > T::zero() && x <= max_exact {
        if x == x.floor() {
            let mut acc = T::one();
            let mut k = lit::<T>(2.0);
            while k < x {
                acc = acc * k;
                k = k + T::one();
            }
            return acc;
        }
        if x - half == (x - half).floor() {
            let mut acc = T::PI().sqrt();
            let mut k = half;
            while k < x {
                acc = acc * k;
                k = k + T::one();
            }
            return acc;
        }
    }
    if x < half {
        if x == x.floor() {
            return T::nan();
        }
        return T::PI() / ((T::PI() * x).sin() * gamma(T::one() - x));
    }
    let z = x - T::one();
    let mut a = lit::<T>(LANCZOS[0]);
    let t = z + lit::<T>(LANCZOS_G + 0.5);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + lit::<T>(c) / (z + T::from_usize_lossy(i));
    }
    (T::TAU()).sqrt() * t.powf(z + half) * (-t).exp() * a
}

/// Volume of the unit ball in ℝ^d, π^{d/2}/Γ(d/2+1).
pub fn unit_ball_volume<T: Real>(d: u32) -> T {
    let half_d = lit::<T>(f64::from(d) / 2.0);
    T::PI().powf(half_d) / gamma(half_d + T::one())
}
