mod common;

use plate_core::specfn::ratio_i;
use plate_core::twoball::{
    auxiliary_integrals, default_a_grid, h_a_profile, integral_ha, integral_ha_sq, sweep,
    two_ball_energy, two_ball_energy_assembled, two_ball_energy_da, two_ball_energy_explicit,
};
use plate_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn unit_volume(d: u32) -> f64 {
    Ball::<f64>::unit(d).unwrap().volume()
}

fn energy(d: u32, a: f64, tau: f64) -> f64 {
    two_ball_energy(&TwoBallConfig::constrained(d, a, tau).unwrap()).unwrap()
}

#[test]
fn h_a_boundary_values() {
    for d in [2, 3, 5] {
        for (a, tau) in [(1.0f64, 1.0f64), (0.3, 0.0), (0.7, 2.5), (2.0, 1e3), (0.5, 1e-9)] {
            let h = h_a_profile(d, a, tau).unwrap();
            assert!(h.value(a).abs() < 1e-9 * a, "d={d} a={a} tau={tau}");
            assert!((h.derivative(a) - 1.0).abs() < 1e-9, "d={d} a={a} tau={tau}");
            assert!(h.value(0.0) < 0.0);
        }
    }
    let h = h_a_profile(2, 0.8, 0.0).unwrap();
    for r in [0.0f64, 0.3, 0.8] {
        assert!((h.value(r) - (r * r - 0.64) / 1.6).abs() < 1e-15);
    }
    assert!(h_a_profile(2, 0.0, 1.0).is_err());
    assert!(h_a_profile(2, 1.0, -1.0).is_err());
}

#[test]
fn h_a_operator_residual_is_second_order() {
    let h = h_a_profile(2, 1.0, 1.0).unwrap();
    let residual = |n: usize| {
        let step = 1.0 / n as f64;
        let vals: Vec<f64> = (0..=n).map(|i| h.value(i as f64 * step)).collect();
        let lap = |f: &[f64], i: usize| {
            let r = i as f64 * step;
            (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (step * step)
                + (f[i + 1] - f[i - 1]) / (2.0 * step * r)
        };
        let l1: Vec<f64> = (1..n).map(|i| lap(&vals, i)).collect();
        // l1[k] is Δh at node k+1
        let mut worst = 0.0f64;
        for i in 2..n - 1 {
            let r = i as f64 * step;
            let l = &l1;
            let bilap = (l[i] - 2.0 * l[i - 1] + l[i - 2]) / (step * step)
                + (l[i] - l[i - 2]) / (2.0 * step * r);
            worst = worst.max((bilap - l[i - 1]).abs());
        }
        worst
    };
    let (c, f) = (residual(100), residual(200));
    assert!(f < 1e-3, "{f}");
    assert!((3.2..4.8).contains(&(c / f)), "ratio {}", c / f);
}

#[test]
fn integrals_match_quadrature() {
    for d in [2, 3, 4] {
        for (a, tau) in [(1.0, 1.0), (0.7, 2.5), (0.2, 40.0), (1.5, 300.0), (0.9, 0.0)] {
            let h = h_a_profile(d, a, tau).unwrap();
            let i1 = integral_ha(d, a, tau).unwrap();
            let i2 = integral_ha_sq(d, a, tau).unwrap();
            assert!(i1 < 0.0 && i2 > 0.0);
            assert!(rel(i1, h.integral().unwrap()) < 1e-10, "d={d} a={a} tau={tau}");
            assert!(rel(i2, h.integral_sq().unwrap()) < 1e-9, "d={d} a={a} tau={tau}");
        }
    }
}

#[test]
fn square_integral_matches_ratio_form() {
    // a^d·(|B₁|/(2τ))·[(d+2)ρ(ρ − d/x) − d] with ρ = I_ν/I_{ν+1}(x), x = a√τ
    for (d, a, tau) in [(3u32, 0.7, 2.5), (2, 1.0, 1.0), (4, 0.4, 20.0), (2, 1.3, 0.2)] {
        let x = a * f64::sqrt(tau);
        let rho = ratio_i(Order::from_dimension(d).unwrap(), x).unwrap();
        let dd = f64::from(d);
        let expected =
            a.powi(d as i32) * unit_volume(d) / (2.0 * tau) * ((dd + 2.0) * rho * (rho - dd / x) - dd);
        let got = integral_ha_sq(d, a, tau).unwrap();
        assert!(rel(got, expected) < 1e-9, "d={d}: {got} vs {expected}");
        // likewise ∫h_a = a^d(|B₁|/√τ)(d/x − ρ)
        let expected = a.powi(d as i32) * unit_volume(d) / tau.sqrt() * (dd / x - rho);
        assert!(rel(integral_ha(d, a, tau).unwrap(), expected) < 1e-10);
    }
}

#[test]
fn integral_small_tension_limit() {
    for d in [2, 3] {
        let dd = f64::from(d);
        let a = 0.6f64;
        let limit = -unit_volume(d) * a.powi(d as i32 + 1) / (dd + 2.0);
        assert!(rel(integral_ha(d, a, 1e-10).unwrap(), limit) < 1e-8);
        assert!(rel(integral_ha(d, a, 0.0).unwrap(), limit) < 1e-14);
    }
}

#[test]
fn boundary_laplacian_relation() {
    // ∫_{∂B_a}Δh_a against a one-sided difference of the profile derivative
    for d in [2, 3] {
        for (a, tau) in [(1.0, 1.0), (0.5, 10.0), (0.8, 0.0)] {
            let cfg = TwoBallConfig::new(d, a, 0.5, tau).unwrap();
            let aux = auxiliary_integrals(&cfg).unwrap();
            let h = h_a_profile(d, a, tau).unwrap();
            let s = 1e-4 * a;
            let second = (3.0 * h.derivative(a) - 4.0 * h.derivative(a - s) + h.derivative(a - 2.0 * s))
                / (2.0 * s);
            let lap = second + (f64::from(d) - 1.0) / a * h.derivative(a);
            let area = common::sphere_area(d) * a.powi(d as i32 - 1);
            assert!(rel(aux.bnd_lap_ha, area * lap) < 1e-6, "d={d} a={a} tau={tau}");
            let dd = f64::from(d);
            assert_eq!(aux.bnd_lap_hb0, dd * dd * unit_volume(d) * 0.5f64.powi(d as i32 - 2));
            let lin = dd * dd * unit_volume(d) * a.powi(d as i32 - 2) - tau * dd * aux.int_ha / a;
            assert!(rel(aux.bnd_lap_ha, lin) < 1e-11);
            assert!(rel(aux.int_va, torsional_rigidity_ball(&Ball::new(d, a).unwrap(), tau).unwrap()) < 1e-15);
        }
    }
}

#[test]
fn endpoint_limits() {
    let b = (1.0f64 - 1e-8).sqrt();
    let e = two_ball_energy(&TwoBallConfig::new(2, 1e-4, b, 1.0).unwrap()).unwrap();
    assert!(e.abs() < 1e-10, "{e}");
    let t1 = torsional_rigidity_ball(&Ball::unit(2).unwrap(), 1.0).unwrap();
    let e = two_ball_energy(&TwoBallConfig::new(2, 1.0, 1e-4, 1.0).unwrap()).unwrap();
    assert!(rel(e, -t1) < 1e-6, "{e} vs {}", -t1);
    assert_eq!(two_ball_energy(&TwoBallConfig::new(3, 0.0, 1.0, 2.0).unwrap()).unwrap(), 0.0);
    let e = two_ball_energy(&TwoBallConfig::new(3, 1.0, 0.0, 2.0).unwrap()).unwrap();
    let t = torsional_rigidity_ball(&Ball::unit(3).unwrap(), 2.0).unwrap();
    assert!(rel(e, -t) < 1e-12);
    assert!(TwoBallConfig::new(2, 0.0, 0.0, 1.0).is_err());
    assert!(TwoBallConfig::new(2, 1.0, 1.0, -1.0).is_err());
}

#[test]
fn zero_tension_equal_radii_value() {
    let a = 0.5f64.sqrt();
    let cfg = TwoBallConfig::new(2, a, a, 0.0).unwrap();
    let expected = -PI / 256.0 * 5.0 / 12.0;
    assert!(rel(two_ball_energy(&cfg).unwrap(), expected) < 1e-14);
    // the positive-τ branch continues to the same value
    let cfg = TwoBallConfig::new(2, a, a, 1e-9).unwrap();
    assert!(rel(two_ball_energy(&cfg).unwrap(), expected) < 1e-8);
}

#[test]
fn routes_agree_on_full_grid() {
    let taus = [0.0, 0.1, 1.0, 10.0, 100.0];
    for d in [2, 3] {
        for &tau in &taus {
            for i in 1..=50 {
                let a = f64::from(i) / 51.0;
                let cfg = TwoBallConfig::constrained(d, a, tau).unwrap();
                let e1 = two_ball_energy_explicit(&cfg).unwrap();
                let e2 = two_ball_energy_assembled(&cfg).unwrap();
                assert!(rel(e1, e2) < 1e-9, "d={d} tau={tau} a={a}: {e1} vs {e2}");
            }
        }
    }
}

#[test]
fn derivative_negative_and_matches_difference() {
    for d in [2, 3] {
        for tau in [0.1, 1.0, 10.0, 100.0] {
            for a in default_a_grid::<f64>() {
                let da = two_ball_energy_da(d, a, tau).unwrap();
                assert!(da < 0.0, "d={d} tau={tau} a={a}");
                // E ~ a^{d+4} near 0, so the truncation error is relative to (s/a)²
                let s = f64::min(1e-5, 1e-4 * a);
                let fd = (energy(d, a + s, tau) - energy(d, a - s, tau)) / (2.0 * s);
                assert!(rel(fd, da) < 1e-6, "d={d} tau={tau} a={a}: {da} vs {fd}");
            }
        }
    }
}

#[test]
fn derivative_small_tension_limit() {
    for d in [2, 3] {
        for a in [0.2, 0.5, 0.8] {
            let da = two_ball_energy_da(d, a, 1e-9).unwrap();
            let s = 1e-5;
            let fd = (energy(d, a + s, 0.0) - energy(d, a - s, 0.0)) / (2.0 * s);
            assert!(rel(fd, da) < 1e-6, "d={d} a={a}");
        }
    }
    assert!(two_ball_energy_da(2, 1.0, 1.0).is_err());
}

#[test]
fn sweeps_are_monotone_with_correct_endpoints() {
    let taus = [0.0, 1.0, 10.0, 100.0];
    let grid = default_a_grid::<f64>();
    assert_eq!(grid.len(), 99);
    for d in [2, 3] {
        let s = sweep(d, &taus, &grid).unwrap();
        assert!(s.is_monotone(), "{:?}", s.violations.first());
        assert_eq!(s.rows.len(), 4 * 99);
        for (k, &tau) in taus.iter().enumerate() {
            let rows = &s.rows[k * 99..(k + 1) * 99];
            let t1 = torsional_rigidity_ball(&Ball::unit(d).unwrap(), tau).unwrap();
            assert!(rows[0].energy > rows[98].energy);
            assert!(rows[0].energy.abs() < 1e-3 * t1);
            assert!((rows[98].energy + t1).abs() < 1e-2 * t1);
            for r in rows {
                let b = (1.0 - r.a.powi(d as i32)).powf(1.0 / f64::from(d));
                assert!((r.a.powi(d as i32) + b.powi(d as i32) - 1.0).abs() < 1e-12);
            }
        }
    }
    assert!(sweep(2, &[1.0], &[0.5, 0.4]).is_err());
    assert!(sweep(2, &[1.0], &[0.0, 0.4]).is_err());
}

#[test]
fn variational_oracle_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let a: f64 = rng.random_range(0.2..1.2);
        let b: f64 = rng.random_range(0.2..1.2);
        let tau: f64 = rng.random_range(0.0..20.0);
        let e = two_ball_energy(&TwoBallConfig::new(2, a, b, tau).unwrap()).unwrap();
        let fd = common::two_ball_variational(2, a, b, tau, 2000);
        assert!(rel(fd, e) < 1e-2, "a={a} b={b} tau={tau}: {fd} vs {e}");
    }
}

#[test]
fn variational_oracle_is_second_order() {
    let e = two_ball_energy(&TwoBallConfig::new(2, 0.8, 0.6, 3.0).unwrap()).unwrap();
    let c = (common::two_ball_variational(2, 0.8, 0.6, 3.0, 200) - e).abs();
    let f = (common::two_ball_variational(2, 0.8, 0.6, 3.0, 400) - e).abs();
    assert!((3.0..5.0).contains(&(c / f)), "ratio {}", c / f);
}

#[test]
fn single_precision_energy() {
    let e32 = two_ball_energy(&TwoBallConfig32::constrained(2, 0.6, 5.0).unwrap()).unwrap();
    assert!(rel(f64::from(e32), energy(2, 0.6, 5.0)) < 1e-4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energy_negative_and_bounded(d in 2u32..=4, a in 0.05f64..0.95, tau in 0.0f64..500.0) {
        let cfg = TwoBallConfig::constrained(d, a, tau).unwrap();
        let e = two_ball_energy(&cfg).unwrap();
        let t1 = torsional_rigidity_ball(&Ball::unit(d).unwrap(), tau).unwrap();
        // E(1, τ) = −T(B₁, τ) is the minimum along the constraint
        prop_assert!(e < 0.0 && e > -t1);
        prop_assert!(integral_ha(d, a, tau).unwrap() < 0.0);
    }

    #[test]
    fn energy_decreases_in_a(d in 2u32..=3, a in 0.02f64..0.97, da in 1e-3f64..0.02, tau in 0.0f64..200.0) {
        prop_assert!(energy(d, a + da, tau) < energy(d, a, tau));
    }
}
