//! One PASS/FAIL line per acceptance criterion, written straight to stderr so
//! it shows up without `--nocapture`. The test itself asserts that exactly
//! the expected set of criteria fails.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use plate_core::specfn::{bessel_j_zero, gamma_nu};
use plate_core::twoball::{default_a_grid, sweep, two_ball_energy, two_ball_energy_assembled, two_ball_energy_da, two_ball_energy_explicit};
use plate_core::*;
use plate_grid::verify::{comparison_shapes, convex_threshold, run_studies, saint_venant_report, szego_report};
use plate_grid::*;
use rayon::prelude::*;

/// Criteria that cannot pass as stated; see the README.
const EXPECTED_FAILURES: [u32; 1] = [1];

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn criterion_1() -> Outcome {
    let g = gamma_nu(Order64::from_dimension(2).unwrap()).unwrap();
    let thr = convex_threshold().unwrap();
    let formula = 4.0 * PI * PI / (3.0 * 3f64.sqrt());
    let ok_g = (g - 3.19622).abs() <= 1e-4;
    let ok_thr = (thr - 6.92801).abs() <= 1e-4;
    let ok_formula = (formula - 7.5976).abs() <= 1e-3;
    // equilateral triangle of area π
    let side = 2.0 * (PI / 3f64.sqrt()).sqrt();
    let dom = GridDomain::rasterize(&Shape::equilateral_triangle(side).unwrap(), 1.0 / 256.0).unwrap();
    let fd = laplacian_first(&dom, Scheme::BoundaryFitted).unwrap().value;
    let ok_fd = rel(fd, 7.5976) <= 0.01;
    // the classical value for this side, 16π²/(3·side²)
    let classical = 16.0 * PI * PI / (3.0 * side * side);
    check(
        ok_g && ok_thr && ok_formula && ok_fd,
        format!(
            "gamma_0 = {g:.6} [{}], threshold = {thr:.6} [{}], 4pi^2/(3 sqrt3) = {formula:.5} [{}], \
             FD lambda(T) at h = 1/256 = {fd:.5}, {:.2}% from 7.5976 [{}]; FD is {:.3}% from 16pi^2/(3 side^2) = {classical:.5}",
            ok_g, ok_thr, ok_formula, 100.0 * rel(fd, 7.5976), ok_fd, 100.0 * rel(fd, classical)
        ),
    )
}

const TAUS: [f64; 4] = [0.0, 1.0, 10.0, 100.0];

fn criterion_2() -> Outcome {
    let grid = default_a_grid::<f64>();
    let mut worst_first = 0.0f64;
    let mut worst_last = 0.0f64;
    let mut monotone = true;
    for d in [2, 3] {
        let s = sweep(d, &TAUS, &grid).unwrap();
        monotone &= s.is_monotone();
        for (k, &tau) in TAUS.iter().enumerate() {
            let rows = &s.rows[k * grid.len()..(k + 1) * grid.len()];
            let t1 = torsional_rigidity_ball(&Ball64::unit(d).unwrap(), tau).unwrap();
            worst_first = worst_first.max(rows[0].energy.abs() / t1);
            worst_last = worst_last.max((rows[grid.len() - 1].energy + t1).abs() / t1);
        }
    }
    check(
        monotone && worst_first < 1e-3 && worst_last < 1e-2,
        format!(
            "{} points, strictly decreasing = {monotone}, max |E(0.01)|/T = {worst_first:.2e}, max |E(0.99)+T|/T = {worst_last:.2e}",
            grid.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let grid = default_a_grid::<f64>();
    let mut route = 0.0f64;
    let mut deriv = 0.0f64;
    for d in [2, 3] {
        for &tau in &TAUS {
            for &a in &grid {
                let cfg = TwoBallConfig64::constrained(d, a, tau).unwrap();
                let e1 = two_ball_energy_explicit(&cfg).unwrap();
                let e2 = two_ball_energy_assembled(&cfg).unwrap();
                route = route.max(rel(e1, e2));
                let energy = |x: f64| two_ball_energy(&TwoBallConfig64::constrained(d, x, tau).unwrap()).unwrap();
                let s = f64::min(1e-5, 1e-4 * a);
                let fd = (energy(a + s) - energy(a - s)) / (2.0 * s);
                deriv = deriv.max(rel(fd, two_ball_energy_da(d, a, tau).unwrap()));
            }
        }
    }
    check(route <= 1e-9 && deriv <= 1e-6, format!("max route gap {route:.2e} (tol 1e-9), max dE/da gap {deriv:.2e} (tol 1e-6)"))
}

fn criterion_4() -> Outcome {
    let ball = Ball64::unit(2).unwrap();
    let hs = [1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0];
    let jobs: Vec<(f64, f64)> = [0.0, 1.0, 10.0].iter().flat_map(|&t| hs.iter().map(move |&h| (t, h))).collect();
    let solved: Vec<(f64, f64)> = jobs
        .par_iter()
        .map(|&(tau, h)| {
            let dom = GridDomain::rasterize(&Shape::disk(1.0).unwrap(), h).unwrap();
            let s = PlateSolver::new(&dom, tau, Scheme::BoundaryFitted).unwrap();
            (s.eigen().unwrap().gamma, s.torsion().unwrap().rigidity)
        })
        .collect();
    let mut pass = true;
    let mut parts = Vec::new();
    for (k, tau) in [0.0, 1.0, 10.0].into_iter().enumerate() {
        let exact = [plate_first_eig_ball(&ball, tau).unwrap().gamma, torsional_rigidity_ball(&ball, tau).unwrap()];
        for (q, name) in ["Gamma", "T"].iter().enumerate() {
            let err: Vec<f64> = (0..3).map(|i| {
                let v = if q == 0 { solved[3 * k + i].0 } else { solved[3 * k + i].1 };
                (v - exact[q]).abs()
            }).collect();
            let ratios = [err[0] / err[1], err[1] / err[2]];
            let fine = err[2] / exact[q];
            let ok = fine <= 0.015 && ratios.iter().all(|r| (3.2..=4.8).contains(r));
            pass &= ok;
            parts.push(format!("{name}(tau={tau}) err {:.2e} ratios {:.2}/{:.2}", fine, ratios[0], ratios[1]));
        }
    }
    check(pass, parts.join("; "))
}

fn criterion_5() -> Outcome {
    let studies = run_studies(&comparison_shapes(), &[0.0, 1.0, 10.0], 1.0 / 128.0).unwrap();
    let sv = saint_venant_report(&studies).unwrap();
    let sz = szego_report(&studies).unwrap();
    let sign_changing: Vec<String> = sz
        .entries
        .iter()
        .filter(|e| e.one_signed == Some(false))
        .map(|e| format!("{}@{}", e.shape, e.tau))
        .collect();
    let min_gap = |r: &verify::ComparisonReport, sign: f64| {
        r.entries.iter().map(|e| sign * (e.value - e.disk) / e.disk).fold(f64::INFINITY, f64::min)
    };
    check(
        sv.all_hold && sz.all_hold,
        format!(
            "{} pairs at h = 1/128 and 1/256: Saint-Venant holds = {} (min relative gap {:.3}), Szego holds = {} (min relative gap {:.3}); sign-changing eigenvectors: {}",
            sv.entries.len(),
            sv.all_hold,
            min_gap(&sv, -1.0),
            sz.all_hold,
            min_gap(&sz, 1.0),
            if sign_changing.is_empty() { "none".to_string() } else { sign_changing.join(", ") }
        ),
    )
}

fn criterion_6() -> Outcome {
    let suite = talenti_trials(100, 7, 1.0 / 64.0).unwrap();
    let mut ratios: Vec<f64> = suite
        .records
        .chunks(2)
        .filter(|p| p[0].hypothesis_met && p[1].hypothesis_met && p[0].worst_margin > 0.0 && p[1].worst_margin > 0.0)
        .map(|p| p[0].worst_margin / p[1].worst_margin)
        .collect();
    ratios.sort_by(f64::total_cmp);
    let median = if ratios.is_empty() { f64::NAN } else { ratios[ratios.len() / 2] };
    let order_ok = (3.2..=4.8).contains(&median);
    check(
        suite.trials >= 100 && suite.all_pass && suite.hypothesis_met > 0 && order_ok,
        format!(
            "{} trials (seed 7, h = 1/64 and 1/128): {} hypothesis-met, {} passed; median margin ratio {median:.2} over {} trials",
            suite.trials, suite.hypothesis_met, suite.passed, ratios.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let shapes = [Shape::unit_area_disk(), Shape::unit_area_square(), Shape::unit_area_triangle()];
    let slopes = verify_slopes(&shapes, &[0.0, 1.0, 10.0], 1.0 / 64.0).unwrap();
    let disk = Ball64::unit(2).unwrap();
    let ball_slopes = [0.0, 1.0, 10.0]
        .iter()
        .all(|&t| gamma_tau_slope_check(&disk, t, plate_core::ball::default_slope_step(t)).unwrap().holds(1e-5));
    let mut concave = true;
    let mut worst_second = f64::NEG_INFINITY;
    for d in [2, 3] {
        let b = Ball64::unit(d).unwrap();
        let g: Vec<f64> = (0..=100).map(|t| plate_first_eig_ball(&b, f64::from(t)).unwrap().gamma).collect();
        concave &= g.windows(2).all(|w| w[1] > w[0]);
        for w in g.windows(3) {
            worst_second = worst_second.max(w[2] - 2.0 * w[1] + w[0]);
        }
    }
    concave &= worst_second <= 1e-6;
    let asym = rel(plate_first_eig_ball(&disk, 1e4).unwrap().gamma / 1e4, dirichlet_first_eig_ball(&disk).unwrap());
    check(
        slopes.all_hold && ball_slopes && concave && asym <= 0.03,
        format!(
            "grid slope sandwich ({} cases) = {}, ball slope sandwich = {ball_slopes}, max second difference {worst_second:.2e}, Gamma(B,1e4)/1e4 vs lambda(B) {:.2}%",
            slopes.entries.len(),
            slopes.all_hold,
            100.0 * asym
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut resid = 0.0f64;
    for d in [2, 3] {
        for tau in [-5.0, 0.0, 1.0, 10.0, 100.0, 1e4] {
            let b = Ball64::unit(d).unwrap();
            let w = torsion_ball(&b, tau).unwrap().profile.unwrap();
            let scale = w.value(0.0).abs();
            resid = resid.max(w.value(1.0).abs() / scale).max(w.derivative(1.0).abs() / scale);
        }
    }
    let mut cont = 0.0f64;
    for d in [2, 3] {
        let b = Ball64::unit(d).unwrap();
        let t0 = torsional_rigidity_ball(&b, 0.0).unwrap();
        for t in [1e-6, -1e-6] {
            cont = cont.max(rel(torsional_rigidity_ball(&b, t).unwrap(), t0));
        }
    }
    let disk = Ball64::unit(2).unwrap();
    let j11 = bessel_j_zero(Order64::new(1.0).unwrap(), 1).unwrap();
    let near = torsional_rigidity_ball(&disk, -j11 * j11 + 1e-3).unwrap().abs();
    let far = torsional_rigidity_ball(&disk, -j11 * j11 + 1e-2).unwrap().abs();
    let mut status_ok = true;
    for i in 1..=3 {
        let j = bessel_j_zero(Order64::new(1.0).unwrap(), i).unwrap();
        status_ok &= torsion_ball(&disk, -j * j).unwrap().status == TorsionStatus::NonExistent;
        status_ok &= torsion_ball(&disk, -j * j * (1.0 + 1e-6)).unwrap().status == TorsionStatus::Unique;
    }
    check(
        resid < 1e-9 && cont <= 1e-6 && near >= 5.0 * far && status_ok,
        format!(
            "boundary residual {resid:.2e}, continuity gap {cont:.2e}, |T| ratio at 1e-3 vs 1e-2 = {:.1}, buckling status = {status_ok}",
            near / far
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = BTreeSet::new();
    let mut err = std::io::stderr().lock();
    for (n, run) in criteria {
        let start = Instant::now();
        let o = run();
        if !o.pass {
            failed.insert(n);
        }
        let _ = writeln!(
            err,
            "criterion {n}: {} ({:.1} s) {}",
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    assert_eq!(failed, BTreeSet::from(EXPECTED_FAILURES), "unexpected set of failing criteria");
}
