//! Independent radial finite-difference oracle.
//!
//! Solves Δv = u, Δu − τu = src on [0, R] for radial v with v(R) = 0 and
//! v'(R) = t, by second-order collocation with ghost nodes, and evaluates
//! the energy ∫(Δv)² + τ∫|∇v|² − 2 src ∫v of the solution.
#![allow(dead_code)]

use faer::prelude::*;
use faer::sparse::{SparseColMat, Triplet};
use std::f64::consts::PI;

pub fn sphere_area(d: u32) -> f64 {
    // |S^{d-1}| = 2π^{d/2}/Γ(d/2)
    let gamma_half = match d {
        2 => 1.0,
        3 => PI.sqrt() / 2.0,
        4 => 1.0,
        5 => 0.75 * PI.sqrt(),
        _ => panic!("unsupported dimension"),
    };
    2.0 * PI.powf(f64::from(d) / 2.0) / gamma_half
}

pub struct RadialSolution {
    pub r: Vec<f64>,
    pub v: Vec<f64>,
    pub lap: Vec<f64>,
    pub energy: f64,
}

/// Radial Laplacian stencil at node i as (offset, coefficient) on i−1, i, i+1.
fn stencil(d: u32, h: f64, i: usize) -> [(isize, f64); 3] {
    let h2 = h * h;
    if i == 0 {
        // Δf(0) = d·f''(0), symmetric ghost f_{-1} = f_1
        let c = 2.0 * f64::from(d) / h2;
        return [(-1, 0.0), (0, -c), (1, c)];
    }
    let c = (f64::from(d) - 1.0) / (2.0 * h * i as f64 * h);
    [(-1, 1.0 / h2 - c), (0, -2.0 / h2), (1, 1.0 / h2 + c)]
}

pub fn radial_solve(d: u32, big_r: f64, tau: f64, n: usize, src: f64, t: f64) -> RadialSolution {
    let h = big_r / n as f64;
    // unknowns: v_i at 2i (i < n), u_i at 2i+1 (i < n), u_n at 2n
    let vi = |i: usize| 2 * i;
    let ui = |i: usize| if i == n { 2 * n } else { 2 * i + 1 };
    let size = 2 * n + 1;
    let mut trip = Vec::with_capacity(8 * size);
    let mut rhs = Mat::<f64>::zeros(size, 1);
    let mut row = 0;
    // Δv_i − u_i = 0 for i = 0..=n
    for i in 0..=n {
        for (off, c) in stencil(d, h, i) {
            if c == 0.0 {
                continue;
            }
            let j = i as isize + off;
            let j = if j as usize > n {
                // ghost v_{n+1} = v_{n-1} + 2ht
                rhs[(row, 0)] -= c * 2.0 * h * t;
                n - 1
            } else {
                j as usize
            };
            if j < n {
                trip.push(Triplet::new(row, vi(j), c));
            }
        }
        trip.push(Triplet::new(row, ui(i), -1.0));
        row += 1;
    }
    // Δu_i − τu_i = src for i = 0..n
    for i in 0..n {
        for (off, c) in stencil(d, h, i) {
            if c != 0.0 {
                trip.push(Triplet::new(row, ui((i as isize + off) as usize), c));
            }
        }
        trip.push(Triplet::new(row, ui(i), -tau));
        rhs[(row, 0)] = src;
        row += 1;
    }
    let a = SparseColMat::<usize, f64>::try_new_from_triplets(size, size, &trip).unwrap();
    let x = a.sp_lu().unwrap().solve(&rhs);
    let mut v: Vec<f64> = (0..n).map(|i| x[(vi(i), 0)]).collect();
    v.push(0.0);
    let lap: Vec<f64> = (0..=n).map(|i| x[(ui(i), 0)]).collect();
    let r: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
    let dm1 = d as i32 - 1;
    let mut e = 0.0;
    for i in 0..=n {
        let w = if i == 0 || i == n { 0.5 * h } else { h } * r[i].powi(dm1);
        e += w * (lap[i] * lap[i] - 2.0 * src * v[i]);
    }
    for i in 0..n {
        let dv = (v[i + 1] - v[i]) / h;
        e += tau * h * ((i as f64 + 0.5) * h).powi(dm1) * dv * dv;
    }
    RadialSolution { r, v, lap, energy: sphere_area(d) * e }
}

/// Minimum over the coupling slope of the constrained two-ball energy:
/// v on B_a with source 1 and slope t, w on B_b without source and slope s,
/// linked by t·a^{d-1} = s·b^{d-1}.
pub fn two_ball_variational(d: u32, a: f64, b: f64, tau: f64, n: usize) -> f64 {
    let link = (a / b).powi(d as i32 - 1);
    let total = |t: f64| {
        radial_solve(d, a, tau, n, 1.0, t).energy + radial_solve(d, b, 0.0, n, 0.0, t * link).energy
    };
    // the energy is an exact quadratic in t
    let (fm, f0, fp) = (total(-1.0), total(0.0), total(1.0));
    let curv = 0.5 * (fp + fm) - f0;
    let lin = 0.5 * (fp - fm);
    f0 - lin * lin / (4.0 * curv)
}
