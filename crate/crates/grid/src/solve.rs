//! Sparse factorizations and shift-invert inverse iteration.

use faer::prelude::*;
use faer::sparse::linalg::solvers::{Llt, Lu};
use faer::Side;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{GridError, Result};
use crate::sparse::CsrMatrix;

pub enum Factorization {
    Lu(Lu<usize, f64>),
    Cholesky(Llt<usize, f64>),
}

impl Factorization {
    /// Cholesky for symmetric matrices (fails on a non-positive pivot),
    /// LU otherwise.
    pub fn new(m: &CsrMatrix, symmetric: bool) -> Result<Self> {
        let a = m.to_faer()?;
        if symmetric {
            a.sp_cholesky(Side::Lower)
                .map(Factorization::Cholesky)
                .map_err(|e| GridError::Factorization(format!("Cholesky: {e:?}")))
        } else {
            a.sp_lu().map(Factorization::Lu).map_err(|e| GridError::Factorization(format!("LU: {e:?}")))
        }
    }

    pub fn is_cholesky(&self) -> bool {
        matches!(self, Factorization::Cholesky(_))
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let rhs = Mat::<f64>::from_fn(b.len(), 1, |i, _| b[i]);
        let x = match self {
            Factorization::Lu(f) => f.solve(&rhs),
            Factorization::Cholesky(f) => f.solve(&rhs),
        };
        let out: Vec<f64> = (0..b.len()).map(|i| x[(i, 0)]).collect();
        if out.iter().all(|v| v.is_finite()) {
            Ok(out)
        } else {
            Err(GridError::Singular("non-finite solution".into()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationControl {
    /// Bound on ‖A⁻¹x − μx‖/(|μ|·‖x‖).
    pub residual_tol: f64,
    /// Bound on the relative change of the eigenvalue between iterates.
    pub change_tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl IterationControl {
    pub fn with_residual(residual_tol: f64) -> Self {
        IterationControl { residual_tol, change_tol: 1e-12, max_iter: 2000, seed: 0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenSolution {
    pub value: f64,
    /// Normalized so that h²·Σu² = 1 and Σu > 0.
    #[serde(skip)]
    pub vector: Vec<f64>,
    pub iterations: usize,
    /// ‖A⁻¹x − x/λ‖·λ/‖x‖ at exit.
    pub residual: f64,
    /// ‖Ax − λx‖/(λ‖x‖) at exit; bounded below by rounding in ‖A‖.
    pub direct_residual: f64,
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Smallest eigenpair of `a` by inverse iteration from a random positive
/// vector. `h` only fixes the normalization of the returned vector.
pub fn inverse_iteration(a: &CsrMatrix, fac: &Factorization, h: f64, ctl: IterationControl) -> Result<EigenSolution> {
    let n = a.n();
    let mut rng = ChaCha8Rng::seed_from_u64(ctl.seed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
    let nx = norm(&x);
    x.iter_mut().for_each(|v| *v /= nx);
    let mut lambda = f64::NAN;
    let mut residual = f64::INFINITY;
    for it in 1..=ctl.max_iter {
        let y = fac.solve(&x)?;
        let mu = dot(&x, &y);
        if mu == 0.0 || !mu.is_finite() {
            return Err(GridError::Singular("inverse iteration collapsed".into()));
        }
        residual = x.iter().zip(&y).map(|(xi, yi)| (yi - mu * xi).powi(2)).sum::<f64>().sqrt() / mu.abs();
        let next = 1.0 / mu;
        let change = ((next - lambda) / next).abs();
        lambda = next;
        let ny = norm(&y);
        x = y.into_iter().map(|v| v / ny).collect();
        if residual <= ctl.residual_tol && change <= ctl.change_tol {
            return Ok(finish(a, x, lambda, h, it, residual));
        }
    }
    Err(GridError::NoConvergence { iterations: ctl.max_iter, residual })
}

fn finish(a: &CsrMatrix, mut x: Vec<f64>, lambda: f64, h: f64, iterations: usize, residual: f64) -> EigenSolution {
    let ax = a.mul_vec(&x);
    let direct = ax.iter().zip(&x).map(|(p, q)| (p - lambda * q).powi(2)).sum::<f64>().sqrt() / (lambda.abs() * norm(&x));
    let sign = if x.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
    let scale = sign / (h * norm(&x));
    x.iter_mut().for_each(|v| *v *= scale);
    EigenSolution { value: lambda, vector: x, iterations, residual, direct_residual: direct }
}
