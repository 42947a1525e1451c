//! First eigenvalues and torsion on a grid domain.

use serde::Serialize;

use crate::domain::GridDomain;
use crate::error::{invalid, Result};
use crate::operator::{laplacian, DiscreteOperator, OperatorKind, Scheme};
use crate::solve::{inverse_iteration, EigenSolution, Factorization, IterationControl};

pub const LAPLACIAN_RESIDUAL: f64 = 1e-10;
pub const PLATE_RESIDUAL: f64 = 1e-9;
/// Nodes with |u| below this fraction of max|u| are ignored by the sign test.
pub const SIGN_FLOOR: f64 = 1e-8;

fn check_tau(tau: f64) -> Result<()> {
    if tau.is_finite() && tau >= 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("tau must be finite and ≥ 0, got {tau}")))
    }
}

/// λ(Ω) of the discrete Dirichlet Laplacian with its eigenvector.
pub fn laplacian_first(domain: &GridDomain, scheme: Scheme) -> Result<EigenSolution> {
    let op = DiscreteOperator::assemble(domain, OperatorKind::NegLaplacian5pt, scheme);
    let fac = Factorization::new(&op.matrix, scheme.is_symmetric())?;
    inverse_iteration(&op.matrix, &fac, domain.h(), IterationControl::with_residual(LAPLACIAN_RESIDUAL))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignReport {
    pub one_signed: bool,
    /// Fraction of significant nodes whose sign is opposite to the bulk.
    pub minority_fraction: f64,
    /// min u / max u over all nodes.
    pub min_over_max: f64,
}

impl SignReport {
    pub fn of(u: &[f64]) -> Self {
        let max = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let floor = SIGN_FLOOR * max;
        let (mut pos, mut neg) = (0usize, 0usize);
        for v in u {
            if *v > floor {
                pos += 1;
            } else if *v < -floor {
                neg += 1;
            }
        }
        let total = (pos + neg).max(1) as f64;
        let hi = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = u.iter().copied().fold(f64::INFINITY, f64::min);
        SignReport {
            one_signed: pos == 0 || neg == 0,
            minority_fraction: pos.min(neg) as f64 / total,
            min_over_max: if hi != 0.0 { lo / hi } else { 0.0 },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlateEigen {
    pub gamma: f64,
    pub tau: f64,
    pub scheme: Scheme,
    pub solution: EigenSolution,
    pub sign: SignReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlateTorsion {
    pub tau: f64,
    pub scheme: Scheme,
    /// h²·Σw.
    pub rigidity: f64,
    #[serde(skip)]
    pub w: Vec<f64>,
}

/// One factorization of S_τ reused for the eigenvalue and the torsion problem.
pub struct PlateSolver<'a> {
    domain: &'a GridDomain,
    tau: f64,
    op: DiscreteOperator,
    fac: Factorization,
}

impl<'a> PlateSolver<'a> {
    /// τ may be negative here (used for one-sided differences); the public
    /// entry points below require τ ≥ 0.
    pub fn new(domain: &'a GridDomain, tau: f64, scheme: Scheme) -> Result<Self> {
        if !tau.is_finite() {
            return Err(invalid("tau must be finite"));
        }
        let op = DiscreteOperator::assemble(domain, OperatorKind::Plate(tau), scheme);
        let fac = Factorization::new(&op.matrix, scheme.is_symmetric())?;
        Ok(PlateSolver { domain, tau, op, fac })
    }

    pub fn operator(&self) -> &DiscreteOperator {
        &self.op
    }

    pub fn eigen(&self) -> Result<PlateEigen> {
        let solution = inverse_iteration(
            &self.op.matrix,
            &self.fac,
            self.domain.h(),
            IterationControl::with_residual(PLATE_RESIDUAL),
        )?;
        Ok(PlateEigen {
            gamma: solution.value,
            tau: self.tau,
            scheme: self.op.scheme,
            sign: SignReport::of(&solution.vector),
            solution,
        })
    }

    pub fn torsion(&self) -> Result<PlateTorsion> {
        let w = self.fac.solve(&vec![1.0; self.domain.len()])?;
        let h2 = self.domain.h() * self.domain.h();
        Ok(PlateTorsion {
            tau: self.tau,
            scheme: self.op.scheme,
            rigidity: h2 * w.iter().sum::<f64>(),
            w,
        })
    }
}

/// Γ(Ω, τ) and the first eigenvector of S_τ.
pub fn plate_first(domain: &GridDomain, tau: f64, scheme: Scheme) -> Result<PlateEigen> {
    check_tau(tau)?;
    PlateSolver::new(domain, tau, scheme)?.eigen()
}

/// The torsion function w of S_τ w = 1 and T(Ω, τ) = h²Σw.
pub fn plate_torsion(domain: &GridDomain, tau: f64, scheme: Scheme) -> Result<PlateTorsion> {
    check_tau(tau)?;
    PlateSolver::new(domain, tau, scheme)?.torsion()
}

/// Discrete ∫|∇u|² = h²·u·(−Δ_h u).
pub fn grad_norm_sq(domain: &GridDomain, u: &[f64], scheme: Scheme) -> f64 {
    let lu = laplacian(domain, scheme).mul_vec(u);
    let h2 = domain.h() * domain.h();
    -h2 * u.iter().zip(&lu).map(|(a, b)| a * b).sum::<f64>()
}
