//! Finite-difference operators on a [`GridDomain`].
//!
//! Two discretizations of the clamped problem are offered.
//!
//! `ZeroExtension` extends u by 0 outside the mask. Δ₀ is the 5-point
//! Laplacian, and the bilaplacian is the Gram form Σ(Δ₀u)² taken over every
//! lattice node, exterior ones included. That is the classical 13-point
//! stencil with zero references outside the mask. Squaring the interior
//! block of Δ₀ instead would drop Δ₀u at exterior nodes and discretize the
//! hinged plate (u = Δu = 0). The plate operator is symmetric positive
//! definite for τ ≥ 0 and only first-order accurate on curved or oblique
//! boundaries.
//!
//! `BoundaryFitted` places the Dirichlet condition u = 0 at the true
//! boundary crossing (Shortley–Weller), so Δ_h is second-order but not
//! symmetric. The clamped condition enters through the boundary value of
//! Δu: with u and ∂_n u both zero, the second derivative of u along the
//! axis e equals (e·n)²·∂²_n u = (e·n)²·Δu there, and the quadratic through
//! the double zero and the node at distance θh gives
//! Δu(b) = 2u_P/((θh)²(e·n)²). The bilaplacian is Δ_h applied to Δ_h u with
//! those boundary values, which is Δ_h² plus a diagonal correction.

use serde::{Deserialize, Serialize};

use crate::domain::{GridDomain, Link, DIRS};
use crate::sparse::CsrMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    #[default]
    BoundaryFitted,
    ZeroExtension,
}

impl Scheme {
    pub fn is_symmetric(self) -> bool {
        matches!(self, Scheme::ZeroExtension)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum OperatorKind {
    NegLaplacian5pt,
    Bilaplacian13pt,
    /// Bilaplacian + τ·NegLaplacian.
    Plate(f64),
}

#[derive(Debug, Clone)]
pub struct DiscreteOperator {
    pub kind: OperatorKind,
    pub scheme: Scheme,
    pub matrix: CsrMatrix,
}

/// Smallest |e·n| used in the boundary value of Δu.
const EN_MIN: f64 = 1e-6;

struct Axis {
    plus: Link,
    minus: Link,
}

fn theta(l: &Link) -> f64 {
    match *l {
        Link::Node(_) => 1.0,
        Link::Boundary { theta, .. } => theta,
    }
}

fn axes(domain: &GridDomain, k: usize, scheme: Scheme) -> [Axis; 2] {
    let get = |d| match (scheme, domain.link(k, d)) {
        (Scheme::ZeroExtension, Link::Boundary { normal, .. }) => Link::Boundary { theta: 1.0, normal },
        (_, l) => l,
    };
    [Axis { plus: get(DIRS[0]), minus: get(DIRS[1]) }, Axis { plus: get(DIRS[2]), minus: get(DIRS[3]) }]
}

/// The discrete Laplacian Δ_h (negative semidefinite sign convention).
pub fn laplacian(domain: &GridDomain, scheme: Scheme) -> CsrMatrix {
    let h2 = domain.h() * domain.h();
    let rows = (0..domain.len())
        .map(|k| {
            let mut row = Vec::with_capacity(5);
            let mut diag = 0.0;
            for ax in axes(domain, k, scheme) {
                let (tp, tm) = (theta(&ax.plus), theta(&ax.minus));
                diag -= 2.0 / (h2 * tp * tm);
                if let Link::Node(q) = ax.plus {
                    row.push((q, 2.0 / (h2 * tp * (tp + tm))));
                }
                if let Link::Node(q) = ax.minus {
                    row.push((q, 2.0 / (h2 * tm * (tp + tm))));
                }
            }
            row.push((k, diag));
            row
        })
        .collect();
    CsrMatrix::from_rows(rows)
}

/// Coefficient of u_P in Δu(b) at a boundary crossing at θh with normal n
/// along the axis direction e.
fn boundary_lap_coeff(h: f64, theta: f64, e: (isize, isize), n: [f64; 2]) -> f64 {
    let en = (e.0 as f64 * n[0] + e.1 as f64 * n[1]).abs().max(EN_MIN);
    2.0 / ((theta * h) * (theta * h) * en * en)
}

/// Diagonal term carrying the boundary values of Δu in the fitted bilaplacian.
fn clamped_correction(domain: &GridDomain) -> CsrMatrix {
    let h = domain.h();
    let rows = (0..domain.len())
        .map(|k| {
            let mut g = 0.0;
            for (a, ax) in axes(domain, k, Scheme::BoundaryFitted).iter().enumerate() {
                let (tp, tm) = (theta(&ax.plus), theta(&ax.minus));
                for (link, t, other, dir) in [(&ax.plus, tp, tm, DIRS[2 * a]), (&ax.minus, tm, tp, DIRS[2 * a + 1])] {
                    if let Link::Boundary { normal, .. } = *link {
                        g += 2.0 / (h * h * t * (t + other)) * boundary_lap_coeff(h, t, dir, normal);
                    }
                }
            }
            vec![(k, g)]
        })
        .collect();
    CsrMatrix::from_rows(rows)
}

pub fn bilaplacian(domain: &GridDomain, scheme: Scheme) -> CsrMatrix {
    match scheme {
        Scheme::ZeroExtension => bilaplacian_13pt_direct(domain),
        Scheme::BoundaryFitted => {
            let l = laplacian(domain, scheme);
            l.matmul(&l).add_scaled(&clamped_correction(domain), 1.0)
        }
    }
}

impl DiscreteOperator {
    pub fn assemble(domain: &GridDomain, kind: OperatorKind, scheme: Scheme) -> Self {
        let matrix = match kind {
            OperatorKind::NegLaplacian5pt => laplacian(domain, scheme).scaled(-1.0),
            OperatorKind::Bilaplacian13pt => bilaplacian(domain, scheme),
            OperatorKind::Plate(tau) => bilaplacian(domain, scheme).add_scaled(&laplacian(domain, scheme), -tau),
        };
        DiscreteOperator { kind, scheme, matrix }
    }
}

/// The classical 13-point bilaplacian stencil (20, −8, 2, 1)/h⁴ with every
/// reference outside the mask read as 0, assembled directly.
pub fn bilaplacian_13pt_direct(domain: &GridDomain) -> CsrMatrix {
    let h4 = domain.h().powi(4);
    const STENCIL: [(isize, isize, f64); 13] = [
        (0, 0, 20.0),
        (1, 0, -8.0),
        (-1, 0, -8.0),
        (0, 1, -8.0),
        (0, -1, -8.0),
        (1, 1, 2.0),
        (1, -1, 2.0),
        (-1, 1, 2.0),
        (-1, -1, 2.0),
        (2, 0, 1.0),
        (-2, 0, 1.0),
        (0, 2, 1.0),
        (0, -2, 1.0),
    ];
    let rows = (0..domain.len())
        .map(|k| {
            let (i, j) = domain.node(k);
            STENCIL
                .iter()
                .filter_map(|&(di, dj, c)| domain.index_of(i as isize + di, j as isize + dj).map(|q| (q, c / h4)))
                .collect()
        })
        .collect();
    CsrMatrix::from_rows(rows)
}

/// A boundary crossing seen from an interior node along a lattice axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundarySample {
    pub point: [f64; 2],
    pub normal: [f64; 2],
    /// h·|n·e|; summed over all crossings this integrates over ∂Ω, since
    /// the x-crossings sample ∫f·n_x² ds and the y-crossings ∫f·n_y² ds.
    pub weight: f64,
    /// The boundary value of Δu for the given grid function u.
    pub lap: f64,
}

/// Boundary crossings with the trace of Δu of the grid function `u`,
/// computed from the clamped double zero as in the fitted scheme.
pub fn boundary_samples(domain: &GridDomain, u: &[f64]) -> Vec<BoundarySample> {
    let h = domain.h();
    let mut out = Vec::new();
    for (k, &uk) in u.iter().enumerate().take(domain.len()) {
        let [x, y] = domain.position(k);
        for dir in DIRS {
            if let Link::Boundary { theta, normal } = domain.link(k, dir) {
                let e = [dir.0 as f64, dir.1 as f64];
                out.push(BoundarySample {
                    point: [x + theta * h * e[0], y + theta * h * e[1]],
                    normal,
                    weight: h * (e[0] * normal[0] + e[1] * normal[1]).abs(),
                    lap: boundary_lap_coeff(h, theta, dir, normal) * uk,
                });
            }
        }
    }
    out
}
