//! Finite-difference solvers for the clamped plate under tension on
//! rasterized planar domains, and Schwarz symmetrization checks.
//!
//! Everything here is `f64`: the sparse factorizations are instantiated for
//! it and the discretization error dwarfs rounding.

pub mod domain;
pub mod error;
pub mod operator;
pub mod rearrange;
pub mod shape;
pub mod solve;
pub mod solver;
pub mod sparse;
pub mod verify;

pub use domain::{GridDomain, Lattice, Link};
pub use error::{GridError, Result};
pub use operator::{boundary_samples, BoundarySample, DiscreteOperator, OperatorKind, Scheme};
pub use rearrange::{
    concentration_leq, schwarz_symmetrize, talenti_check, talenti_trials, ConcentrationProfile, GridFunction,
    Symmetrized, TalentiReport, TalentiSuite,
};
pub use shape::Shape;
pub use solve::EigenSolution;
pub use solver::{
    grad_norm_sq, laplacian_first, plate_first, plate_torsion, PlateEigen, PlateSolver, PlateTorsion, SignReport,
};
pub use verify::{
    convex_criterion, optimality_alpha, shape_derivative_volume, verify_saint_venant, verify_slopes,
    verify_szego_ordering, Richardson,
};
