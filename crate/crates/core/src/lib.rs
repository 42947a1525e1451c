//! Closed-form machinery for the clamped plate under tension, S_τ = Δ² − τΔ,
//! on Euclidean balls and pairs of balls.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar for the common cases.

pub mod ball;
pub mod error;
pub mod gamma_fn;
pub mod profile;
pub mod quad;
pub mod real;
pub mod roots;
pub mod specfn;
pub mod twoball;

pub use ball::{
    buckling_eigs, dirichlet_first_eig_ball, first_eigfn_ball_tau0, gamma_tau_slope_check,
    grad_norm_sq_u0, plate_eigfn_ball, plate_eigfn_grad_norm_sq, plate_first_eig_ball,
    plate_first_eig_ball_extended, tau_threshold, torsion_ball, torsional_rigidity_ball, Ball,
    BucklingMode, PlateEigenResult, SlopeCheck, TorsionBallResult, TorsionStatus,
};
pub use error::{Error, Result};
pub use profile::RadialProfile;
pub use real::Real;
pub use specfn::{BesselZeroTable, Order};
pub use twoball::{AuxiliaryIntegrals, Sweep, SweepRow, TwoBallConfig};

pub type Ball64 = Ball<f64>;
pub type Ball32 = Ball<f32>;
pub type Order64 = Order<f64>;
pub type Order32 = Order<f32>;
pub type RadialProfile64 = RadialProfile<f64>;
pub type PlateEigenResult64 = PlateEigenResult<f64>;
pub type TorsionBallResult64 = TorsionBallResult<f64>;
pub type TwoBallConfig64 = TwoBallConfig<f64>;
pub type TwoBallConfig32 = TwoBallConfig<f32>;
pub type AuxiliaryIntegrals64 = AuxiliaryIntegrals<f64>;
