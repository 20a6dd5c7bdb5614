//! Entropic uncertainty relations for mutually unbiased bases.
//!
//! The crate builds complete and partial sets of mutually unbiased bases in
//! prime dimension ([`mub`]), measures pure and mixed states in them
//! ([`measure`]), evaluates closed-form entropic lower bounds for sets of
//! `M` bases in dimension `N` ([`bounds`]) and probes how tight those bounds
//! are by minimizing the entropy sum numerically ([`tightness`]).
//!
//! All numeric types are generic over a [`Real`] scalar (`f64` or `f32`).
//! Double precision is the reference; the aliases at the crate root fix the
//! scalar to `f64`.
//!
//! ```
//! use mub_entropy::{bounds, generate_mub_set, haar_random_state, measure, LogBase, PureState, Seed};
//!
//! let bits = LogBase::two();
//! let set = generate_mub_set(5, 3).unwrap();
//! let psi: PureState = haar_random_state(5, Seed(7)).unwrap();
//! let total = measure::entropy_sum(&psi, &set, bits).unwrap();
//! let floor = bounds::refined_intermediate_bound(5, 3, bits).unwrap();
//! assert!(total >= floor);
//! ```

// `!(x > y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod format;
pub mod measure;
pub mod mub;
pub mod qstate;
pub mod scalar;
pub mod tightness;

pub use bounds::{bound_report, BoundKind};
pub use error::{Error, Result};
pub use mub::{basis_vector, generate_mub_set, is_prime, max_overlap, verify_mub_set};
pub use qstate::{
    density_from_pure, haar_random_state, random_density_matrix, state_purity, QuantumState, Seed,
};
pub use scalar::Real;
pub use tightness::{gap_sweep, minimize_entropy_sum, OptimizerConfig};

pub type PureState = qstate::PureState<f64>;
pub type DensityMatrix = qstate::DensityMatrix<f64>;
pub type Basis = mub::Basis<f64>;
pub type MubSet = mub::MubSet<f64>;
pub type UnbiasednessReport = mub::UnbiasednessReport<f64>;
pub type LogBase = measure::LogBase<f64>;
pub type ProbabilityDistribution = measure::ProbabilityDistribution<f64>;
pub type IdentityReport = measure::IdentityReport<f64>;
pub type BoundReport = bounds::BoundReport<f64>;
pub type TightnessResult = tightness::TightnessResult<f64>;

pub type PureState32 = qstate::PureState<f32>;
pub type DensityMatrix32 = qstate::DensityMatrix<f32>;
pub type MubSet32 = mub::MubSet<f32>;
pub type LogBase32 = measure::LogBase<f32>;
