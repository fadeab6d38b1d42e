//! Distorted and copula-distorted Gini mean differences.
//!
//! The crate evaluates the distorted Gini mean difference of a base
//! variable and a distorted companion, both in the independent case and
//! under a survival copula linking the pair, along with the
//! alpha-derivatives, grid-based checkers for the sufficient conditions
//! that control monotonicity and extrema in the distortion parameter,
//! an extremum finder, and a Monte Carlo cross-check.

pub mod conditions;
pub mod config;
pub mod copulas;
pub mod distortions;
pub mod distributions;
pub mod error;
pub mod extrema;
pub mod measures;
pub mod montecarlo;
pub mod quadrature;
pub mod report;
pub mod special;
pub mod svg;

pub use conditions::{CheckContext, TheoremId};
pub use copulas::SurvivalCopulaFamily;
pub use distortions::{DistortedVariable, DistortionFamily, ModelId, Monotonicity};
pub use distributions::{AgingReport, ContinuousDistribution};
pub use error::{Error, Result};
pub use extrema::{ExtremumKind, ExtremumResult, ScanRow};
pub use measures::MeasureResult;
pub use montecarlo::McEstimate;
pub use quadrature::QuadratureResult;
pub use report::{ConditionReport, Direction, Verdict};
