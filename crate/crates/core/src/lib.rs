//! Norms, pairings, reproducing formulas and the functional calculus of the
//! analytic Besov algebra on the right half-plane, for matrix operators.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! aliases at the crate root fix `f64`.

pub mod approx;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod func;
pub mod linalg;
pub mod measures;
pub mod operator;
pub mod quad;
pub mod scalar;
pub mod spec;

pub use config::{CalcReport as CalcReportT, NormReport as NormReportT, QuadConfig as QuadConfigT, ScalarReport};
pub use error::{BesovError, Result};
pub use scalar::{Real, C};

pub type HalfPlaneFunction = func::HalfPlaneFn<f64>;
pub type RadonMeasure = measures::Measure<f64>;
pub type MatrixOperator = operator::MatrixOp<f64>;
pub type QuadratureConfig = config::QuadConfig<f64>;
pub type NormReport = config::NormReport<f64>;
pub type CalcReport = config::CalcReport<f64>;
pub type Complex = C<f64>;
pub type Matrix = linalg::CMat<f64>;
