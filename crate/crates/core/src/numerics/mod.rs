//! Floating-point verification: root finding, fibres of the tangency
//! system, real-curve tracing, cusp detection, amoebas and Harnack tests.
//!
//! All tolerances live in [`NumericsConfig`].

pub mod amoeba;
pub mod cusp;
pub mod fiber;
pub mod fpoly;
pub mod output;
pub mod roots;
pub mod trace;

pub use amoeba::{
    alga_sample, amoeba_area_estimate, amoeba_contains, amoeba_sample, default_window, fiber_count, harnack_fiber_test,
    tentacle_bias_bound, AreaEstimate, HarnackReport, AREA_TOLERANCE,
};
pub use cusp::{cusp_detect, cusp_detect_with_arm, CuspReport, DetectedCusp, DEFAULT_CUSP_ANGLE};
pub use fiber::{fiber_solutions, tangency_residual, FiberPoint, FiberSolver, SampleReport};
pub use fpoly::{FloatPoly, FloatPoly3};
pub use output::{fmt17, points_to_csv, points_to_svg, trace_to_csv, trace_to_svg};
pub use roots::{all_roots, univariate_roots, univariate_roots_with, RootCluster};
pub use trace::{dual_trace, trace_parametric, trace_real_locus, trace_with, TraceSet, Window};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::logfront::LogfrontError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericsConfig {
    /// Roots closer than this (relative to `max(1, |z|)`) form one cluster.
    pub cluster_tol: f64,
    /// Scaled residual a fibre solution must reach on both equations.
    pub fiber_tol: f64,
    /// Scaled residual of traced points, relative to the largest grid value.
    pub trace_tol: f64,
    /// Tangency residual below which a point counts as on `R`.
    pub tangency_tol: f64,
    /// Smallest angular step when tracking roots around a circle.
    pub min_theta_step: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            cluster_tol: 1e-7,
            fiber_tol: 1e-8,
            trace_tol: 1e-9,
            tangency_tol: 1e-6,
            min_theta_step: 2.0 * std::f64::consts::PI / (1u64 << 20) as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("root finder did not converge")]
    RootsNotConverged { partial: Vec<Complex64> },
    #[error("point outside the torus: {0}")]
    OutsideTorus(String),
    #[error("degenerate specialization: {0}")]
    Degenerate(String),
    #[error("fibre solution failed verification: residual {residual:e}")]
    Verification { residual: f64 },
    #[error("root tracking failed: step below {min_step:e} at theta = {theta}")]
    Tracking { theta: f64, min_step: f64 },
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Logfront(#[from] LogfrontError),
}

impl NumericsError {
    pub fn code(&self) -> &'static str {
        match self {
            NumericsError::DegreeZero => "numerics.degree_zero",
            NumericsError::RootsNotConverged { .. } => "numerics.not_converged",
            NumericsError::OutsideTorus(_) => "numerics.outside_torus",
            NumericsError::Degenerate(_) => "numerics.degenerate",
            NumericsError::Verification { .. } => "numerics.verification",
            NumericsError::Tracking { .. } => "numerics.tracking",
            NumericsError::NonFinite(_) => "numerics.non_finite",
            NumericsError::InvalidArgument(_) => "numerics.invalid_argument",
            NumericsError::Logfront(e) => e.code(),
        }
    }
}
