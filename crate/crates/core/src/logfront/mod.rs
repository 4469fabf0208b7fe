//! The log-front `R = P / Q`: elimination to `R2`, removal of spurious
//! factors, and validation against the lattice prediction.

pub mod pipeline;
pub mod validate;

pub use pipeline::{
    compute_logfront, compute_r1, compute_r2, dilate_factor_of_p_point, dilate_factor_of_q_point, extract_logfront,
    tangency_scheme, EliminationOrder, FactorJson, LogFrontJson, LogFrontResult, PipelineOptions, RemovalReason,
    RemovedFactor,
};
pub use validate::{
    double_dual_check, elimination_order_check, invert_ab, prediction_degree, validate, validate_with_profiles,
    DoubleDual, EdgeDelta, OrderCheck, Validation,
};

use crate::exactalg::AlgebraError;
use crate::invariants::InvariantsError;
use crate::lattice::LatticeError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LogfrontError {
    #[error("{0} does not depend on the elimination variable")]
    NoDependence(String),
    #[error("intermediate total degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
}

impl LogfrontError {
    pub fn code(&self) -> &'static str {
        match self {
            LogfrontError::NoDependence(_) => "logfront.no_dependence",
            LogfrontError::DegreeBound { .. } => "logfront.degree_bound",
            LogfrontError::Precondition(_) => "logfront.precondition",
            LogfrontError::Algebra(e) => e.code(),
            LogfrontError::Lattice(e) => e.code(),
            LogfrontError::Invariants(e) => e.code(),
        }
    }
}
