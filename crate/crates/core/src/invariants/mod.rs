//! Counting formulas for a single curve and for the log-front of two
//! curves.

pub mod curve;
pub mod klein;
pub mod plucker;
pub mod profile;

pub use curve::{
    curve_invariants, cuspidal_nodal_numbers, euler_characteristic, geometric_genus, inflection_count,
    log_gauss_degree, log_gauss_degree_raw, CurveInvariants, NodalCuspidal,
};
pub use klein::{classical_klein_check, klein_generic, klein_sum, KleinReport, KleinTerms, RealSplit};
pub use plucker::{
    generic_chi, generic_cusps, generic_degree_report, generic_polygon, genus_of_euler, logfront_cuspidal,
    logfront_euler, logfront_gauss_degree, logfront_invariants, logfront_nodal, tangency_multiplicity, CoincidenceList,
    CuspTerm, GenericReport, LogfrontEuler, LogfrontInvariants,
};
pub use profile::{BoundaryEdge, BoundaryProfile, SingularPoint, SingularityProfile};

use crate::lattice::LatticeError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InvariantsError {
    #[error("degenerate curve: log-Gauss degree {deg_gauss} is not positive")]
    DegenerateCurve { deg_gauss: i64 },
    #[error("inconsistent profile: {0}")]
    InconsistentProfile(String),
    #[error("intersection data inconsistent: {0}")]
    IntersectionData(String),
    #[error("negative node count {0}: R has singularities other than nodes and cusps")]
    NegativeNodes(i64),
    #[error("non-integral intermediate: {0}")]
    HalfInteger(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl InvariantsError {
    pub fn code(&self) -> &'static str {
        match self {
            InvariantsError::DegenerateCurve { .. } => "invariants.degenerate_curve",
            InvariantsError::InconsistentProfile(_) => "invariants.inconsistent_profile",
            InvariantsError::IntersectionData(_) => "invariants.intersection_data",
            InvariantsError::NegativeNodes(_) => "invariants.negative_nodes",
            InvariantsError::HalfInteger(_) => "invariants.half_integer",
            InvariantsError::Degenerate(_) => "invariants.degenerate",
            InvariantsError::InvalidInput(_) => "invariants.invalid_input",
            InvariantsError::Lattice(e) => e.code(),
        }
    }
}
