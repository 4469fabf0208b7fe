//! Lattice polygons, markings and the log-front polygon prediction.

pub mod marking;
pub mod partition;
pub mod polygon;
pub mod predict;

pub use marking::{edge_marking, edge_partition, EdgeMarkingJson, MarkedEdge, MarkedPolygon, PolygonJson};
pub use partition::{pairing_conjugate, pairing_min, partition_pairing, Partition};
pub use polygon::{
    epsilon_pairing, lattice_length, minkowski_combine, mixed_volume, newton_polygon, newton_polygon_in,
    polygon_metrics, primitive, Edge, LatticePolygon, Point, PolygonKind, PolygonMetrics,
};
pub use predict::{
    predict_boundary_count, predict_logfront_polygon, side_lengths, BoundaryCount, OppositePair, Prediction,
};

use crate::exactalg::AlgebraError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("polygon collapse: edges with normal {normal:?} would shrink below zero by {deficit}")]
    PolygonCollapse { normal: Point, deficit: u64 },
    #[error("degenerate polygon: {0}")]
    Degenerate(String),
    #[error("invalid marking: {0}")]
    Marking(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl LatticeError {
    pub fn code(&self) -> &'static str {
        match self {
            LatticeError::PolygonCollapse { .. } => "lattice.polygon_collapse",
            LatticeError::Degenerate(_) => "lattice.degenerate",
            LatticeError::Marking(_) => "lattice.marking",
            LatticeError::Algebra(e) => e.code(),
        }
    }
}
