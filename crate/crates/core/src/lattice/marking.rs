//! Marked polygons: boundary intersection multiplicities per edge.

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use super::polygon::{hull_vertices, LatticePolygon, Point};
use super::LatticeError;
use crate::exactalg::{squarefree_decomposition, Monomial, SparsePoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedEdge {
    pub length: u64,
    pub direction: Point,
    pub normal: Point,
    pub marking: Partition,
}

/// Polygon with one partition per edge, edges in the order of
/// [`LatticePolygon::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPolygon {
    pub polygon: LatticePolygon,
    pub edges: Vec<MarkedEdge>,
}

impl MarkedPolygon {
    /// Attaches markings; each must have size equal to its edge length.
    pub fn new(polygon: LatticePolygon, markings: Vec<Partition>) -> Result<MarkedPolygon, LatticeError> {
        let sides = polygon.edges();
        if sides.len() != markings.len() {
            return Err(LatticeError::Marking(format!(
                "{} markings for {} edges",
                markings.len(),
                sides.len()
            )));
        }
        let mut edges = Vec::with_capacity(sides.len());
        for (i, (e, m)) in sides.iter().zip(markings).enumerate() {
            if m.size() != e.length {
                return Err(LatticeError::Marking(format!(
                    "edge {i} has length {} but marking {:?} has size {}",
                    e.length,
                    m.parts(),
                    m.size()
                )));
            }
            edges.push(MarkedEdge {
                length: e.length,
                direction: e.direction,
                normal: e.normal,
                marking: m,
            });
        }
        Ok(MarkedPolygon { polygon, edges })
    }

    /// Every boundary point simple.
    pub fn transverse(polygon: LatticePolygon) -> MarkedPolygon {
        let markings = polygon.edges().iter().map(|e| Partition::ones(e.length)).collect();
        Self::new(polygon, markings).expect("ones have the right size")
    }

    /// `|dP|`: number of boundary points, the total number of parts.
    pub fn boundary_points(&self) -> u64 {
        self.edges.iter().map(|e| e.marking.len()).sum()
    }

    pub fn edge_with_normal(&self, n: Point) -> Option<&MarkedEdge> {
        self.edges.iter().find(|e| e.normal == n)
    }

    /// `-self`, markings carried along.
    pub fn reflect(&self) -> MarkedPolygon {
        let polygon = self.polygon.reflect();
        let markings = polygon
            .edges()
            .iter()
            .map(|e| {
                let n = [-e.normal[0], -e.normal[1]];
                self.edge_with_normal(n).expect("reflected edge").marking.clone()
            })
            .collect();
        Self::new(polygon, markings).expect("reflection preserves lengths")
    }

    pub fn to_json(&self) -> PolygonJson {
        PolygonJson {
            vertices: self.polygon.vertices().to_vec(),
            markings: Some(
                self.edges
                    .iter()
                    .enumerate()
                    .map(|(i, e)| EdgeMarkingJson {
                        edge: i,
                        parts: e.marking.parts().to_vec(),
                    })
                    .collect(),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeMarkingJson {
    pub edge: usize,
    pub parts: Vec<u64>,
}

/// `{"vertices":[[0,0],[2,0],[0,2]],"markings":[{"edge":0,"parts":[1,1]}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub markings: Option<Vec<EdgeMarkingJson>>,
}

impl PolygonJson {
    pub fn from_polygon(p: &LatticePolygon) -> PolygonJson {
        PolygonJson {
            vertices: p.vertices().to_vec(),
            markings: None,
        }
    }

    /// Edges without an explicit marking are transverse.
    pub fn to_marked(&self) -> Result<MarkedPolygon, LatticeError> {
        let raw = LatticePolygon::from_vertices(&self.vertices).map_err(LatticeError::Marking)?;
        // Edge indices refer to the canonical order, which starts at the
        // lexicographically minimal vertex.
        let mut markings: Vec<Partition> = raw.edges().iter().map(|e| Partition::ones(e.length)).collect();
        for m in self.markings.iter().flatten() {
            let slot = markings
                .get_mut(m.edge)
                .ok_or_else(|| LatticeError::Marking(format!("no edge {}", m.edge)))?;
            *slot = Partition::new(m.parts.clone());
        }
        MarkedPolygon::new(raw, markings)
    }
}

/// Marks every edge of the Newton polygon of `p` by the root multiplicities
/// of its edge polynomial.
pub fn edge_marking(p: &SparsePoly) -> Result<MarkedPolygon, LatticeError> {
    if p.is_zero() {
        return Err(LatticeError::Degenerate("zero polynomial".into()));
    }
    let pts: Vec<Point> = super::polygon::support(p, Var::Z, Var::W);
    let raw = hull_vertices(&pts);
    if raw.len() < 2 {
        return Err(LatticeError::Degenerate("Newton polygon is a point".into()));
    }
    let polygon = LatticePolygon::hull(&pts);
    // Raw and canonical vertex lists start at the same vertex.
    let n = raw.len();
    let mut markings = Vec::with_capacity(n);
    for (i, e) in polygon.edges().iter().enumerate() {
        let start = raw[i];
        let mut f = SparsePoly::zero();
        for k in 0..=e.length as i64 {
            let x = start[0] + k * e.direction[0];
            let y = start[1] + k * e.direction[1];
            let m = Monomial::var(Var::Z, x as u32).mul(&Monomial::var(Var::W, y as u32));
            if let Some(c) = p.coeff(&m) {
                f.add_term(Monomial::var(Var::T, k as u32), c.clone());
            }
        }
        debug_assert_eq!(f.degree(Var::T) as u64, e.length);
        debug_assert!(f.coeff(&Monomial::ONE).is_some());
        markings.push(edge_partition(&f)?);
    }
    MarkedPolygon::new(polygon, markings)
}

/// Partition of root multiplicities of a univariate `f` with `f(0) != 0`.
pub fn edge_partition(f: &SparsePoly) -> Result<Partition, LatticeError> {
    if f.is_constant() {
        return Ok(Partition::empty());
    }
    let d = squarefree_decomposition(f, Var::T).map_err(LatticeError::Algebra)?;
    let mut parts = Vec::new();
    for (g, k) in &d.factors {
        for _ in 0..g.degree(Var::T) {
            parts.push(u64::from(*k));
        }
    }
    Ok(Partition::new(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly_parse;

    fn marks(s: &str) -> Vec<Vec<u64>> {
        edge_marking(&poly_parse(s).unwrap())
            .unwrap()
            .edges
            .iter()
            .map(|e| e.marking.parts().to_vec())
            .collect()
    }

    #[test]
    fn reference_markings() {
        assert_eq!(marks("z + w + 1"), vec![vec![1], vec![1], vec![1]]);
        let conic = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/conic_p.poly")).unwrap();
        assert_eq!(marks(conic.trim()), vec![vec![1, 1]; 3]);
        assert_eq!(marks("z^2 + 2*z*w + w^2 + 1"), vec![vec![1, 1], vec![2], vec![1, 1]]);
    }

    #[test]
    fn square_edge_polynomial_in_the_spec_example() {
        // Edge polynomial along (0,2)-(2,0) is (z + w)^2.
        let mp = edge_marking(&poly_parse("z^2 + 2*z*w + w^2 + z^3").unwrap()).unwrap();
        let e = mp.edge_with_normal([-1, -1]).unwrap();
        assert_eq!(e.marking.parts(), &[2]);
    }

    #[test]
    fn json_round_trip() {
        let mp = edge_marking(&poly_parse("z^2 + 2*z*w + w^2 + 1").unwrap()).unwrap();
        let j = mp.to_json();
        assert_eq!(j.to_marked().unwrap(), mp);
    }
}
