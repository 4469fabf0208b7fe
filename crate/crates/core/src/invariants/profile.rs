//! User-asserted singularity and boundary data.

use serde::{Deserialize, Serialize};

use super::InvariantsError;
use crate::exactalg::{parse_rational, Rational};
use crate::lattice::{MarkedPolygon, Partition};

/// One singular point of a curve in the torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    /// Multiplicity of the point.
    pub m: u64,
    /// Milnor number.
    pub mu: u64,
    /// Number of branches.
    pub beta: u64,
    #[serde(default)]
    pub real: bool,
    /// Pairs of complex-conjugate imaginary branches (real points only).
    #[serde(default)]
    pub conj_branch_pairs: u64,
    /// Sum of intersection numbers over distinct pairs of branches.
    #[serde(default)]
    pub local_nodal: u64,
    /// The part of `local_nodal` coming from pairs of real branches.
    #[serde(default)]
    pub local_nodal_rr: u64,
    /// Rational coordinates `(z, w)`, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<[String; 2]>,
}

impl SingularPoint {
    pub fn node() -> SingularPoint {
        SingularPoint {
            m: 2,
            mu: 1,
            beta: 2,
            real: false,
            conj_branch_pairs: 0,
            local_nodal: 1,
            local_nodal_rr: 0,
            at: None,
        }
    }

    pub fn cusp() -> SingularPoint {
        SingularPoint {
            m: 2,
            mu: 2,
            beta: 1,
            local_nodal: 0,
            ..SingularPoint::node()
        }
    }

    /// Real node with two real branches.
    pub fn real_crossing() -> SingularPoint {
        SingularPoint {
            real: true,
            local_nodal_rr: 1,
            ..SingularPoint::node()
        }
    }

    /// Real node with a pair of conjugate branches.
    pub fn solitary() -> SingularPoint {
        SingularPoint {
            real: true,
            conj_branch_pairs: 1,
            ..SingularPoint::node()
        }
    }

    pub fn real_cusp() -> SingularPoint {
        SingularPoint {
            real: true,
            ..SingularPoint::cusp()
        }
    }

    pub fn coordinates(&self) -> Result<Option<(Rational, Rational)>, InvariantsError> {
        match &self.at {
            None => Ok(None),
            Some([z, w]) => {
                let z = parse_rational(z).map_err(|e| InvariantsError::InconsistentProfile(e.to_string()))?;
                let w = parse_rational(w).map_err(|e| InvariantsError::InconsistentProfile(e.to_string()))?;
                Ok(Some((z, w)))
            }
        }
    }

    fn check(&self, i: usize) -> Result<(), InvariantsError> {
        let bad = |msg: &str| Err(InvariantsError::InconsistentProfile(format!("point {i}: {msg}")));
        if self.beta < 1 || self.m < self.beta {
            return bad("need m >= beta >= 1");
        }
        if !(self.mu + self.beta - 1).is_multiple_of(2) {
            return bad("mu + beta - 1 must be even");
        }
        if self.local_nodal_rr > self.local_nodal {
            return bad("real-real nodal part exceeds the local nodal number");
        }
        if !self.real && (self.conj_branch_pairs > 0 || self.local_nodal_rr > 0) {
            return bad("real branch data on a non-real point");
        }
        if 2 * self.conj_branch_pairs > self.beta {
            return bad("more conjugate branch pairs than branches");
        }
        Ok(())
    }
}

/// Boundary data of one edge of the Newton polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryEdge {
    pub parts: Vec<u64>,
    /// Number of real boundary points on this edge.
    #[serde(default)]
    pub real_simple: u64,
    /// Contribution of this edge to `b^Re(dP)`.
    #[serde(default)]
    pub real_mult_excess: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BoundaryProfile {
    pub edges: Vec<BoundaryEdge>,
}

impl BoundaryProfile {
    /// Boundary profile read off a marking; real data zero.
    pub fn from_marking(mp: &MarkedPolygon) -> BoundaryProfile {
        BoundaryProfile {
            edges: mp
                .edges
                .iter()
                .map(|e| BoundaryEdge {
                    parts: e.marking.parts().to_vec(),
                    real_simple: 0,
                    real_mult_excess: 0,
                })
                .collect(),
        }
    }

    /// `|dP|`.
    pub fn simple_count(&self) -> u64 {
        self.edges.iter().map(|e| e.parts.len() as u64).sum()
    }

    /// `b(dP)`: multiplicities minus the simple count.
    pub fn nodal(&self) -> u64 {
        self.edges
            .iter()
            .map(|e| e.parts.iter().sum::<u64>() - e.parts.len() as u64)
            .sum()
    }

    /// `b^Re(dP)`.
    pub fn nodal_real(&self) -> u64 {
        self.edges.iter().map(|e| e.real_mult_excess).sum()
    }

    pub fn check(&self) -> Result<(), InvariantsError> {
        for (i, e) in self.edges.iter().enumerate() {
            if e.parts.contains(&0) {
                return Err(InvariantsError::InconsistentProfile(format!(
                    "boundary edge {i} has a zero part"
                )));
            }
            if e.real_simple > e.parts.len() as u64 {
                return Err(InvariantsError::InconsistentProfile(format!(
                    "boundary edge {i}: more real points than points"
                )));
            }
        }
        if self.nodal_real() > self.nodal() {
            return Err(InvariantsError::InconsistentProfile("b^Re(dP) exceeds b(dP)".into()));
        }
        Ok(())
    }

    /// Checks that the parts agree with a marked polygon.
    pub fn check_against(&self, mp: &MarkedPolygon) -> Result<(), InvariantsError> {
        if self.edges.len() != mp.edges.len() {
            return Err(InvariantsError::InconsistentProfile(format!(
                "boundary profile has {} edges, polygon has {}",
                self.edges.len(),
                mp.edges.len()
            )));
        }
        for (i, (b, e)) in self.edges.iter().zip(&mp.edges).enumerate() {
            if Partition::new(b.parts.clone()) != e.marking {
                return Err(InvariantsError::InconsistentProfile(format!(
                    "boundary edge {i}: parts {:?} differ from marking {:?}",
                    b.parts,
                    e.marking.parts()
                )));
            }
        }
        Ok(())
    }
}

/// Singularities of an irreducible curve; empty means smooth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityProfile {
    #[serde(default = "yes")]
    pub irreducible: bool,
    #[serde(default)]
    pub points: Vec<SingularPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundaryProfile>,
}

fn yes() -> bool {
    true
}

impl Default for SingularityProfile {
    fn default() -> Self {
        SingularityProfile::smooth()
    }
}

impl SingularityProfile {
    pub fn smooth() -> SingularityProfile {
        SingularityProfile {
            irreducible: true,
            points: Vec::new(),
            boundary: None,
        }
    }

    pub fn with_points(points: Vec<SingularPoint>) -> SingularityProfile {
        SingularityProfile {
            points,
            ..SingularityProfile::smooth()
        }
    }

    pub fn nodal(n: usize) -> SingularityProfile {
        Self::with_points(vec![SingularPoint::node(); n])
    }

    pub fn check(&self) -> Result<(), InvariantsError> {
        if !self.irreducible {
            return Err(InvariantsError::InconsistentProfile(
                "formulas apply to irreducible curves only".into(),
            ));
        }
        for (i, p) in self.points.iter().enumerate() {
            p.check(i)?;
        }
        if let Some(b) = &self.boundary {
            b.check()?;
        }
        Ok(())
    }

    /// `sum (mu + m - 1)`.
    pub fn gauss_defect(&self) -> u64 {
        self.points.iter().map(|p| p.mu + p.m - 1).sum()
    }

    /// `sum (mu + beta - 1)`, always even for a valid profile.
    pub fn delta2(&self) -> u64 {
        self.points.iter().map(|p| p.mu + p.beta - 1).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_format() {
        let text = r#"{"irreducible":true,"points":[{"m":2,"mu":1,"beta":2,"real":true,"conj_branch_pairs":1,"local_nodal":1,"local_nodal_rr":0}],"boundary":{"edges":[{"parts":[1,1],"real_simple":2}]}}"#;
        let p: SingularityProfile = serde_json::from_str(text).unwrap();
        assert_eq!(p.points[0], SingularPoint::solitary());
        assert_eq!(p.boundary.as_ref().unwrap().edges[0].real_simple, 2);
        p.check().unwrap();
        let empty: SingularityProfile = serde_json::from_str("{}").unwrap();
        assert_eq!(empty, SingularityProfile::smooth());
    }

    #[test]
    fn integrality_is_enforced() {
        let bad = SingularityProfile::with_points(vec![SingularPoint {
            mu: 2,
            ..SingularPoint::node()
        }]);
        assert!(bad.check().is_err());
        let bad = SingularityProfile::with_points(vec![SingularPoint {
            beta: 3,
            ..SingularPoint::node()
        }]);
        assert!(bad.check().is_err());
    }
}
