//! Counts for the log-front `R` of two curves: Gauss degree, Euler
//! characteristic, cusps and nodes, and the closed forms for generic curves.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::curve::CurveInvariants;
use super::InvariantsError;
use crate::lattice::{predict_logfront_polygon, side_lengths, LatticePolygon, MarkedPolygon};

/// Contact order of two branches beyond the transverse value `m1 m2`.
pub fn tangency_multiplicity(intersection_mult: u64, m1: u64, m2: u64) -> Result<u64, InvariantsError> {
    intersection_mult.checked_sub(m1 * m2).ok_or_else(|| {
        InvariantsError::IntersectionData(format!(
            "intersection multiplicity {intersection_mult} is below m1 m2 = {}",
            m1 * m2
        ))
    })
}

pub fn logfront_gauss_degree(deg_p: i64, deg_q: i64) -> i64 {
    deg_p * deg_q
}

/// Ramification orders `(nu_p, nu_q)` at points where both Gauss maps are
/// critical with the same value. Empty for generic curves.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoincidenceList(Vec<(u64, u64)>);

impl CoincidenceList {
    pub fn new(pairs: Vec<(u64, u64)>) -> Result<CoincidenceList, InvariantsError> {
        if pairs.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(InvariantsError::InconsistentProfile(
                "ramification orders must be positive".into(),
            ));
        }
        Ok(CoincidenceList(pairs))
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.0
    }

    /// `sum (gcd(nu_p, nu_q) - 1)`.
    pub fn correction(&self) -> i64 {
        self.0.iter().map(|(a, b)| a.gcd(b) as i64 - 1).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogfrontEuler {
    /// Euler characteristic of the fibre product of the two normalizations.
    pub chi_hat: i64,
    /// Euler characteristic of the normalization of `R`.
    pub chi_tilde: i64,
}

pub fn logfront_euler(deg_p: i64, deg_q: i64, chi_p: i64, chi_q: i64, coincidences: &CoincidenceList) -> LogfrontEuler {
    let chi_hat = -2 * deg_p * deg_q + chi_p * deg_q + chi_q * deg_p;
    LogfrontEuler {
        chi_hat,
        chi_tilde: chi_hat + coincidences.correction(),
    }
}

/// Genus from an Euler characteristic; odd values are an error.
pub fn genus_of_euler(chi: i64) -> Result<i64, InvariantsError> {
    if (2 - chi) % 2 != 0 {
        return Err(InvariantsError::HalfInteger(format!(
            "Euler characteristic {chi} is odd"
        )));
    }
    Ok((2 - chi) / 2)
}

/// Per-curve input of the cusp formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspTerm {
    pub chi: i64,
    pub c: i64,
    pub boundary: i64,
}

impl From<&CurveInvariants> for CuspTerm {
    fn from(inv: &CurveInvariants) -> Self {
        CuspTerm {
            chi: inv.chi,
            c: inv.numbers.c,
            boundary: inv.boundary_simple as i64,
        }
    }
}

impl CuspTerm {
    fn value(&self) -> i64 {
        self.chi + self.c - self.boundary
    }
}

/// Cuspidal number of `R`.
pub fn logfront_cuspidal(chi_r: i64, boundary_r: i64, p: CuspTerm, q: CuspTerm) -> i64 {
    -chi_r + boundary_r - p.value() * q.value()
}

/// Node count of `R` under the assumption that it has only nodes and cusps.
pub fn logfront_nodal(interior_r: u64, genus_r: i64, cusps_r: i64) -> Result<i64, InvariantsError> {
    let n = interior_r as i64 - genus_r - cusps_r;
    if n < 0 {
        return Err(InvariantsError::NegativeNodes(n));
    }
    Ok(n)
}

/// Predicted invariants of `R`, before any elimination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogfrontInvariants {
    pub deg_gauss: i64,
    pub chi_hat: i64,
    pub chi_tilde: i64,
    pub genus: i64,
    /// Number of boundary points of `R`, from the predicted marking.
    pub boundary: u64,
    /// The boundary count in the closed form without the tentacle rules.
    pub boundary_as_printed: i64,
    pub cusps: i64,
    /// `None` when the adjunction count turns negative, i.e. `R` has worse
    /// singularities than nodes and cusps.
    pub nodes: Option<i64>,
    pub interior: u64,
    pub sides: Vec<u64>,
    #[serde(skip)]
    pub polygon: Option<MarkedPolygon>,
}

pub fn logfront_invariants(
    dp: &MarkedPolygon,
    p: &CurveInvariants,
    dq: &MarkedPolygon,
    q: &CurveInvariants,
    coincidences: &CoincidenceList,
) -> Result<LogfrontInvariants, InvariantsError> {
    let pred = predict_logfront_polygon(dp, dq, p.deg_gauss as u64, q.deg_gauss as u64)?;
    let boundary = pred.polygon.boundary_points();
    let pairing: u64 = pred.pairs.iter().map(|x| x.pairing).sum();
    let boundary_as_printed = (p.deg_gauss as u64 * dq.polygon.lattice_perimeter()
        + q.deg_gauss as u64 * dp.polygon.lattice_perimeter()) as i64
        - pairing as i64;
    let euler = logfront_euler(p.deg_gauss, q.deg_gauss, p.chi, q.chi, coincidences);
    let genus = genus_of_euler(euler.chi_tilde)?;
    let cusps = logfront_cuspidal(euler.chi_tilde, boundary as i64, p.into(), q.into());
    let interior = pred.polygon.polygon.interior();
    Ok(LogfrontInvariants {
        deg_gauss: logfront_gauss_degree(p.deg_gauss, q.deg_gauss),
        chi_hat: euler.chi_hat,
        chi_tilde: euler.chi_tilde,
        genus,
        boundary,
        boundary_as_printed,
        cusps,
        nodes: logfront_nodal(interior, genus, cusps).ok(),
        interior,
        sides: side_lengths(&pred.polygon),
        polygon: Some(pred.polygon),
    })
}

/// Closed forms for generic curves of degrees `dp`, `dq`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericReport {
    pub dp: i64,
    pub dq: i64,
    /// Set when the closed forms do not describe an actual curve.
    pub degenerate: Option<String>,
    pub chi: Option<i64>,
    pub genus: Option<i64>,
    pub cusps: Option<i64>,
    pub nodes: Option<i64>,
    /// `dp dq (dq - 1)` three times and `dp dq (dp - 1)` three times.
    pub sides: Vec<i64>,
}

pub fn generic_chi(dp: i64, dq: i64) -> i64 {
    -dp * dq * (4 * dp * dq - 3 * dp - 3 * dq)
}

pub fn generic_cusps(dp: i64, dq: i64) -> i64 {
    3 * dp * dp * dq * dq - 6 * dp * dq
}

/// Twice the closed node count; halved by the caller.
fn generic_nodes2(dp: i64, dq: i64) -> i64 {
    let (p2, q2) = (dp * dp, dq * dq);
    p2 * p2 * q2 + 4 * p2 * dp * q2 * dq + p2 * q2 * q2 - 6 * p2 * dp * q2 - 6 * p2 * q2 * dq - 4 * p2 * q2
        + 18 * dp * dq
}

pub fn generic_degree_report(dp: i64, dq: i64) -> Result<GenericReport, InvariantsError> {
    if dp < 1 || dq < 1 {
        return Err(InvariantsError::InvalidInput(format!(
            "degrees must be positive, got ({dp}, {dq})"
        )));
    }
    let mut sides: Vec<i64> = [dp * dq * (dq - 1), dp * dq * (dp - 1)]
        .into_iter()
        .flat_map(|s| [s; 3])
        .filter(|&s| s > 0)
        .collect();
    sides.sort_unstable();
    if dp == 1 && dq == 1 {
        return Ok(GenericReport {
            dp,
            dq,
            degenerate: Some("two lines: the log-front is empty".into()),
            chi: None,
            genus: None,
            cusps: None,
            nodes: None,
            sides,
        });
    }
    let chi = generic_chi(dp, dq);
    let n2 = generic_nodes2(dp, dq);
    if n2 % 2 != 0 {
        return Err(InvariantsError::HalfInteger(format!("node count {n2}/2")));
    }
    Ok(GenericReport {
        dp,
        dq,
        degenerate: None,
        chi: Some(chi),
        genus: Some(genus_of_euler(chi)?),
        cusps: Some(generic_cusps(dp, dq)),
        nodes: Some(n2 / 2),
        sides,
    })
}

/// Polygon of `R` for generic curves of degrees `dp`, `dq`.
pub fn generic_polygon(dp: i64, dq: i64) -> Result<MarkedPolygon, InvariantsError> {
    let g = |d: i64| {
        let q = MarkedPolygon::transverse(LatticePolygon::triangle(d));
        (q, (d * d) as u64)
    };
    let (mp, deg_p) = g(dp);
    let (mq, deg_q) = g(dq);
    Ok(predict_logfront_polygon(&mp, &mq, deg_p, deg_q)?.polygon)
}
