//! Checks of an extracted log-front: polygon prediction, elimination order,
//! double duality.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::pipeline::{compute_logfront, r1_with_content, r2_int, LogFrontResult, PipelineOptions};
use super::LogfrontError;
use crate::exactalg::{normalize_int, SparsePoly, Var};
use crate::invariants::{log_gauss_degree_raw, SingularityProfile};
use crate::lattice::{edge_marking, predict_logfront_polygon, LatticePolygon, MarkedPolygon, Point};

/// Edge length of the computed and predicted polygon in one direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDelta {
    pub normal: Point,
    pub computed: u64,
    pub predicted: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Validation {
    pub matched: bool,
    /// Directions where the lengths differ; empty when `matched`.
    pub deltas: Vec<EdgeDelta>,
    pub deg_gauss_p: u64,
    pub deg_gauss_q: u64,
}

fn lengths_by_normal(p: &LatticePolygon) -> BTreeMap<Point, u64> {
    let mut out = BTreeMap::new();
    for e in p.edges() {
        *out.entry(e.normal).or_insert(0) += e.length;
    }
    out
}

/// Compares the computed polygon with the prediction from the marked
/// polygons and Gauss degrees of `P` and `Q`. Sets `polygon_predicted` and
/// `matched`; `R` is left alone.
pub fn validate(
    result: &mut LogFrontResult,
    dp: &MarkedPolygon,
    dq: &MarkedPolygon,
    deg_p: u64,
    deg_q: u64,
) -> Result<Validation, LogfrontError> {
    let predicted = predict_logfront_polygon(dp, dq, deg_p, deg_q)?.polygon.polygon;
    let matched = predicted == result.polygon_computed;
    let computed = lengths_by_normal(&result.polygon_computed);
    let expected = lengths_by_normal(&predicted);
    let mut deltas = Vec::new();
    for n in computed
        .keys()
        .chain(expected.keys())
        .collect::<std::collections::BTreeSet<_>>()
    {
        let c = computed.get(n).copied().unwrap_or(0);
        let e = expected.get(n).copied().unwrap_or(0);
        if c != e {
            deltas.push(EdgeDelta {
                normal: *n,
                computed: c,
                predicted: e,
            });
        }
    }
    // Equal edge lengths in every direction determine a polygon up to
    // translation, and both polygons are canonical translates.
    debug_assert_eq!(matched, deltas.is_empty());
    result.polygon_predicted = Some(predicted);
    result.matched = Some(matched);
    Ok(Validation {
        matched,
        deltas,
        deg_gauss_p: deg_p,
        deg_gauss_q: deg_q,
    })
}

/// Gauss degree for the prediction; zero is allowed (binomial curves).
pub fn prediction_degree(mp: &MarkedPolygon, profile: &SingularityProfile) -> Result<u64, LogfrontError> {
    profile.check()?;
    let d = log_gauss_degree_raw(mp.polygon.interior(), mp.boundary_points(), profile);
    u64::try_from(d).map_err(|_| {
        LogfrontError::Precondition(format!(
            "negative log-Gauss degree {d}: the profile does not fit the polygon"
        ))
    })
}

/// [`validate`] with marked polygons and degrees derived from `P`, `Q` and
/// their profiles.
pub fn validate_with_profiles(
    result: &mut LogFrontResult,
    p: &SparsePoly,
    q: &SparsePoly,
    profile_p: &SingularityProfile,
    profile_q: &SingularityProfile,
) -> Result<Validation, LogfrontError> {
    let dp = edge_marking(p)?;
    let dq = edge_marking(q)?;
    let deg_p = prediction_degree(&dp, profile_p)?;
    let deg_q = prediction_degree(&dq, profile_q)?;
    validate(result, &dp, &dq, deg_p, deg_q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderCheck {
    pub w_first: LogFrontResult,
    pub z_first: LogFrontResult,
    pub agree: bool,
}

/// Runs both elimination orders concurrently and compares the canonical
/// `R`.
pub fn elimination_order_check(
    p: &SparsePoly,
    q: &SparsePoly,
    profile_p: &SingularityProfile,
    profile_q: &SingularityProfile,
    opts: &PipelineOptions,
) -> Result<OrderCheck, LogfrontError> {
    let a = PipelineOptions {
        order: super::EliminationOrder::WThenZ,
        ..*opts
    };
    let b = PipelineOptions {
        order: super::EliminationOrder::ZThenW,
        ..*opts
    };
    let (x, y) = rayon::join(
        || compute_logfront(p, q, profile_p, profile_q, &a),
        || compute_logfront(p, q, profile_p, profile_q, &b),
    );
    let (w_first, z_first) = (x?, y?);
    let agree = w_first.r == z_first.r;
    Ok(OrderCheck {
        w_first,
        z_first,
        agree,
    })
}

/// `a^da b^db R(1/a, 1/b)`, canonical.
pub fn invert_ab(r: &SparsePoly) -> SparsePoly {
    let (da, db) = (r.degree(Var::A), r.degree(Var::B));
    let vars = r.vars();
    r.map_monomials(vars, |m| {
        m.with_exp(Var::A, da - m.exp(Var::A))
            .with_exp(Var::B, db - m.exp(Var::B))
    })
    .normalize()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleDual {
    /// `S = P / Q`.
    pub s: SparsePoly,
    /// `R2` of `P / S`, before any factor removal.
    pub r2: SparsePoly,
    pub quotient_exists: bool,
    /// Largest `k` with `Q^k` dividing that `R2`.
    pub multiplicity: u32,
}

/// Computes `S = P / Q`, then the second-stage `R2` of `P / S`, and checks
/// that `Q` (read in `a`, `b`) divides it.
pub fn double_dual_check(p: &SparsePoly, q: &SparsePoly, opts: &PipelineOptions) -> Result<DoubleDual, LogfrontError> {
    let smooth = SingularityProfile::smooth();
    let first = compute_logfront(p, q, &smooth, &smooth, opts)?;
    if first.empty {
        return Err(LogfrontError::Precondition("P / Q is empty".into()));
    }
    let s = first.r;
    let to_zw = |v: Var| match v {
        Var::A => Var::Z,
        Var::B => Var::W,
        other => other,
    };
    let s_zw = s.rename(to_zw);
    let (r1, _) = r1_with_content(p, &s_zw, opts)?;
    let r2 = r2_int(&r1, opts.order.second(), opts)?;
    let to_ab = |v: Var| match v {
        Var::Z => Var::A,
        Var::W => Var::B,
        other => other,
    };
    let target = normalize_int(&q.rename(to_ab).to_primitive_int());
    let mut multiplicity = 0;
    let mut rest = r2.clone();
    if !target.is_constant() {
        while let Ok(next) = rest.div_exact(&target) {
            rest = next;
            multiplicity += 1;
        }
    }
    Ok(DoubleDual {
        s,
        r2: r2.to_rational(),
        quotient_exists: multiplicity > 0,
        multiplicity,
    })
}
