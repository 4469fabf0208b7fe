//! Elimination pipeline.
//!
//! `R1 = res_w(P(az, bw), Q)` cuts out the pairs `(a, b; z)` over which the
//! dilated `P` meets `Q`; `R2 = res_z(R1, d_z R1)` is where two of those
//! intersection points collide. Collisions that are not tangencies show up
//! in `R2` with multiplicity at least two, or as factors of the leading
//! coefficient of `R1` (a point escaping to the boundary), or as dilates
//! attached to singular points. What remains with multiplicity one is `R`.

use serde::{Deserialize, Serialize};

use super::LogfrontError;
use crate::exactalg::gcd::content_in;
use crate::exactalg::{
    dilate, gcd_int, normalize_int, resultant_int, squarefree_decomposition, wronskian, IntPoly, Monomial, PolyJson,
    Rational, ResultantMethod, SparsePoly, Var, VarSet,
};
use crate::invariants::SingularityProfile;
use crate::lattice::{newton_polygon_in, LatticePolygon, PolygonJson};

fn ab() -> VarSet {
    VarSet::of(&[Var::A, Var::B])
}

/// Which of `z`, `w` is eliminated first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EliminationOrder {
    /// `w` first, then `z`.
    #[default]
    WThenZ,
    ZThenW,
}

impl EliminationOrder {
    pub fn first(self) -> Var {
        match self {
            EliminationOrder::WThenZ => Var::W,
            EliminationOrder::ZThenW => Var::Z,
        }
    }

    pub fn second(self) -> Var {
        match self {
            EliminationOrder::WThenZ => Var::Z,
            EliminationOrder::ZThenW => Var::W,
        }
    }

    pub fn other(self) -> EliminationOrder {
        match self {
            EliminationOrder::WThenZ => EliminationOrder::ZThenW,
            EliminationOrder::ZThenW => EliminationOrder::WThenZ,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    pub order: EliminationOrder,
    pub method: ResultantMethod,
    /// Cap on the total degree of `R1` and `R2`.
    pub degree_bound: u32,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            order: EliminationOrder::default(),
            method: ResultantMethod::default(),
            degree_bound: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RemovalReason {
    /// Content of `R1` in the remaining fibre variable.
    Content,
    #[serde(rename = "multiplicity>1")]
    Multiplicity,
    Monomial,
    /// Shares a factor with the leading coefficient of `R1`.
    LeadingCoefficient,
    /// `P(a z0, b w0)` for a singular point `(z0, w0)` of `Q`.
    DilateOfP,
    /// The same with the roles of `P` and `Q` exchanged.
    DilateOfQ,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemovedFactor {
    pub factor: SparsePoly,
    pub reason: RemovalReason,
    /// Multiplicity in `R2` for [`RemovalReason::Multiplicity`], else 1.
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogFrontResult {
    /// Canonical: primitive integer coefficients, positive graded leading
    /// coefficient, no monomial factor.
    pub r: SparsePoly,
    pub r1: SparsePoly,
    pub r2: SparsePoly,
    pub sqfree: Vec<(SparsePoly, u32)>,
    pub removed: Vec<RemovedFactor>,
    pub polygon_computed: LatticePolygon,
    pub polygon_predicted: Option<LatticePolygon>,
    pub matched: Option<bool>,
    /// `R` is constant: no tangencies in the torus.
    pub empty: bool,
    pub order: EliminationOrder,
}

/// `(P(az, bw), Q, W)` with `W` the Wronskian of the pair.
pub fn tangency_scheme(p: &SparsePoly, q: &SparsePoly) -> Result<(SparsePoly, SparsePoly, SparsePoly), LogfrontError> {
    if p.is_zero() || q.is_zero() {
        return Err(LogfrontError::Precondition("P and Q must be nonzero".into()));
    }
    let pd = dilate(p)?;
    if !q.used_vars().is_subset_of(VarSet::of(&[Var::Z, Var::W])) {
        return Err(LogfrontError::Precondition(format!(
            "Q must be a polynomial in z, w; got {q}"
        )));
    }
    let w = wronskian(&pd, q);
    Ok((pd, q.clone(), w))
}

fn check_degree(p: &IntPoly, bound: u32) -> Result<(), LogfrontError> {
    let degree = p.total_degree();
    if degree > bound {
        return Err(LogfrontError::DegreeBound { degree, bound });
    }
    Ok(())
}

/// `R1` with its content in the fibre variable removed; returns both.
pub(super) fn r1_with_content(
    p: &SparsePoly,
    q: &SparsePoly,
    opts: &PipelineOptions,
) -> Result<(IntPoly, IntPoly), LogfrontError> {
    let (v, u) = (opts.order.first(), opts.order.second());
    let (pd, q, _) = tangency_scheme(p, q)?;
    if q.degree(v) == 0 {
        return Err(LogfrontError::NoDependence(format!("Q = {q} in {v}")));
    }
    let r = resultant_int(&pd.to_primitive_int(), &q.to_primitive_int(), v, opts.method);
    if r.is_zero() {
        return Err(LogfrontError::Precondition(
            "R1 vanishes identically: P(az, bw) and Q share a component for all a, b".into(),
        ));
    }
    if r.degree(u) == 0 {
        return Err(LogfrontError::NoDependence(format!("R1 in {u}")));
    }
    check_degree(&r, opts.degree_bound)?;
    let c = normalize_int(&content_in(&r, u));
    let r = normalize_int(&r.div_exact(&c).expect("content divides"));
    Ok((r.declare(ab().with(u)), c.declare(ab())))
}

/// `res_w(P(az, bw), Q)` without its `z`-content, as a canonical unit.
pub fn compute_r1(p: &SparsePoly, q: &SparsePoly) -> Result<SparsePoly, LogfrontError> {
    Ok(r1_with_content(p, q, &PipelineOptions::default())?.0.to_rational())
}

pub(super) fn r2_int(r1: &IntPoly, u: Var, opts: &PipelineOptions) -> Result<IntPoly, LogfrontError> {
    if r1.degree(u) == 0 {
        return Err(LogfrontError::NoDependence(format!("R1 in {u}")));
    }
    let r = resultant_int(r1, &r1.derivative(u), u, opts.method);
    if r.is_zero() {
        return Err(LogfrontError::Precondition(format!(
            "R1 has a repeated factor in {u} for all a, b"
        )));
    }
    check_degree(&r, opts.degree_bound)?;
    Ok(normalize_int(&r).declare(ab()))
}

/// `res_z(R1, d_z R1)` as a canonical unit.
pub fn compute_r2(r1: &SparsePoly) -> Result<SparsePoly, LogfrontError> {
    let opts = PipelineOptions::default();
    Ok(r2_int(&r1.to_primitive_int(), opts.order.second(), &opts)?.to_rational())
}

fn rpow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::from_integer(1.into()), |acc, _| acc * x)
}

/// `P(a z0, b w0)`: the dilates of `P` through a singular point `(z0, w0)`
/// of `Q`.
pub fn dilate_factor_of_q_point(p: &SparsePoly, z0: &Rational, w0: &Rational) -> SparsePoly {
    let mut out = SparsePoly::zero().declare(ab());
    for (m, c) in p.terms() {
        let (i, j) = (m.exp(Var::Z), m.exp(Var::W));
        let mono = Monomial::var(Var::A, i).mul(&Monomial::var(Var::B, j));
        out.add_term(mono, c * rpow(z0, i) * rpow(w0, j));
    }
    out
}

/// `Q(z0 / a, w0 / b)` with denominators cleared: the dilates of `P` whose
/// singular point `(z0, w0)` lands on `Q`.
pub fn dilate_factor_of_p_point(q: &SparsePoly, z0: &Rational, w0: &Rational) -> SparsePoly {
    let (dz, dw) = (q.degree(Var::Z), q.degree(Var::W));
    let mut out = SparsePoly::zero().declare(ab());
    for (m, c) in q.terms() {
        let (i, j) = (m.exp(Var::Z), m.exp(Var::W));
        let mono = Monomial::var(Var::A, dz - i).mul(&Monomial::var(Var::B, dw - j));
        out.add_term(mono, c * rpow(z0, i) * rpow(w0, j));
    }
    out
}

/// Divides every common factor of `r` and `f` out of `r`.
fn strip(r: &mut IntPoly, f: &IntPoly, reason: RemovalReason, removed: &mut Vec<RemovedFactor>) {
    if f.is_zero() {
        return;
    }
    loop {
        let g = gcd_int(r, f);
        if g.is_constant() {
            return;
        }
        *r = r.div_exact(&g).expect("gcd divides");
        removed.push(RemovedFactor {
            factor: g.to_rational().declare(ab()),
            reason,
            multiplicity: 1,
        });
    }
}

fn profile_points(profile: &SingularityProfile) -> Result<Vec<(Rational, Rational)>, LogfrontError> {
    let mut out = Vec::new();
    for pt in &profile.points {
        if let Some(c) = pt.coordinates()? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Steps after elimination: square-free split, then removal of monomial,
/// leading-coefficient and dilate factors, then canonicalization.
#[allow(clippy::too_many_arguments)]
pub fn extract_logfront(
    r1: &SparsePoly,
    r2: &SparsePoly,
    p: &SparsePoly,
    q: &SparsePoly,
    profile_p: &SingularityProfile,
    profile_q: &SingularityProfile,
    order: EliminationOrder,
) -> Result<LogFrontResult, LogfrontError> {
    if r2.is_zero() {
        return Err(LogfrontError::Precondition("R2 is zero".into()));
    }
    let r2 = r2.clone().declare(ab());
    let sq = squarefree_decomposition(&r2, Var::A)?;
    let mut removed: Vec<RemovedFactor> = sq
        .factors
        .iter()
        .filter(|(_, k)| *k > 1)
        .map(|(f, k)| RemovedFactor {
            factor: f.clone(),
            reason: RemovalReason::Multiplicity,
            multiplicity: *k,
        })
        .collect();
    let mut r = sq.multiplicity_one_part().to_primitive_int();

    let mono = r.monomial_content();
    if mono != Monomial::ONE {
        r = r.div_monomial(&mono).expect("monomial content divides");
        let factor = SparsePoly::monomial(Rational::from_integer(1.into()), mono).declare(ab());
        removed.push(RemovedFactor {
            factor,
            reason: RemovalReason::Monomial,
            multiplicity: 1,
        });
    }

    let lc = r1.to_primitive_int().lead_coeff_in(order.second());
    strip(&mut r, &lc, RemovalReason::LeadingCoefficient, &mut removed);

    for (z0, w0) in profile_points(profile_q)? {
        let f = dilate_factor_of_q_point(p, &z0, &w0).to_primitive_int();
        strip(&mut r, &f, RemovalReason::DilateOfP, &mut removed);
    }
    for (z0, w0) in profile_points(profile_p)? {
        let f = dilate_factor_of_p_point(q, &z0, &w0).to_primitive_int();
        strip(&mut r, &f, RemovalReason::DilateOfQ, &mut removed);
    }

    let r = normalize_int(&r).to_rational().declare(ab());
    let empty = r.is_constant();
    let polygon_computed = newton_polygon_in(&r, Var::A, Var::B);
    Ok(LogFrontResult {
        r,
        r1: r1.clone(),
        r2,
        sqfree: sq.factors,
        removed,
        polygon_computed,
        polygon_predicted: None,
        matched: None,
        empty,
        order,
    })
}

/// Full pipeline from `P` and `Q`.
pub fn compute_logfront(
    p: &SparsePoly,
    q: &SparsePoly,
    profile_p: &SingularityProfile,
    profile_q: &SingularityProfile,
    opts: &PipelineOptions,
) -> Result<LogFrontResult, LogfrontError> {
    for (name, f) in [("P", p), ("Q", q)] {
        if f.is_zero() || !f.used_vars().is_subset_of(VarSet::of(&[Var::Z, Var::W])) {
            return Err(LogfrontError::Precondition(format!(
                "{name} must be a nonzero polynomial in z, w"
            )));
        }
    }
    let shared = gcd_int(&p.to_primitive_int(), &q.to_primitive_int());
    if !shared.is_constant() {
        return Err(LogfrontError::Precondition(format!(
            "P and Q share the component {shared}; tangencies are not isolated"
        )));
    }
    let (r1, content) = r1_with_content(p, q, opts)?;
    let r2 = r2_int(&r1, opts.order.second(), opts)?;
    let mut out = extract_logfront(
        &r1.to_rational(),
        &r2.to_rational(),
        p,
        q,
        profile_p,
        profile_q,
        opts.order,
    )?;
    if !content.is_constant() {
        out.removed.insert(
            0,
            RemovedFactor {
                factor: content.to_rational(),
                reason: RemovalReason::Content,
                multiplicity: 1,
            },
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorJson {
    pub text: String,
    pub poly: PolyJson,
    pub multiplicity: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<RemovalReason>,
}

impl FactorJson {
    fn new(f: &SparsePoly, multiplicity: u32, reason: Option<RemovalReason>) -> FactorJson {
        FactorJson {
            text: f.to_string(),
            poly: PolyJson::from_poly(f),
            multiplicity,
            reason,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogFrontJson {
    pub r_text: String,
    pub r: PolyJson,
    pub r1: PolyJson,
    pub r2: PolyJson,
    pub sqfree: Vec<FactorJson>,
    pub removed: Vec<FactorJson>,
    pub polygon_computed: PolygonJson,
    pub polygon_predicted: Option<PolygonJson>,
    #[serde(rename = "match")]
    pub matched: Option<bool>,
    pub empty: bool,
    pub order: EliminationOrder,
}

impl LogFrontResult {
    pub fn to_json(&self) -> LogFrontJson {
        LogFrontJson {
            r_text: self.r.to_string(),
            r: PolyJson::from_poly(&self.r),
            r1: PolyJson::from_poly(&self.r1),
            r2: PolyJson::from_poly(&self.r2),
            sqfree: self.sqfree.iter().map(|(f, k)| FactorJson::new(f, *k, None)).collect(),
            removed: self
                .removed
                .iter()
                .map(|f| FactorJson::new(&f.factor, f.multiplicity, Some(f.reason)))
                .collect(),
            polygon_computed: PolygonJson::from_polygon(&self.polygon_computed),
            polygon_predicted: self.polygon_predicted.as_ref().map(PolygonJson::from_polygon),
            matched: self.matched,
            empty: self.empty,
            order: self.order,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly_parse;

    fn s(x: &str) -> SparsePoly {
        poly_parse(x).unwrap()
    }

    fn run(p: &str, q: &str) -> LogFrontResult {
        let smooth = SingularityProfile::smooth();
        compute_logfront(&s(p), &s(q), &smooth, &smooth, &PipelineOptions::default()).unwrap()
    }

    #[test]
    fn scheme_examples() {
        let (pd, q, w) = tangency_scheme(&s("z + w + 1"), &s("z*w - 1")).unwrap();
        assert_eq!((pd, q, w), (s("a*z + b*w + 1"), s("z*w - 1"), s("a*z - b*w")));
        let (_, _, w) = tangency_scheme(&s("z + w + 1"), &s("w - z^2")).unwrap();
        assert_eq!(w, s("a + 2*b*z"));
    }

    #[test]
    fn r1_and_r2_examples() {
        let r1 = compute_r1(&s("z + w + 1"), &s("z*w - 1")).unwrap();
        assert_eq!(r1, s("a*z^2 + z + b"));
        assert_eq!(compute_r2(&r1).unwrap(), s("4*a^2*b - a"));
        let r1 = compute_r1(&s("z + w + 1"), &s("w - z^2")).unwrap();
        assert_eq!(r1, s("b*z^2 + a*z + 1"));
        assert_eq!(compute_r2(&r1).unwrap(), s("a^2*b - 4*b^2"));
        assert!(matches!(
            compute_r1(&s("z + w + 1"), &s("z - 2")),
            Err(LogfrontError::NoDependence(_))
        ));
    }

    #[test]
    fn hyperbola_and_parabola() {
        let r = run("z + w + 1", "z*w - 1");
        assert_eq!(r.r, s("4*a*b - 1"));
        assert!(r
            .removed
            .iter()
            .any(|f| f.reason == RemovalReason::Monomial && f.factor == s("a")));
        let r = run("z + w + 1", "w - z^2");
        assert_eq!(r.r, s("a^2 - 4*b"));
    }

    #[test]
    fn linear_fibres_give_an_empty_front() {
        // Two lines meet once: nothing can collide.
        let r = run("z + w + 1", "z - 2*w + 3");
        assert!(r.empty);
    }

    #[test]
    fn shared_components_are_rejected() {
        let smooth = SingularityProfile::smooth();
        let p = s("z + w + 1");
        let e = compute_logfront(&p, &p, &smooth, &smooth, &PipelineOptions::default());
        assert!(matches!(e, Err(LogfrontError::Precondition(_))));
    }

    #[test]
    fn dilate_factors() {
        let p = s("z + w + 1");
        let one = Rational::from_integer(1.into());
        let two = Rational::from_integer(2.into());
        assert_eq!(dilate_factor_of_q_point(&p, &one, &two), s("a + 2*b + 1"));
        assert_eq!(dilate_factor_of_p_point(&p, &one, &two), s("b + 2*a + a*b"));
    }

    #[test]
    fn json_report() {
        let j = run("z + w + 1", "z*w - 1").to_json();
        assert_eq!(j.r_text, "4*a*b - 1");
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"reason\":\"monomial\""));
    }
}
