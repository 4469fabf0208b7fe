//! Invariants of a single curve from its Newton polygon and singularities.

use serde::{Deserialize, Serialize};

use super::profile::{BoundaryProfile, SingularityProfile};
use super::InvariantsError;
use crate::lattice::MarkedPolygon;

/// `2 I + |dP| - 2 - sum (mu + m - 1)`, unchecked.
pub fn log_gauss_degree_raw(interior: u64, boundary_simple: u64, profile: &SingularityProfile) -> i64 {
    2 * interior as i64 + boundary_simple as i64 - 2 - profile.gauss_defect() as i64
}

/// Degree of the logarithmic Gauss map; at least 1 for a nondegenerate
/// curve.
pub fn log_gauss_degree(
    interior: u64,
    boundary_simple: u64,
    profile: &SingularityProfile,
) -> Result<i64, InvariantsError> {
    let d = log_gauss_degree_raw(interior, boundary_simple, profile);
    if d <= 0 {
        return Err(InvariantsError::DegenerateCurve { deg_gauss: d });
    }
    Ok(d)
}

/// Genus of the normalization by adjunction.
pub fn geometric_genus(interior: u64, profile: &SingularityProfile) -> Result<i64, InvariantsError> {
    let delta2 = profile.delta2();
    if !delta2.is_multiple_of(2) {
        return Err(InvariantsError::HalfInteger("sum (mu + beta - 1) is odd".into()));
    }
    let g = interior as i64 - (delta2 / 2) as i64;
    if g < 0 {
        return Err(InvariantsError::InconsistentProfile(format!(
            "negative genus {g}: more singularities than interior points allow"
        )));
    }
    Ok(g)
}

/// Euler characteristic of the normalization, `2 - 2g`.
pub fn euler_characteristic(genus: i64) -> i64 {
    2 - 2 * genus
}

/// Logarithmic inflection points counted with multiplicity.
pub fn inflection_count(deg_gauss: i64, chi: i64) -> i64 {
    2 * deg_gauss - chi
}

/// Cuspidal and nodal numbers with their real/imaginary refinements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NodalCuspidal {
    pub c: i64,
    pub c_re: i64,
    pub c_im: i64,
    pub b: i64,
    pub b_re_plus: i64,
    pub b_re_minus: i64,
    pub b_im: i64,
    pub b_boundary: i64,
    pub b_re_boundary: i64,
}

/// Splits `c` and `b` and checks the cusp count against the one implied by
/// the Gauss degree and the adjunction formula.
pub fn cuspidal_nodal_numbers(
    interior: u64,
    profile: &SingularityProfile,
    boundary: &BoundaryProfile,
) -> Result<NodalCuspidal, InvariantsError> {
    profile.check()?;
    boundary.check()?;
    let mut out = NodalCuspidal::default();
    for p in &profile.points {
        let c = (p.m - p.beta) as i64;
        out.c += c;
        out.b += p.local_nodal as i64;
        if p.real {
            out.c_re += c;
            out.b_re_plus += p.conj_branch_pairs as i64;
            out.b_re_minus += p.local_nodal_rr as i64;
        }
    }
    out.c_im = out.c - out.c_re;
    out.b_im = out.b - out.b_re_plus - out.b_re_minus;
    if out.b_im < 0 {
        return Err(InvariantsError::InconsistentProfile(format!(
            "real nodal parts {} + {} exceed b = {}",
            out.b_re_plus, out.b_re_minus, out.b
        )));
    }
    out.b_boundary = boundary.nodal() as i64;
    out.b_re_boundary = boundary.nodal_real() as i64;

    let simple = boundary.simple_count();
    let deg = log_gauss_degree_raw(interior, simple, profile);
    let chi = euler_characteristic(geometric_genus(interior, profile)?);
    let expected = -deg - (chi - simple as i64);
    if expected != out.c {
        return Err(InvariantsError::InconsistentProfile(format!(
            "cusp count {} from the profile, {expected} from the Gauss degree",
            out.c
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub deg_gauss: i64,
    /// Euler characteristic of the normalization.
    pub chi: i64,
    pub genus: i64,
    pub inflections: i64,
    pub interior: u64,
    /// `|dP|`: number of distinct boundary points.
    pub boundary_simple: u64,
    #[serde(flatten)]
    pub numbers: NodalCuspidal,
}

/// All single-curve invariants. The boundary profile defaults to the
/// marking with no real data.
pub fn curve_invariants(
    polygon: &MarkedPolygon,
    profile: &SingularityProfile,
) -> Result<CurveInvariants, InvariantsError> {
    profile.check()?;
    let boundary = match &profile.boundary {
        Some(b) => {
            b.check_against(polygon)?;
            b.clone()
        }
        None => BoundaryProfile::from_marking(polygon),
    };
    let interior = polygon.polygon.interior();
    let boundary_simple = boundary.simple_count();
    let deg_gauss = log_gauss_degree(interior, boundary_simple, profile)?;
    let genus = geometric_genus(interior, profile)?;
    let chi = euler_characteristic(genus);
    let numbers = cuspidal_nodal_numbers(interior, profile, &boundary)?;
    Ok(CurveInvariants {
        deg_gauss,
        chi,
        genus,
        inflections: inflection_count(deg_gauss, chi),
        interior,
        boundary_simple,
        numbers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::profile::SingularPoint;
    use crate::lattice::{LatticePolygon, Partition};

    fn tri(d: i64) -> MarkedPolygon {
        MarkedPolygon::transverse(LatticePolygon::triangle(d))
    }

    #[test]
    fn gauss_degrees() {
        let smooth = SingularityProfile::smooth();
        assert_eq!(log_gauss_degree(0, 6, &smooth).unwrap(), 4);
        assert_eq!(log_gauss_degree(3, 12, &SingularityProfile::nodal(3)).unwrap(), 10);
        assert_eq!(log_gauss_degree(0, 3, &smooth).unwrap(), 1);
        assert!(matches!(
            log_gauss_degree(0, 2, &smooth),
            Err(InvariantsError::DegenerateCurve { deg_gauss: 0 })
        ));
    }

    #[test]
    fn genus_and_inflections() {
        assert_eq!(geometric_genus(3, &SingularityProfile::smooth()).unwrap(), 3);
        assert_eq!(geometric_genus(3, &SingularityProfile::nodal(3)).unwrap(), 0);
        assert_eq!(geometric_genus(0, &SingularityProfile::smooth()).unwrap(), 0);
        assert!(geometric_genus(0, &SingularityProfile::nodal(1)).is_err());
        assert_eq!(inflection_count(1, 2), 0);
        assert_eq!(inflection_count(4, 2), 6);
        assert_eq!(inflection_count(10, 2), 18);
    }

    #[test]
    fn refined_numbers() {
        let b = BoundaryProfile::from_marking(&tri(3));
        let n = cuspidal_nodal_numbers(1, &SingularityProfile::smooth(), &b).unwrap();
        assert_eq!(n, NodalCuspidal::default());

        let cusp = SingularityProfile::with_points(vec![SingularPoint::real_cusp()]);
        let n = cuspidal_nodal_numbers(1, &cusp, &b).unwrap();
        assert_eq!((n.c, n.c_re, n.c_im, n.b), (1, 1, 0, 0));

        let solitary = SingularityProfile::with_points(vec![SingularPoint::solitary()]);
        let n = cuspidal_nodal_numbers(1, &solitary, &b).unwrap();
        assert_eq!((n.b, n.b_re_plus, n.b_re_minus, n.b_im, n.c), (1, 1, 0, 0, 0));
    }

    #[test]
    fn curve_reports() {
        let conic = curve_invariants(&tri(2), &SingularityProfile::smooth()).unwrap();
        assert_eq!((conic.deg_gauss, conic.chi, conic.inflections), (4, 2, 6));
        let quartic = curve_invariants(&tri(4), &SingularityProfile::nodal(3)).unwrap();
        assert_eq!((quartic.deg_gauss, quartic.genus, quartic.numbers.b), (10, 0, 3));
        let smooth4 = curve_invariants(&tri(4), &SingularityProfile::smooth()).unwrap();
        assert_eq!((smooth4.deg_gauss, smooth4.chi), (16, -4));
    }

    #[test]
    fn boundary_tangency_lowers_the_degree() {
        // A conic tangent to one boundary line: marking (2) on that edge.
        let p = LatticePolygon::triangle(2);
        let mut marks: Vec<Partition> = p.edges().iter().map(|e| Partition::ones(e.length)).collect();
        marks[0] = Partition::new(vec![2]);
        let mp = MarkedPolygon::new(p, marks).unwrap();
        let inv = curve_invariants(&mp, &SingularityProfile::smooth()).unwrap();
        assert_eq!((inv.boundary_simple, inv.deg_gauss, inv.numbers.b_boundary), (5, 3, 1));
    }
}
