//! Klein-type identities: real cusps and solitary nodes of `R` when `P` is
//! a simple Harnack curve.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::curve::CurveInvariants;
use super::InvariantsError;
use crate::lattice::{epsilon_pairing, mixed_volume, MarkedPolygon};

/// Every number entering the Harnack-curve formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KleinTerms {
    /// Vertex count of `dQ + (-dP)`.
    pub n: i64,
    pub mixed_volume: i64,
    /// Twice the Euclidean area of `dP`.
    pub area2_p: i64,
    /// Lattice perimeter of `dQ`.
    pub perimeter_q: i64,
    /// Euler characteristic of the normalization of `Q`.
    pub chi_q: i64,
    pub b_re_plus_q: i64,
    pub b_re_boundary_q: i64,
    pub c_re_q: i64,
    pub c_im_q: i64,
    pub b_re_plus_p: i64,
    pub b_re_boundary_p: i64,
    pub epsilon: i64,
}

impl KleinTerms {
    /// `2 b+(R) + c^Re(R)`.
    pub fn value(&self) -> i64 {
        let q_real = 2 * self.b_re_plus_q + self.b_re_boundary_q;
        (4 - 2 * self.n) * self.mixed_volume + self.area2_p * (self.perimeter_q - self.chi_q + q_real - self.c_im_q)
            - (2 * self.b_re_plus_p + self.b_re_boundary_p) * (q_real + self.c_re_q)
            + self.epsilon
    }

    pub fn from_curves(
        dp: &MarkedPolygon,
        p: &CurveInvariants,
        dq: &MarkedPolygon,
        q: &CurveInvariants,
    ) -> Result<KleinTerms, InvariantsError> {
        let mv = mixed_volume(&dp.polygon, &dq.polygon);
        if !mv.is_integer() {
            return Err(InvariantsError::HalfInteger(format!("mixed volume {mv}")));
        }
        let n = dq.polygon.minkowski_sum(&dp.polygon.reflect()).vertices().len() as i64;
        Ok(KleinTerms {
            n,
            mixed_volume: mv.to_integer().to_i64().expect("small mixed volume"),
            area2_p: dp.polygon.area2() as i64,
            perimeter_q: dq.polygon.lattice_perimeter() as i64,
            chi_q: q.chi,
            b_re_plus_q: q.numbers.b_re_plus,
            b_re_boundary_q: q.numbers.b_re_boundary,
            c_re_q: q.numbers.c_re,
            c_im_q: q.numbers.c_im,
            b_re_plus_p: p.numbers.b_re_plus,
            b_re_boundary_p: p.numbers.b_re_boundary,
            epsilon: epsilon_pairing(&dp.polygon, &dq.polygon) as i64,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KleinReport {
    pub terms: KleinTerms,
    /// `2 b+(R) + c^Re(R)`.
    pub value: i64,
    /// The formula needs `P` simple Harnack and `Q` immersed near the
    /// boundary; both are taken on trust.
    pub hypotheses: String,
}

/// Evaluates the Harnack-curve formula for `2 b+(R) + c^Re(R)`.
pub fn klein_sum(
    dp: &MarkedPolygon,
    p: &CurveInvariants,
    dq: &MarkedPolygon,
    q: &CurveInvariants,
) -> Result<KleinReport, InvariantsError> {
    let terms = KleinTerms::from_curves(dp, p, dq, q)?;
    Ok(KleinReport {
        terms,
        value: terms.value(),
        hypotheses: "asserted by caller: P simple Harnack, Q immersed near the boundary".into(),
    })
}

/// `2 b+(R) + c^Re(R)` for generic curves of degrees `dp`, `dq`.
pub fn klein_generic(dp: i64, dq: i64) -> Result<i64, InvariantsError> {
    if dp < 1 || dq < 1 {
        return Err(InvariantsError::InvalidInput(format!(
            "degrees must be positive, got ({dp}, {dq})"
        )));
    }
    if dp == 1 && dq == 1 {
        return Err(InvariantsError::Degenerate(
            "two lines: no tangency points in the torus".into(),
        ));
    }
    Ok(dp * dp * dq * dq - 2 * dp * dq)
}

/// Real solitary nodes and real cusps of one curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RealSplit {
    pub b_re_plus: i64,
    pub c_re: i64,
}

/// Residual of the classical Klein formula for a curve of degree `d` and
/// its dual of degree `d_star`; zero when the identity holds.
pub fn classical_klein_check(d: i64, d_star: i64, q: RealSplit, r: RealSplit) -> i64 {
    (d - 2 * q.b_re_plus - q.c_re) - (d_star - 2 * r.b_re_plus - r.c_re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::curve::curve_invariants;
    use crate::invariants::profile::SingularityProfile;
    use crate::lattice::LatticePolygon;

    fn curve(d: i64, profile: &SingularityProfile) -> (MarkedPolygon, CurveInvariants) {
        let mp = MarkedPolygon::transverse(LatticePolygon::triangle(d));
        let inv = curve_invariants(&mp, profile).unwrap();
        (mp, inv)
    }

    #[test]
    fn frozen_boundary_example() {
        let (mp, p) = curve(2, &SingularityProfile::smooth());
        let (mq, q) = curve(4, &SingularityProfile::nodal(3));
        let r = klein_sum(&mp, &p, &mq, &q).unwrap();
        let t = r.terms;
        assert_eq!(
            (t.n, t.mixed_volume, t.area2_p, t.perimeter_q, t.chi_q, t.epsilon),
            (6, 8, 4, 12, 2, 48)
        );
        assert_eq!(r.value, 24);
    }

    #[test]
    fn small_cases() {
        let smooth = SingularityProfile::smooth();
        let (mc, c) = curve(2, &smooth);
        let (ml, l) = curve(1, &smooth);
        assert_eq!(klein_sum(&mc, &c, &mc, &c).unwrap().value, 8);
        assert_eq!(klein_sum(&ml, &l, &mc, &c).unwrap().value, 0);
    }

    #[test]
    fn harnack_formula_matches_the_generic_closed_form() {
        let smooth = SingularityProfile::smooth();
        for dp in 1..=2 {
            for dq in 2..=4 {
                let (mp, p) = curve(dp, &smooth);
                let (mq, q) = curve(dq, &smooth);
                assert_eq!(
                    klein_sum(&mp, &p, &mq, &q).unwrap().value,
                    klein_generic(dp, dq).unwrap(),
                    "({dp}, {dq})"
                );
            }
        }
    }

    #[test]
    fn generic_values() {
        assert_eq!(klein_generic(1, 4).unwrap(), 8);
        assert_eq!(klein_generic(1, 2).unwrap(), 0);
        assert_eq!(klein_generic(2, 2).unwrap(), 8);
        assert!(matches!(klein_generic(1, 1), Err(InvariantsError::Degenerate(_))));
    }

    #[test]
    fn classical_identity() {
        let zero = RealSplit::default();
        assert_eq!(classical_klein_check(2, 2, zero, zero), 0);
        // Two-ellipse quartics: eight real cusps on one dual, four solitary
        // nodes on the other.
        assert_eq!(
            classical_klein_check(4, 12, zero, RealSplit { b_re_plus: 0, c_re: 8 }),
            0
        );
        assert_eq!(
            classical_klein_check(4, 12, zero, RealSplit { b_re_plus: 4, c_re: 0 }),
            0
        );
        for split in [RealSplit { b_re_plus: 0, c_re: 8 }, RealSplit { b_re_plus: 4, c_re: 0 }] {
            assert_eq!(2 * split.b_re_plus + split.c_re, klein_generic(1, 4).unwrap());
        }
    }
}
