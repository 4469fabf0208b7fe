//! Strategies and checks shared by the property tests and the acceptance
//! runner.

#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use logfront_core::exactalg::{poly_parse, resultant, squarefree_decomposition, Monomial, SparsePoly, Var, VarSet};
use logfront_core::invariants::{curve_invariants, SingularPoint, SingularityProfile};
use logfront_core::lattice::{
    mixed_volume, newton_polygon, pairing_conjugate, pairing_min, LatticePolygon, MarkedPolygon, Partition, Point,
};
use logfront_core::numerics::FiberSolver;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn fixture(name: &str) -> SparsePoly {
    let text = std::fs::read_to_string(data_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    poly_parse(text.trim()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn zw() -> VarSet {
    VarSet::of(&[Var::Z, Var::W])
}

fn term(i: u32, j: u32) -> Monomial {
    Monomial::var(Var::Z, i).mul(&Monomial::var(Var::W, j))
}

fn rational(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// Polynomial in `z, w` from `(i, j, c)` triples.
pub fn poly_from(terms: &[(u32, u32, i64)]) -> SparsePoly {
    SparsePoly::from_terms(terms.iter().map(|&(i, j, c)| (term(i, j), rational(c)))).declare(zw())
}

/// Integer polynomial with exponents in `[0, 2]^2`, possibly zero.
pub fn small_poly() -> impl Strategy<Value = SparsePoly> {
    proptest::collection::vec(-4i64..=4, 9).prop_map(|c| {
        let terms: Vec<(u32, u32, i64)> = (0..9).map(|k| (k / 3, k % 3, c[k as usize])).collect();
        poly_from(&terms)
    })
}

/// Support with every coefficient of `[0, dz] x [0, dw]` or of the triangle
/// of degree `d` drawn at random; the vertices are forced nonzero.
#[derive(Debug, Clone)]
pub struct RandomCurve {
    pub poly: SparsePoly,
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-9i64..=-1, 1i64..=9]
}

fn triangle_curve() -> impl Strategy<Value = RandomCurve> {
    (1u32..=3)
        .prop_flat_map(|d| {
            let n = ((d + 1) * (d + 2) / 2) as usize;
            (
                Just(d),
                proptest::collection::vec(-9i64..=9, n),
                proptest::collection::vec(nonzero(), 3),
            )
        })
        .prop_map(|(d, c, v)| {
            let mut terms = Vec::new();
            let mut k = 0;
            for i in 0..=d {
                for j in 0..=d - i {
                    let coeff = match (i, j) {
                        (0, 0) => v[0],
                        (i, 0) if i == d => v[1],
                        (0, j) if j == d => v[2],
                        _ => c[k],
                    };
                    terms.push((i, j, coeff));
                    k += 1;
                }
            }
            RandomCurve {
                poly: poly_from(&terms),
            }
        })
}

fn box_curve() -> impl Strategy<Value = RandomCurve> {
    (1u32..=2, 1u32..=2)
        .prop_flat_map(|(dz, dw)| {
            let n = ((dz + 1) * (dw + 1)) as usize;
            (
                Just((dz, dw)),
                proptest::collection::vec(-9i64..=9, n),
                proptest::collection::vec(nonzero(), 4),
            )
        })
        .prop_map(|((dz, dw), c, v)| {
            let mut terms = Vec::new();
            let mut k = 0;
            for i in 0..=dz {
                for j in 0..=dw {
                    let coeff = match (i == 0 || i == dz, j == 0 || j == dw) {
                        (true, true) => v[(usize::from(i == dz) << 1) | usize::from(j == dw)],
                        _ => c[k],
                    };
                    terms.push((i, j, coeff));
                    k += 1;
                }
            }
            RandomCurve {
                poly: poly_from(&terms),
            }
        })
}

pub fn random_curve() -> impl Strategy<Value = RandomCurve> {
    prop_oneof![triangle_curve(), box_curve()]
}

/// A point of the torus away from the unit circle's degenerate spots.
pub fn torus_point() -> impl Strategy<Value = Complex64> {
    (0.5f64..2.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

pub fn lattice_points() -> impl Strategy<Value = Vec<Point>> {
    proptest::collection::vec((-6i64..=6, -6i64..=6).prop_map(|(x, y)| [x, y]), 3..12)
}

pub fn partition() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1u64..=6, 0..6).prop_map(Partition::new)
}

/// A triangle of degree 3..=6 with random singular points.
#[derive(Debug, Clone)]
pub struct RandomProfile {
    pub degree: i64,
    pub points: Vec<SingularPoint>,
}

fn triple_point() -> SingularPoint {
    SingularPoint {
        m: 3,
        mu: 4,
        beta: 3,
        local_nodal: 3,
        ..SingularPoint::node()
    }
}

fn tacnode() -> SingularPoint {
    SingularPoint {
        m: 2,
        mu: 3,
        beta: 2,
        local_nodal: 2,
        ..SingularPoint::node()
    }
}

fn singular_point() -> impl Strategy<Value = SingularPoint> {
    prop_oneof![
        Just(SingularPoint::node()),
        Just(SingularPoint::cusp()),
        Just(SingularPoint::real_crossing()),
        Just(SingularPoint::solitary()),
        Just(SingularPoint::real_cusp()),
        Just(triple_point()),
        Just(tacnode()),
    ]
}

/// Points are dropped from the end until the genus is nonnegative and the
/// Gauss degree positive, so no case is rejected.
pub fn random_profile() -> impl Strategy<Value = RandomProfile> {
    (3i64..=6, proptest::collection::vec(singular_point(), 0..8)).prop_map(|(degree, mut points)| {
        let interior = (degree - 1) * (degree - 2) / 2;
        let fits = |pts: &[SingularPoint]| {
            let delta: i64 = pts.iter().map(|p| ((p.mu + p.beta - 1) / 2) as i64).sum();
            let defect: i64 = pts.iter().map(|p| (p.mu + p.m - 1) as i64).sum();
            delta <= interior && 2 * interior + 3 * degree - 2 - defect > 0
        };
        while !fits(&points) {
            points.pop();
        }
        RandomProfile { degree, points }
    })
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

/// `res(f g, h) = res(f, h) res(g, h)` in `w`.
pub fn resultant_multiplicative(f: &SparsePoly, g: &SparsePoly, h: &SparsePoly) -> Result<(), TestCaseError> {
    prop_assume!(f.degree(Var::W) > 0 && g.degree(Var::W) > 0 && h.degree(Var::W) > 0);
    let fg = f.mul(g);
    let lhs = resultant(&fg, h, Var::W).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let rf = resultant(f, h, Var::W).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let rg = resultant(g, h, Var::W).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let rhs = rf.mul(&rg);
    check(lhs == rhs, || format!("res({fg}, {h}) = {lhs}, product {rhs}"))
}

/// The decomposition of `f g^2 h^3` multiplies back to it, with square-free,
/// pairwise coprime factors.
pub fn squarefree_reconstructs(f: &SparsePoly, g: &SparsePoly, h: &SparsePoly) -> Result<(), TestCaseError> {
    prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
    let p = f.mul(&g.pow(2)).mul(&h.pow(3));
    let d = squarefree_decomposition(&p, Var::W).map_err(|e| TestCaseError::fail(e.to_string()))?;
    check(d.reconstruct() == p, || {
        format!("{p}: reconstruction {}", d.reconstruct())
    })?;
    for (i, (a, _)) in d.factors.iter().enumerate() {
        let sq = squarefree_decomposition(a, Var::W).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(sq.factors.iter().all(|(_, k)| *k == 1), || {
            format!("factor {a} of {p} is not square-free")
        })?;
        for (b, _) in &d.factors[i + 1..] {
            let g = logfront_core::exactalg::poly_gcd(a, b);
            check(g.is_constant(), || format!("factors {a} and {b} of {p} share {g}"))?;
        }
    }
    Ok(())
}

/// `2 A = 2 I + B - 2` with `I` and `B` counted point by point.
pub fn pick_identity(points: &[Point]) -> Result<(), TestCaseError> {
    let poly = LatticePolygon::hull(points);
    prop_assume!(!poly.is_degenerate());
    let edges = poly.edges();
    let (mut inside, mut boundary) = (0i64, 0i64);
    let xs = poly.vertices().iter().map(|v| v[0]);
    let ys = poly.vertices().iter().map(|v| v[1]);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    for x in x0..=x1 {
        for y in y0..=y1 {
            let c: Vec<i64> = edges
                .iter()
                .map(|e| e.vector[0] * (y - e.start[1]) - e.vector[1] * (x - e.start[0]))
                .collect();
            if c.iter().all(|&v| v > 0) {
                inside += 1;
            } else if c.iter().all(|&v| v >= 0) {
                boundary += 1;
            }
        }
    }
    check(poly.area2() as i64 == 2 * inside + boundary - 2, || {
        format!(
            "{:?}: 2A = {}, I = {inside}, B = {boundary}",
            poly.vertices(),
            poly.area2()
        )
    })?;
    check(
        poly.interior() as i64 == inside && poly.lattice_perimeter() as i64 == boundary,
        || {
            format!(
                "{:?}: interior {} perimeter {}",
                poly.vertices(),
                poly.interior(),
                poly.lattice_perimeter()
            )
        },
    )
}

/// `sum lambda'_i mu'_i = sum min(lambda_i, mu_j)`.
pub fn pairing_formulas_agree(l: &Partition, m: &Partition) -> Result<(), TestCaseError> {
    let (a, b) = (pairing_conjugate(l, m), pairing_min(l, m));
    check(a == b, || format!("{l:?}, {m:?}: {a} vs {b}"))?;
    check(pairing_conjugate(m, l) == a, || format!("{l:?}, {m:?}: not symmetric"))
}

/// The cusp count read off the profile equals `-deg - (chi - |dP|)`, with
/// both sides recomputed here from the raw data.
pub fn cusp_count_consistent(r: &RandomProfile) -> Result<(), TestCaseError> {
    let d = r.degree;
    let interior = (d - 1) * (d - 2) / 2;
    let boundary = 3 * d;
    let delta: i64 = r.points.iter().map(|p| ((p.mu + p.beta - 1) / 2) as i64).sum();
    let defect: i64 = r.points.iter().map(|p| (p.mu + p.m - 1) as i64).sum();
    let deg = 2 * interior + boundary - 2 - defect;
    let genus = interior - delta;
    prop_assume!(genus >= 0 && deg > 0);
    let chi = 2 - 2 * genus;
    let cusps: i64 = r.points.iter().map(|p| (p.m - p.beta) as i64).sum();
    check(cusps == -deg - (chi - boundary), || {
        format!("degree {d}: {cusps} cusps, deg {deg}, chi {chi}")
    })?;
    let mp = MarkedPolygon::transverse(LatticePolygon::triangle(d));
    let inv = curve_invariants(&mp, &SingularityProfile::with_points(r.points.clone()))
        .map_err(|e| TestCaseError::fail(format!("degree {d}: {e}")))?;
    check(inv.numbers.c == cusps && inv.deg_gauss == deg && inv.chi == chi, || {
        format!(
            "degree {d}: library gives c {} deg {} chi {}",
            inv.numbers.c, inv.deg_gauss, inv.chi
        )
    })
}

/// The number of fibre points over a generic `(a, b)`, with multiplicity,
/// is the mixed volume of the Newton polygons.
pub fn fiber_count_is_mixed_volume(
    p: &RandomCurve,
    q: &RandomCurve,
    a: Complex64,
    b: Complex64,
) -> Result<(), TestCaseError> {
    let mv = mixed_volume(&newton_polygon(&p.poly), &newton_polygon(&q.poly));
    let solver = FiberSolver::new(&p.poly, &q.poly).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let pts = solver
        .solve(a, b)
        .map_err(|e| TestCaseError::fail(format!("P = {}, Q = {}: {e}", p.poly, q.poly)))?;
    let count: usize = pts.iter().map(|x| x.multiplicity).sum();
    check(BigRational::from_integer(BigInt::from(count)) == mv, || {
        format!(
            "P = {}, Q = {}, (a, b) = ({a}, {b}): {count} points, mixed volume {mv}",
            p.poly, q.poly
        )
    })
}
