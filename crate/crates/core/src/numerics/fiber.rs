//! Numerical fibres of the tangency system over a point `(a, b)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fpoly::{FloatPoly, FloatPoly3};
use super::roots::{all_roots, univariate_roots_with};
use super::{NumericsConfig, NumericsError};
use crate::exactalg::{SparsePoly, Var};
use crate::logfront::compute_r1;

/// A point `(z, w)` with `P(az, bw) = Q(z, w) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberPoint {
    pub z: Complex64,
    pub w: Complex64,
    /// Multiplicity as a root of the specialized `R1`.
    pub multiplicity: usize,
}

/// Precomputed floating-point data for repeated fibre solves.
#[derive(Debug, Clone)]
pub struct FiberSolver {
    p: FloatPoly,
    q: FloatPoly,
    r1: FloatPoly3,
    pub config: NumericsConfig,
}

fn trim_relative(c: &mut Vec<Complex64>) {
    let max = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    for x in c.iter_mut() {
        if x.norm() <= 1e-14 * max {
            *x = Complex64::new(0.0, 0.0);
        }
    }
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
}

fn finite(x: Complex64) -> bool {
    x.re.is_finite() && x.im.is_finite()
}

impl FiberSolver {
    pub fn new(p: &SparsePoly, q: &SparsePoly) -> Result<FiberSolver, NumericsError> {
        let r1 = compute_r1(p, q)?;
        Ok(FiberSolver {
            p: FloatPoly::zw(p),
            q: FloatPoly::zw(q),
            r1: FloatPoly3::new(&r1, Var::A, Var::B, Var::Z),
            config: NumericsConfig::default(),
        })
    }

    fn residuals(&self, a: Complex64, b: Complex64, z: Complex64, w: Complex64) -> (f64, f64) {
        let (x, y) = (a * z, b * w);
        let rp = self.p.eval(x, y).norm() / self.p.scale(x, y).max(f64::MIN_POSITIVE);
        let rq = self.q.eval(z, w).norm() / self.q.scale(z, w).max(f64::MIN_POSITIVE);
        (rp, rq)
    }

    /// Newton steps on the square system, for simple solutions.
    fn polish(&self, a: Complex64, b: Complex64, mut z: Complex64, mut w: Complex64) -> (Complex64, Complex64) {
        for _ in 0..3 {
            let (x, y) = (a * z, b * w);
            let f = self.p.eval(x, y);
            let g = self.q.eval(z, w);
            let (px, py) = self.p.gradient(x, y);
            let (fz, fw) = (px * a, py * b);
            let (gz, gw) = self.q.gradient(z, w);
            let det = fz * gw - fw * gz;
            if det.norm() == 0.0 {
                break;
            }
            let dz = (f * gw - fw * g) / det;
            let dw = (fz * g - f * gz) / det;
            let (nz, nw) = (z - dz, w - dw);
            if !finite(nz) || !finite(nw) {
                break;
            }
            let old = self.residuals(a, b, z, w);
            let new = self.residuals(a, b, nz, nw);
            if new.0.max(new.1) > old.0.max(old.1) {
                break;
            }
            z = nz;
            w = nw;
        }
        (z, w)
    }

    /// Solutions in the torus over `(a, b)`.
    pub fn solve(&self, a: Complex64, b: Complex64) -> Result<Vec<FiberPoint>, NumericsError> {
        if a.norm() == 0.0 || b.norm() == 0.0 || !finite(a) || !finite(b) {
            return Err(NumericsError::OutsideTorus(format!("(a, b) = ({a}, {b})")));
        }
        let mut coeffs = self.r1.specialize(a, b);
        trim_relative(&mut coeffs);
        if coeffs.len() < 2 {
            return Err(NumericsError::Degenerate(format!("R1 has no z-roots over ({a}, {b})")));
        }
        let clusters = univariate_roots_with(&coeffs, &self.config)?;
        let zmax = clusters.iter().map(|c| c.value.norm()).fold(1.0, f64::max);
        let mut out = Vec::new();
        for c in clusters {
            let z = c.value;
            if z.norm() <= 1e-12 * zmax {
                continue;
            }
            let w = self.back_substitute(a, b, z)?;
            let Some(w) = w else { continue };
            let (z, w) = if c.multiplicity == 1 {
                self.polish(a, b, z, w)
            } else {
                (z, w)
            };
            let (rp, rq) = self.residuals(a, b, z, w);
            let residual = rp.max(rq);
            if residual > self.config.fiber_tol {
                return Err(NumericsError::Verification { residual });
            }
            out.push(FiberPoint {
                z,
                w,
                multiplicity: c.multiplicity,
            });
        }
        Ok(out)
    }

    /// Picks `w` among the roots of both equations at `z`, by the larger of
    /// the two scaled residuals. Either equation may degenerate at `z` (a
    /// vertical component), so neither is trusted alone.
    fn back_substitute(&self, a: Complex64, b: Complex64, z: Complex64) -> Result<Option<Complex64>, NumericsError> {
        let mut qw = self.q.coeffs_in_y(z);
        let mut pw: Vec<Complex64> = self
            .p
            .coeffs_in_y(a * z)
            .into_iter()
            .enumerate()
            .map(|(k, c)| c * b.powu(k as u32))
            .collect();
        trim_relative(&mut qw);
        trim_relative(&mut pw);
        let mut candidates = Vec::new();
        for eq in [&qw, &pw] {
            if eq.len() >= 2 {
                candidates.extend(all_roots(eq)?);
            }
        }
        if candidates.is_empty() {
            return Err(NumericsError::Degenerate(format!("no w-equation at z = {z}")));
        }
        let wmax = candidates.iter().map(|w| w.norm()).fold(1.0, f64::max);
        let best = candidates
            .into_iter()
            .filter(|w| w.norm() > 1e-12 * wmax && finite(*w))
            .map(|w| {
                let (rp, rq) = self.residuals(a, b, z, w);
                (rp.max(rq), w)
            })
            .min_by(|x, y| x.0.total_cmp(&y.0));
        Ok(best.map(|(_, w)| w))
    }

    /// Smallest sine of the angle between the two curves over the fibre;
    /// `+inf` for an empty fibre.
    pub fn residual(&self, a: Complex64, b: Complex64) -> Result<f64, NumericsError> {
        let pts = self.solve(a, b)?;
        let mut best = f64::INFINITY;
        for pt in pts {
            let (x, y) = (a * pt.z, b * pt.w);
            let (px, py) = self.p.gradient(x, y);
            let (fz, fw) = (px * a, py * b);
            let (gz, gw) = self.q.gradient(pt.z, pt.w);
            let wr = fz * gw - fw * gz;
            let norm = (fz.norm_sqr() + fw.norm_sqr()).sqrt() * (gz.norm_sqr() + gw.norm_sqr()).sqrt();
            let s = if norm == 0.0 { 0.0 } else { wr.norm() / norm };
            best = best.min(s);
        }
        Ok(best)
    }
}

pub fn fiber_solutions(
    p: &SparsePoly,
    q: &SparsePoly,
    a: Complex64,
    b: Complex64,
) -> Result<Vec<FiberPoint>, NumericsError> {
    FiberSolver::new(p, q)?.solve(a, b)
}

/// Scaled Wronskian at the best fibre point: `|W| / (|grad P(az, bw)| |grad Q|)`.
pub fn tangency_residual(p: &SparsePoly, q: &SparsePoly, a: Complex64, b: Complex64) -> Result<f64, NumericsError> {
    FiberSolver::new(p, q)?.residual(a, b)
}

/// Outcome of checking many sample points against a tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub samples: usize,
    pub max_residual: f64,
    /// `(a, b, residual)` for every point above the tolerance.
    pub failures: Vec<(Complex64, Complex64, f64)>,
    pub verdict: bool,
}

impl SampleReport {
    pub fn from_residuals(points: &[(Complex64, Complex64, f64)], tol: f64) -> SampleReport {
        // NaN residuals count as failures.
        let failures: Vec<_> = points
            .iter()
            .copied()
            .filter(|p| p.2.partial_cmp(&tol) != Some(std::cmp::Ordering::Less))
            .collect();
        SampleReport {
            samples: points.len(),
            max_residual: points.iter().map(|p| p.2).fold(0.0, f64::max),
            verdict: failures.is_empty(),
            failures,
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

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn hyperbola_fibres() {
        let (p, q) = (s("z + w + 1"), s("z*w - 1"));
        let pts = fiber_solutions(&p, &q, c(1.0), c(0.25)).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].multiplicity, 2);
        assert!((pts[0].z - c(-0.5)).norm() < 1e-7);
        assert!((pts[0].w - c(-2.0)).norm() < 1e-6);
        let pts = fiber_solutions(&p, &q, c(1.0), c(1.0)).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|x| x.multiplicity == 1));
        assert!(matches!(
            fiber_solutions(&p, &q, c(0.0), c(1.0)),
            Err(NumericsError::OutsideTorus(_))
        ));
    }

    #[test]
    fn residual_examples() {
        let (p, q) = (s("z + w + 1"), s("z*w - 1"));
        assert!(tangency_residual(&p, &q, c(1.0), c(0.25)).unwrap() < 1e-6);
        assert!(tangency_residual(&p, &q, c(1.0), c(1.0)).unwrap() > 1e-2);
        let q = s("w - z^2");
        assert!(tangency_residual(&p, &q, c(2.0), c(1.0)).unwrap() < 1e-6);
    }
}
