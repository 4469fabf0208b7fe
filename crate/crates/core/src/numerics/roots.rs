//! Simultaneous root finding (Aberth-Ehrlich) with clustering of nearly
//! equal roots.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{NumericsConfig, NumericsError};

const MAX_ITER: usize = 600;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootCluster {
    pub value: Complex64,
    pub multiplicity: usize,
}

fn c0() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `(p(z), p'(z))` by Horner; coefficients lowest first.
fn horner2(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = c0();
    let mut dp = c0();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn abs_scale(c: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

fn quadratic(c: &[Complex64]) -> [Complex64; 2] {
    let (a, b, cc) = (c[2], c[1], c[0]);
    let d = (b * b - a * cc * 4.0).sqrt();
    // Avoid cancellation: pick the sign that makes |q| large.
    let q = if (b.conj() * d).re >= 0.0 {
        -(b + d) * 0.5
    } else {
        -(b - d) * 0.5
    };
    if q.norm() == 0.0 {
        return [c0(), c0()];
    }
    [q / a, cc / q]
}

/// All roots, each repeated by multiplicity, unclustered. Coefficients
/// lowest degree first; trailing zeros are trimmed.
pub fn all_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, NumericsError> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| *x == c0()) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(NumericsError::DegreeZero);
    }
    if c.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return Err(NumericsError::NonFinite("polynomial coefficient".into()));
    }
    let zeros = c.iter().take_while(|x| **x == c0()).count();
    let c = &c[zeros..];
    let mut roots = vec![c0(); zeros];
    let n = c.len() - 1;
    match n {
        0 => return Ok(roots),
        1 => {
            roots.push(-c[0] / c[1]);
            return Ok(roots);
        }
        2 => {
            roots.extend(quadratic(c));
            return Ok(roots);
        }
        _ => {}
    }
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    // Start on a circle whose radius is the geometric mean of the root
    // moduli, rotated off the real axis.
    let radius = c[0].norm().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut all = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner2(&c, z[k]);
            if p.norm() <= 4.0 * f64::EPSILON * abs_scale(&c, z[k]) {
                done[k] = true;
                continue;
            }
            all = false;
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                // Perturb off a critical point.
                let bump = Complex64::new(1e-6, 1e-6) * (1.0 + z[k].norm());
                z[k] += bump;
                continue;
            }
            z[k] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * (z[k].norm() + f64::MIN_POSITIVE) {
                done[k] = true;
            }
        }
        if all {
            roots.extend(z);
            return Ok(roots);
        }
    }
    // Accept if every residual is small even without formal convergence.
    let ok = z
        .iter()
        .all(|&r| horner2(&c, r).0.norm() <= 1e-10 * abs_scale(&c, r).max(f64::MIN_POSITIVE));
    if ok {
        roots.extend(z);
        return Ok(roots);
    }
    roots.extend(z);
    Err(NumericsError::RootsNotConverged { partial: roots })
}

/// Roots with clusters closer than the configured tolerance merged; the
/// cluster value is the mean of its members.
pub fn univariate_roots_with(coeffs: &[Complex64], cfg: &NumericsConfig) -> Result<Vec<RootCluster>, NumericsError> {
    let roots = all_roots(coeffs)?;
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for r in roots {
        let tol = cfg.cluster_tol * r.norm().max(1.0);
        match clusters.iter_mut().find(|(s, k)| (*s / *k as f64 - r).norm() <= tol) {
            Some((s, k)) => {
                *s += r;
                *k += 1;
            }
            None => clusters.push((r, 1)),
        }
    }
    let mut out: Vec<RootCluster> = clusters
        .into_iter()
        .map(|(s, k)| RootCluster {
            value: s / k as f64,
            multiplicity: k,
        })
        .collect();
    out.sort_by(|a, b| (a.value.re, a.value.im).partial_cmp(&(b.value.re, b.value.im)).unwrap());
    Ok(out)
}

pub fn univariate_roots(coeffs: &[Complex64]) -> Result<Vec<RootCluster>, NumericsError> {
    univariate_roots_with(coeffs, &NumericsConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|x| Complex64::new(*x, 0.0)).collect()
    }

    #[test]
    fn reference_examples() {
        let r = univariate_roots(&c(&[-1.0, 0.0, 1.0])).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].value.re + 1.0).abs() < 1e-14 && (r[1].value.re - 1.0).abs() < 1e-14);
        let r = univariate_roots(&c(&[0.25, 1.0, 1.0])).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 2);
        assert!((r[0].value.re + 0.5).abs() < 1e-8);
        assert!(matches!(univariate_roots(&c(&[3.0])), Err(NumericsError::DegreeZero)));
        assert!(matches!(
            univariate_roots(&c(&[3.0, 0.0])),
            Err(NumericsError::DegreeZero)
        ));
    }

    #[test]
    fn higher_degree_and_multiplicity() {
        let q = expand(&[1.0, 1.0, -2.0]);
        let roots = univariate_roots(&q).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!((roots[0].multiplicity, roots[1].multiplicity), (1, 2));
        assert!((roots[1].value.re - 1.0).abs() < 1e-8);
        let mut z = expand(&[3.0, -1.5]);
        z.insert(0, Complex64::new(0.0, 0.0));
        let roots = univariate_roots(&z).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().any(|r| r.value.norm() == 0.0));
        let wilk = expand(&(1..=10).map(|k| k as f64).collect::<Vec<_>>());
        let roots = univariate_roots(&wilk).unwrap();
        assert_eq!(roots.len(), 10);
        for (k, r) in roots.iter().enumerate() {
            assert!((r.value.re - (k + 1) as f64).abs() < 1e-6, "{r:?}");
        }
    }

    /// Coefficients of `prod (z - r)`.
    fn expand(roots: &[f64]) -> Vec<Complex64> {
        let mut p = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut q = vec![Complex64::new(0.0, 0.0); p.len() + 1];
            for (i, a) in p.iter().enumerate() {
                q[i + 1] += a;
                q[i] -= a * r;
            }
            p = q;
        }
        p
    }
}
