//! Amoebas, algae and the Harnack tests.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fpoly::FloatPoly;
use super::roots::all_roots;
use super::trace::Window;
use super::{NumericsConfig, NumericsError};
use crate::exactalg::SparsePoly;
use crate::exactalg::Var;
use crate::lattice::{newton_polygon_in, primitive};

const MC_CHUNK: usize = 4096;
/// Relative tolerance of the Harnack area verdict.
pub const AREA_TOLERANCE: f64 = 0.05;
pub const DEFAULT_MEMBERSHIP_ANGLES: usize = 256;

/// Roots in `w` of `P(z, w)` for fixed `z`, with reusable buffers.
struct WRoots<'a> {
    p: &'a FloatPoly,
    coeffs: Vec<Complex64>,
}

impl<'a> WRoots<'a> {
    fn new(p: &'a FloatPoly) -> Self {
        WRoots {
            p,
            coeffs: vec![Complex64::new(0.0, 0.0); p.degree_y() as usize + 1],
        }
    }

    /// Nonzero roots into `out`; `Err` only if the root finder fails.
    fn roots(&mut self, z: Complex64, out: &mut Vec<Complex64>) -> Result<(), NumericsError> {
        out.clear();
        self.coeffs.iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
        for &(i, j, c) in &self.p.terms {
            self.coeffs[j as usize] += z.powu(i) * c;
        }
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut n = self.coeffs.len();
        while n > 0 && self.coeffs[n - 1].norm() <= 1e-14 * max {
            n -= 1;
        }
        let c = &self.coeffs[..n];
        match n {
            0 | 1 => {}
            2 => out.push(-c[0] / c[1]),
            3 => {
                let (a, b, k) = (c[2], c[1], c[0]);
                let d = (b * b - a * k * 4.0).sqrt();
                // Pick the sign that avoids cancellation.
                let s = if (b.conj() * d).re >= 0.0 { b + d } else { b - d };
                if s.norm() == 0.0 {
                    out.extend([Complex64::new(0.0, 0.0); 2]);
                } else {
                    let q = -s / 2.0;
                    out.push(q / a);
                    out.push(k / q);
                }
            }
            _ => out.extend(all_roots(c)?),
        }
        out.retain(|w| w.norm() > 0.0 && w.re.is_finite() && w.im.is_finite());
        Ok(())
    }
}

fn torus_point(x: f64, theta: f64) -> Complex64 {
    Complex64::from_polar(x.exp(), theta)
}

fn log_moduli_points(
    p: &SparsePoly,
    log_moduli: &[f64],
    angles: usize,
) -> Result<Vec<(Complex64, Complex64)>, NumericsError> {
    if p.is_zero() {
        return Err(NumericsError::InvalidArgument("zero polynomial".into()));
    }
    let fp = FloatPoly::zw(p);
    let chunks: Result<Vec<Vec<(Complex64, Complex64)>>, NumericsError> = log_moduli
        .par_iter()
        .map(|&x| {
            let mut solver = WRoots::new(&fp);
            let mut ws = Vec::new();
            let mut out = Vec::new();
            for k in 0..angles {
                let z = torus_point(x, 2.0 * PI * k as f64 / angles as f64);
                solver.roots(z, &mut ws)?;
                out.extend(ws.iter().map(|&w| (z, w)));
            }
            Ok(out)
        })
        .collect();
    Ok(chunks?.into_iter().flatten().collect())
}

/// Points `(log|z|, log|w|)` of the curve over the given `log|z|` values
/// and `angles` equally spaced arguments of `z`.
pub fn amoeba_sample(p: &SparsePoly, log_moduli: &[f64], angles: usize) -> Result<Vec<[f64; 2]>, NumericsError> {
    Ok(log_moduli_points(p, log_moduli, angles)?
        .into_iter()
        .map(|(z, w)| [z.norm().ln(), w.norm().ln()])
        .collect())
}

/// Points `(arg z, arg w)` reduced modulo `pi` in each coordinate.
pub fn alga_sample(p: &SparsePoly, log_moduli: &[f64], angles: usize) -> Result<Vec<[f64; 2]>, NumericsError> {
    let m = |t: f64| {
        let r = t.rem_euclid(PI);
        if r >= PI {
            0.0
        } else {
            r
        }
    };
    Ok(log_moduli_points(p, log_moduli, angles)?
        .into_iter()
        .map(|(z, w)| [m(z.arg()), m(w.arg())])
        .collect())
}

/// Whether `(x, y)` lies in the amoeba: the number of roots `w` of
/// `P(e^(x + i theta), w)` inside `|w| = e^y` changes as `theta` turns.
/// Points within a sampling step of the boundary may be missed.
pub fn amoeba_contains(p: &SparsePoly, x: f64, y: f64, angles: usize) -> Result<bool, NumericsError> {
    let fp = FloatPoly::zw(p);
    contains_with(&mut WRoots::new(&fp), x, y, angles, &mut Vec::new())
}

/// True if one monomial outweighs all others on the torus over `(x, y)`,
/// which puts the point in the complement of the amoeba.
fn dominated(p: &FloatPoly, x: f64, y: f64) -> bool {
    let mut sum = 0.0;
    let mut max = 0.0f64;
    for &(i, j, c) in &p.terms {
        let m = c.abs() * (f64::from(i) * x + f64::from(j) * y).exp();
        sum += m;
        max = max.max(m);
    }
    max > (sum - max) * (1.0 + 1e-12)
}

fn contains_with(
    solver: &mut WRoots<'_>,
    x: f64,
    y: f64,
    angles: usize,
    buf: &mut Vec<Complex64>,
) -> Result<bool, NumericsError> {
    if dominated(solver.p, x, y) {
        return Ok(false);
    }
    let mut first = None;
    for k in 0..angles {
        solver.roots(torus_point(x, 2.0 * PI * k as f64 / angles as f64), buf)?;
        let inside = buf.iter().filter(|w| w.norm().ln() < y).count();
        match first {
            None => first = Some(inside),
            Some(f) if f != inside => return Ok(true),
            _ => {}
        }
    }
    Ok(false)
}

/// Square window centred at the origin, wide enough that outside it only
/// tentacles remain: `8 + ln(max|c| / min|c|)` in each direction.
pub fn default_window(p: &SparsePoly) -> Window {
    let s = coefficient_spread(p);
    let h = 8.0 + s;
    Window {
        x0: -h,
        x1: h,
        y0: -h,
        y1: h,
    }
}

fn coefficient_spread(p: &SparsePoly) -> f64 {
    let fp = FloatPoly::zw(p);
    let mags: Vec<f64> = fp.terms.iter().map(|t| t.2.abs()).filter(|c| *c > 0.0).collect();
    let max = mags.iter().copied().fold(0.0, f64::max);
    let min = mags.iter().copied().fold(f64::INFINITY, f64::min);
    if mags.is_empty() {
        0.0
    } else {
        (max / min).ln()
    }
}

/// Heuristic bound on the tentacle area left outside `window`.
///
/// Each side of the Newton polygon with lattice length `l` and primitive
/// normal `n` contributes `l` tentacles whose width decays like
/// `exp(-t / |n|)` at distance `t`; the tail beyond the window is bounded
/// by `4 l |n| exp(s - t / |n|)` with `s` the coefficient spread.
pub fn tentacle_bias_bound(p: &SparsePoly, window: &Window) -> f64 {
    let poly = newton_polygon_in(p, Var::Z, Var::W);
    let s = coefficient_spread(p);
    let (cx, cy) = ((window.x0 + window.x1) / 2.0, (window.y0 + window.y1) / 2.0);
    let mut bound = 0.0;
    for e in poly.edges() {
        let n = primitive(e.normal);
        let l = e.length as f64;
        let len = (n[0] as f64).hypot(n[1] as f64);
        let (ux, uy) = (n[0] as f64 / len, n[1] as f64 / len);
        // Distance from the centre to the window boundary along the normal.
        let tx = if ux > 0.0 {
            (window.x1 - cx) / ux
        } else if ux < 0.0 {
            (window.x0 - cx) / ux
        } else {
            f64::INFINITY
        };
        let ty = if uy > 0.0 {
            (window.y1 - cy) / uy
        } else if uy < 0.0 {
            (window.y0 - cy) / uy
        } else {
            f64::INFINITY
        };
        let t = tx.min(ty) - cx.hypot(cy);
        bound += 4.0 * l * len * (s - t / len).exp();
    }
    bound
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaEstimate {
    pub area: f64,
    pub stderr: f64,
    pub samples: usize,
    pub hits: usize,
    pub window: Window,
    pub seed: u64,
    /// `pi^2 Area(Newton polygon)`, the Harnack value.
    pub expected: f64,
    /// `(expected - area) / expected`.
    pub relative_gap: f64,
    /// Tail area not captured by the window (heuristic; no correction applied).
    pub bias_bound: f64,
    pub tolerance: f64,
    /// True iff `|relative_gap| <= tolerance`.
    pub harnack_area_verdict: bool,
}

/// Hit-or-miss Monte Carlo estimate of the amoeba area inside `window`.
///
/// Samples are drawn in fixed chunks, each from its own ChaCha stream, so
/// the estimate depends only on `seed` and `n`.
pub fn amoeba_area_estimate(
    p: &SparsePoly,
    window: Window,
    n: usize,
    seed: u64,
) -> Result<AreaEstimate, NumericsError> {
    window.check()?;
    if n < 10_000 {
        return Err(NumericsError::InvalidArgument(format!(
            "Monte Carlo needs n >= 10000, got {n}"
        )));
    }
    if p.is_zero() {
        return Err(NumericsError::InvalidArgument("zero polynomial".into()));
    }
    let fp = FloatPoly::zw(p);
    let chunks = n.div_ceil(MC_CHUNK);
    let hits: Result<Vec<usize>, NumericsError> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut solver = WRoots::new(&fp);
            let mut buf = Vec::new();
            let m = MC_CHUNK.min(n - k * MC_CHUNK);
            let mut h = 0;
            for _ in 0..m {
                let x = rng.random_range(window.x0..window.x1);
                let y = rng.random_range(window.y0..window.y1);
                if contains_with(&mut solver, x, y, DEFAULT_MEMBERSHIP_ANGLES, &mut buf)? {
                    h += 1;
                }
            }
            Ok(h)
        })
        .collect();
    let hits: usize = hits?.into_iter().sum();
    let box_area = window.width() * window.height();
    let frac = hits as f64 / n as f64;
    let area = frac * box_area;
    let stderr = (frac * (1.0 - frac) / n as f64).sqrt() * box_area;
    let expected = PI * PI * newton_polygon_in(p, Var::Z, Var::W).area2() as f64 / 2.0;
    let relative_gap = if expected > 0.0 {
        (expected - area) / expected
    } else {
        0.0
    };
    Ok(AreaEstimate {
        area,
        stderr,
        samples: n,
        hits,
        window,
        seed,
        expected,
        relative_gap,
        bias_bound: tentacle_bias_bound(p, &window),
        tolerance: AREA_TOLERANCE,
        harnack_area_verdict: relative_gap.abs() <= AREA_TOLERANCE,
    })
}

/// Nearest-neighbour matching of `prev` to `next`, accepted only if it is a
/// bijection and every move is below a quarter of the smallest gap.
fn match_roots(prev: &[Complex64], next: &[Complex64]) -> Option<Vec<usize>> {
    if prev.len() != next.len() {
        return None;
    }
    let mut gap = f64::INFINITY;
    for i in 0..prev.len() {
        for j in i + 1..prev.len() {
            gap = gap.min((prev[i] - prev[j]).norm());
        }
    }
    let mut taken = vec![false; next.len()];
    let mut out = Vec::with_capacity(prev.len());
    for p in prev {
        let (k, d) = next
            .iter()
            .enumerate()
            .map(|(k, q)| (k, (p - q).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if taken[k] || (prev.len() > 1 && d > gap / 4.0) {
            return None;
        }
        taken[k] = true;
        out.push(k);
    }
    Some(out)
}

/// `|Log^-1(x, y) ∩ {P = 0}|`: crossings of `|w_j(theta)| = e^y` along the
/// continuously tracked roots of `P(e^(x + i theta), w)`.
pub fn fiber_count(p: &SparsePoly, x: f64, y: f64, steps: usize, cfg: &NumericsConfig) -> Result<usize, NumericsError> {
    let fp = FloatPoly::zw(p);
    fiber_count_with(&mut WRoots::new(&fp), x, y, steps, cfg)
}

fn fiber_count_with(
    solver: &mut WRoots<'_>,
    x: f64,
    y: f64,
    steps: usize,
    cfg: &NumericsConfig,
) -> Result<usize, NumericsError> {
    let base = 2.0 * PI / steps.max(8) as f64;
    let side = |w: &Complex64| w.norm().ln() >= y;
    let mut prev = Vec::new();
    solver.roots(torus_point(x, 0.0), &mut prev)?;
    let mut next = Vec::new();
    let mut theta = 0.0;
    let mut h = base;
    let mut count = 0;
    while theta < 2.0 * PI {
        let step = h.min(2.0 * PI - theta);
        solver.roots(torus_point(x, theta + step), &mut next)?;
        match match_roots(&prev, &next) {
            Some(m) => {
                count += prev.iter().zip(&m).filter(|(w, &k)| side(w) != side(&next[k])).count();
                theta += step;
                std::mem::swap(&mut prev, &mut next);
                h = (2.0 * h).min(base);
            }
            None => {
                h /= 2.0;
                if h < cfg.min_theta_step {
                    return Err(NumericsError::Tracking {
                        theta,
                        min_step: cfg.min_theta_step,
                    });
                }
            }
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnackReport {
    pub window: Window,
    pub grid: usize,
    pub theta_steps: usize,
    pub max_fiber: usize,
    pub max_at: Option<[f64; 2]>,
    /// `histogram[k]` grid points have fibre count `k`.
    pub histogram: Vec<usize>,
    /// True iff `max_fiber <= 2`.
    pub pass: bool,
}

/// Fibre counts on the `grid x grid` cell centres of `window`.
pub fn harnack_fiber_test(
    p: &SparsePoly,
    window: Window,
    grid: usize,
    theta_steps: usize,
    cfg: &NumericsConfig,
) -> Result<HarnackReport, NumericsError> {
    window.check()?;
    if grid == 0 {
        return Err(NumericsError::InvalidArgument("grid must be positive".into()));
    }
    let fp = FloatPoly::zw(p);
    let rows: Result<Vec<Vec<usize>>, NumericsError> = (0..grid)
        .into_par_iter()
        .map(|j| {
            let mut solver = WRoots::new(&fp);
            let y = window.y0 + (j as f64 + 0.5) * window.height() / grid as f64;
            (0..grid)
                .map(|i| {
                    let x = window.x0 + (i as f64 + 0.5) * window.width() / grid as f64;
                    fiber_count_with(&mut solver, x, y, theta_steps, cfg)
                })
                .collect()
        })
        .collect();
    let rows = rows?;
    let mut histogram = Vec::new();
    let mut max_fiber = 0;
    let mut max_at = None;
    for (j, row) in rows.iter().enumerate() {
        for (i, &c) in row.iter().enumerate() {
            if histogram.len() <= c {
                histogram.resize(c + 1, 0);
            }
            histogram[c] += 1;
            if c > max_fiber {
                max_fiber = c;
                max_at = Some([
                    window.x0 + (i as f64 + 0.5) * window.width() / grid as f64,
                    window.y0 + (j as f64 + 0.5) * window.height() / grid as f64,
                ]);
            }
        }
    }
    Ok(HarnackReport {
        window,
        grid,
        theta_steps,
        max_fiber,
        max_at,
        histogram,
        pass: max_fiber <= 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::poly_parse;

    fn s(t: &str) -> SparsePoly {
        poly_parse(t).unwrap()
    }

    #[test]
    fn line_amoeba_points_satisfy_the_triangle_inequality() {
        let xs: Vec<f64> = (0..10).map(|k| -3.0 + 0.6 * k as f64).collect();
        let pts = amoeba_sample(&s("z + w + 1"), &xs, 10).unwrap();
        assert_eq!(pts.len(), 100);
        for [x, y] in pts {
            let (u, v) = (x.exp(), y.exp());
            assert!(u <= v + 1.0 + 1e-9 && v <= u + 1.0 + 1e-9 && 1.0 <= u + v + 1e-9);
        }
    }

    #[test]
    fn binomial_amoebas_are_lines() {
        let xs = [-1.0, 0.0, 2.5];
        for [x, y] in amoeba_sample(&s("w - z"), &xs, 8).unwrap() {
            assert!((x - y).abs() < 1e-12);
        }
        for [x, y] in amoeba_sample(&s("z*w - 1"), &xs, 8).unwrap() {
            assert!((x + y).abs() < 1e-12);
        }
    }

    #[test]
    fn alga_of_a_line() {
        for [u, v] in alga_sample(&s("w - z"), &[0.3], 16).unwrap() {
            assert!((u - v).abs() < 1e-12 && (0.0..PI).contains(&u));
        }
        // Real points of z + w + 1 land on the two-torsion class.
        let circ = |t: f64| t.min(PI - t);
        for [u, v] in alga_sample(&s("z + w + 1"), &[-1.0, 0.5, 2.0], 2).unwrap() {
            assert!(circ(u) < 1e-12 && circ(v) < 1e-12);
        }
        // Away from real points the arguments of z, w, 1 close a triangle:
        // arg z and arg w lie on opposite sides of the real axis.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let z = Complex64::from_polar(rng.random_range(0.1..3.0), rng.random_range(0.05..PI - 0.05));
            let w = -z - 1.0;
            assert!(z.arg() > 0.0 && w.arg() < 0.0);
            assert!(z.arg() - w.arg() > PI);
        }
    }

    #[test]
    fn fiber_counts_of_the_line() {
        let p = s("z + w + 1");
        let cfg = NumericsConfig::default();
        assert_eq!(fiber_count(&p, 0.0, 0.0, 512, &cfg).unwrap(), 2);
        assert_eq!(fiber_count(&p, -1.0, 0.2, 512, &cfg).unwrap(), 2);
        assert_eq!(fiber_count(&p, 2.0, -2.0, 512, &cfg).unwrap(), 0);
        assert!(amoeba_contains(&p, 0.0, 0.0, 64).unwrap());
        assert!(!amoeba_contains(&p, 2.0, -2.0, 64).unwrap());
    }

    #[test]
    fn window_outside_the_amoeba_has_zero_area() {
        let w = Window::new(3.0, 5.0, -5.0, -3.0).unwrap();
        let e = amoeba_area_estimate(&s("z + w + 1"), w, 20_000, 0).unwrap();
        assert_eq!(e.hits, 0);
        assert!(amoeba_area_estimate(&s("z + w + 1"), w, 100, 0).is_err());
    }

    #[test]
    fn area_estimate_is_reproducible() {
        let p = s("z + w + 1");
        let w = default_window(&p);
        let a = amoeba_area_estimate(&p, w, 50_000, 3).unwrap();
        let b = amoeba_area_estimate(&p, w, 50_000, 3).unwrap();
        assert_eq!(a, b);
        assert!((a.area - PI * PI / 2.0).abs() < 5.0 * a.stderr + a.bias_bound + 0.05);
    }
}
