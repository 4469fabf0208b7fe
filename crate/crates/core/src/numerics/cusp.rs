//! Heuristic real-cusp detection on traced polylines.
//!
//! Neighbouring points are too close to see a cusp: at the tip the trace
//! makes two quarter turns a fraction of a cell apart. The turning angle is
//! therefore measured between chords reaching a fixed arc length (two grid
//! cells by default) before and after each vertex.

use serde::{Deserialize, Serialize};

use super::trace::TraceSet;

pub const DEFAULT_CUSP_ANGLE: f64 = 2.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectedCusp {
    pub at: [f64; 2],
    /// Turning angle in radians.
    pub angle: f64,
    /// Shorter chord over longer chord; near 1 for a symmetric tip.
    pub confidence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspReport {
    pub count: usize,
    pub cusps: Vec<DetectedCusp>,
    pub angle_threshold: f64,
    pub arm: f64,
    /// Smallest confidence over the detections, 1 when there are none.
    pub confidence: f64,
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn norm(a: [f64; 2]) -> f64 {
    a[0].hypot(a[1])
}

/// Point at arc length `arm` from vertex `i` walking in direction `step`
/// (`+1` or `-1`), or `None` at an open end.
fn reach(line: &[[f64; 2]], closed: bool, i: usize, step: isize, arm: f64) -> Option<[f64; 2]> {
    // A closed polyline repeats its first point at the end.
    let n = if closed { line.len() - 1 } else { line.len() };
    let mut acc = 0.0;
    let mut cur = i as isize;
    for _ in 0..n {
        let next = cur + step;
        let next = if closed {
            next.rem_euclid(n as isize)
        } else if next < 0 || next >= n as isize {
            return None;
        } else {
            next
        };
        let (p, q) = (line[cur as usize], line[next as usize]);
        let d = norm(sub(q, p));
        if acc + d >= arm {
            let t = (arm - acc) / d;
            return Some([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
        acc += d;
        cur = next;
    }
    None
}

/// Counts vertices whose turning angle exceeds `angle_threshold`.
///
/// Consecutive vertices above the threshold form one candidate located at
/// the sharpest vertex; candidates within one grid cell are merged.
pub fn cusp_detect(trace: &TraceSet, angle_threshold: f64) -> CuspReport {
    cusp_detect_with_arm(trace, angle_threshold, 2.0 * trace.cell())
}

pub fn cusp_detect_with_arm(trace: &TraceSet, angle_threshold: f64, arm: f64) -> CuspReport {
    let mut found: Vec<DetectedCusp> = Vec::new();
    for line in &trace.polylines {
        if line.len() < 3 {
            continue;
        }
        let closed = line.first() == line.last();
        let n = if closed { line.len() - 1 } else { line.len() };
        let turn: Vec<Option<DetectedCusp>> = (0..n)
            .map(|i| {
                let before = reach(line, closed, i, -1, arm)?;
                let after = reach(line, closed, i, 1, arm)?;
                let u = sub(line[i], before);
                let v = sub(after, line[i]);
                let (lu, lv) = (norm(u), norm(v));
                if lu == 0.0 || lv == 0.0 {
                    return None;
                }
                let cos = ((u[0] * v[0] + u[1] * v[1]) / (lu * lv)).clamp(-1.0, 1.0);
                Some(DetectedCusp {
                    at: line[i],
                    angle: cos.acos(),
                    confidence: lu.min(lv) / lu.max(lv),
                })
            })
            .collect();
        let sharp = |i: usize| turn[i].as_ref().is_some_and(|c| c.angle > angle_threshold);
        // On a closed loop start scanning after a non-sharp vertex so runs
        // are not split at the seam.
        let start = if closed {
            (0..n).find(|&i| !sharp(i)).unwrap_or(0)
        } else {
            0
        };
        let mut best: Option<DetectedCusp> = None;
        for k in 0..n {
            let i = (start + k) % n;
            if sharp(i) {
                let c = turn[i].clone().unwrap();
                if best.as_ref().is_none_or(|b| c.angle > b.angle) {
                    best = Some(c);
                }
            } else if let Some(b) = best.take() {
                found.push(b);
            }
        }
        found.extend(best);
    }
    let cell = trace.cell();
    let mut merged: Vec<DetectedCusp> = Vec::new();
    for c in found {
        match merged.iter_mut().find(|m| norm(sub(m.at, c.at)) <= cell) {
            Some(m) if c.angle > m.angle => *m = c,
            Some(_) => {}
            None => merged.push(c),
        }
    }
    let confidence = merged.iter().map(|c| c.confidence).fold(1.0, f64::min);
    CuspReport {
        count: merged.len(),
        cusps: merged,
        angle_threshold,
        arm,
        confidence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::trace::{trace_parametric, trace_real_locus, Window};
    use std::f64::consts::PI;

    #[test]
    fn astroid_has_four() {
        let w = Window::new(-1.2, 1.2, -1.2, 1.2).unwrap();
        let t = trace_parametric(
            |t| [t.cos().powi(3), t.sin().powi(3)],
            0.0,
            2.0 * PI,
            4001,
            w,
            "astroid",
        );
        let r = cusp_detect_with_arm(&t, DEFAULT_CUSP_ANGLE, 0.01);
        assert_eq!(r.count, 4, "{r:?}");
        for c in &r.cusps {
            assert!((norm(c.at) - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn traced_circle_and_semicubical_parabola() {
        let w = Window::new(-2.0, 2.0, -2.0, 2.0).unwrap();
        let t = trace_real_locus(|x, y| x * x + y * y - 1.0, w, 256, "circle").unwrap();
        assert_eq!(cusp_detect(&t, DEFAULT_CUSP_ANGLE).count, 0);
        let t = trace_real_locus(|x, y| y * y - x * x * x, w, 256, "cusp").unwrap();
        let r = cusp_detect(&t, DEFAULT_CUSP_ANGLE);
        assert_eq!(r.count, 1, "{r:?}");
        assert!(norm(r.cusps[0].at) < 0.05);
    }
}
