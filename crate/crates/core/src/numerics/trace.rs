//! Real zero sets by marching squares with bisection refinement.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fpoly::FloatPoly;
use super::{NumericsConfig, NumericsError};
use crate::exactalg::SparsePoly;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Window, NumericsError> {
        let w = Window { x0, x1, y0, y1 };
        w.check()?;
        Ok(w)
    }

    pub fn check(&self) -> Result<(), NumericsError> {
        let ok = [self.x0, self.x1, self.y0, self.y1].iter().all(|v| v.is_finite());
        if !ok || self.x0 >= self.x1 || self.y0 >= self.y1 {
            return Err(NumericsError::InvalidArgument(format!(
                "window needs min < max per axis: {self:?}"
            )));
        }
        Ok(())
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        (self.x0..=self.x1).contains(&p[0]) && (self.y0..=self.y1).contains(&p[1])
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    /// Parses `x0,x1,y0,y1`.
    pub fn parse(s: &str) -> Result<Window, NumericsError> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| NumericsError::InvalidArgument(format!("window {s:?}: {e}")))?;
        match v[..] {
            [x0, x1, y0, y1] => Window::new(x0, x1, y0, y1),
            _ => Err(NumericsError::InvalidArgument(format!(
                "window {s:?} needs four numbers"
            ))),
        }
    }
}

/// Ordered polylines of a real curve with the residual of every point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSet {
    pub polylines: Vec<Vec<[f64; 2]>>,
    /// `residuals[i][k]` belongs to `polylines[i][k]`.
    pub residuals: Vec<Vec<f64>>,
    pub window: Window,
    pub resolution: usize,
    pub source: String,
    /// Absolute residual bound every point satisfies.
    pub tolerance: f64,
    /// Crossings that could not be refined below the tolerance.
    pub dropped: usize,
}

impl TraceSet {
    pub fn points(&self) -> impl Iterator<Item = ([f64; 2], f64)> + '_ {
        self.polylines
            .iter()
            .zip(&self.residuals)
            .flat_map(|(l, r)| l.iter().copied().zip(r.iter().copied()))
    }

    pub fn num_points(&self) -> usize {
        self.polylines.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.polylines.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.points().map(|p| p.1).fold(0.0, f64::max)
    }

    /// Total polyline length; closed loops include the closing segment.
    pub fn length(&self) -> f64 {
        self.polylines
            .iter()
            .map(|l| l.windows(2).map(|s| dist(s[0], s[1])).sum::<f64>())
            .sum()
    }

    /// Grid cell diagonal scale.
    pub fn cell(&self) -> f64 {
        self.window.width().max(self.window.height()) / self.resolution as f64
    }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum EdgeKey {
    /// Between nodes `(i, j)` and `(i + 1, j)`.
    H(usize, usize),
    /// Between nodes `(i, j)` and `(i, j + 1)`.
    V(usize, usize),
}

fn check_resolution(resolution: usize) -> Result<(), NumericsError> {
    if !(8..=4096).contains(&resolution) {
        return Err(NumericsError::InvalidArgument(format!(
            "resolution {resolution} not in [8, 4096]"
        )));
    }
    Ok(())
}

/// Bisection on a segment whose endpoint values have opposite signs.
fn refine<F: Fn(f64, f64) -> f64>(f: &F, mut p: [f64; 2], mut fp: f64, mut q: [f64; 2]) -> ([f64; 2], f64) {
    let mut best = (p, fp.abs());
    for _ in 0..80 {
        let m = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
        if m == p || m == q {
            break;
        }
        let fm = f(m[0], m[1]);
        if fm.abs() < best.1 {
            best = (m, fm.abs());
        }
        if fm == 0.0 {
            break;
        }
        if (fm >= 0.0) == (fp >= 0.0) {
            p = m;
            fp = fm;
        } else {
            q = m;
        }
    }
    let fq = f(q[0], q[1]).abs();
    if fq < best.1 {
        best = (q, fq);
    }
    best
}

/// Traces `f = 0` in `window` on a `resolution x resolution` grid.
///
/// Grid values are computed in parallel and merged by index, so the output
/// does not depend on the thread count.
pub fn trace_real_locus<F>(f: F, window: Window, resolution: usize, source: &str) -> Result<TraceSet, NumericsError>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    trace_with(f, window, resolution, source, &NumericsConfig::default())
}

pub fn trace_with<F>(
    f: F,
    window: Window,
    resolution: usize,
    source: &str,
    cfg: &NumericsConfig,
) -> Result<TraceSet, NumericsError>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    window.check()?;
    check_resolution(resolution)?;
    let n = resolution;
    let hx = window.width() / n as f64;
    let hy = window.height() / n as f64;
    let node = |i: usize, j: usize| [window.x0 + i as f64 * hx, window.y0 + j as f64 * hy];
    let grid: Vec<Vec<f64>> = (0..=n)
        .into_par_iter()
        .map(|j| {
            (0..=n)
                .map(|i| {
                    let p = node(i, j);
                    f(p[0], p[1])
                })
                .collect()
        })
        .collect();
    let scale = grid
        .iter()
        .flatten()
        .filter(|v| v.is_finite())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let tolerance = cfg.trace_tol * if scale > 0.0 { scale } else { 1.0 };
    let pos = |i: usize, j: usize| grid[j][i] >= 0.0;
    let ok = |i: usize, j: usize| grid[j][i].is_finite();

    // Segments between crossed edges, cell by cell.
    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for j in 0..n {
        for i in 0..n {
            if !(ok(i, j) && ok(i + 1, j) && ok(i + 1, j + 1) && ok(i, j + 1)) {
                continue;
            }
            let (s0, s1, s2, s3) = (pos(i, j), pos(i + 1, j), pos(i + 1, j + 1), pos(i, j + 1));
            let bottom = EdgeKey::H(i, j);
            let right = EdgeKey::V(i + 1, j);
            let top = EdgeKey::H(i, j + 1);
            let left = EdgeKey::V(i, j);
            let mut crossed = Vec::with_capacity(4);
            if s0 != s1 {
                crossed.push(bottom);
            }
            if s1 != s2 {
                crossed.push(right);
            }
            if s2 != s3 {
                crossed.push(top);
            }
            if s3 != s0 {
                crossed.push(left);
            }
            match crossed.len() {
                2 => segments.push((crossed[0], crossed[1])),
                4 => {
                    let c = [window.x0 + (i as f64 + 0.5) * hx, window.y0 + (j as f64 + 0.5) * hy];
                    let center = f(c[0], c[1]) >= 0.0;
                    if center == s0 {
                        segments.push((bottom, right));
                        segments.push((top, left));
                    } else {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    }
                }
                _ => {}
            }
        }
    }

    // Refine every crossed edge once.
    let mut keys: Vec<EdgeKey> = segments.iter().flat_map(|s| [s.0, s.1]).collect();
    keys.sort_by_key(|k| match *k {
        EdgeKey::H(i, j) => (0, j, i),
        EdgeKey::V(i, j) => (1, j, i),
    });
    keys.dedup();
    let refined: Vec<([f64; 2], f64)> = keys
        .par_iter()
        .map(|k| {
            let (a, b) = match *k {
                EdgeKey::H(i, j) => ((i, j), (i + 1, j)),
                EdgeKey::V(i, j) => ((i, j), (i, j + 1)),
            };
            refine(&f, node(a.0, a.1), grid[a.1][a.0], node(b.0, b.1))
        })
        .collect();
    let index: HashMap<EdgeKey, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); keys.len()];
    for (a, b) in &segments {
        let (ia, ib) = (index[a], index[b]);
        adj[ia].push(ib);
        adj[ib].push(ia);
    }
    let mut used = vec![false; keys.len()];
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let walk = |start: usize, used: &mut Vec<bool>| {
        let mut chain = vec![start];
        used[start] = true;
        let mut cur = start;
        loop {
            let next = adj[cur].iter().copied().find(|&x| !used[x]);
            match next {
                Some(x) => {
                    used[x] = true;
                    chain.push(x);
                    cur = x;
                }
                None => {
                    // Close loops back to the start.
                    if chain.len() > 2 && adj[cur].contains(&start) {
                        chain.push(start);
                    }
                    break;
                }
            }
        }
        chain
    };
    for s in 0..keys.len() {
        if !used[s] && adj[s].len() == 1 {
            chains.push(walk(s, &mut used));
        }
    }
    for s in 0..keys.len() {
        if !used[s] && !adj[s].is_empty() {
            chains.push(walk(s, &mut used));
        }
    }

    let mut polylines = Vec::new();
    let mut residuals = Vec::new();
    let mut dropped = 0;
    for chain in chains {
        let mut line = Vec::new();
        let mut res = Vec::new();
        for idx in chain {
            let (p, r) = refined[idx];
            if r <= tolerance {
                line.push(p);
                res.push(r);
            } else {
                dropped += 1;
                if line.len() >= 2 {
                    polylines.push(std::mem::take(&mut line));
                    residuals.push(std::mem::take(&mut res));
                }
                line.clear();
                res.clear();
            }
        }
        if line.len() >= 2 {
            polylines.push(line);
            residuals.push(res);
        }
    }
    Ok(TraceSet {
        polylines,
        residuals,
        window,
        resolution,
        source: source.to_string(),
        tolerance,
        dropped,
    })
}

/// Samples a parametric curve; residuals are zero by construction. A curve
/// ending where it starts yields a closed polyline.
pub fn trace_parametric<F>(g: F, t0: f64, t1: f64, samples: usize, window: Window, source: &str) -> TraceSet
where
    F: Fn(f64) -> [f64; 2],
{
    let samples = samples.max(2);
    let mut line: Vec<[f64; 2]> = (0..samples)
        .map(|k| g(t0 + (t1 - t0) * k as f64 / (samples - 1) as f64))
        .collect();
    // Snap a closed parametrization so the polyline is recognized as a loop.
    let (first, last) = (line[0], line[samples - 1]);
    if (first[0] - last[0]).abs().max((first[1] - last[1]).abs()) <= 1e-12 * (1.0 + first[0].abs().max(first[1].abs()))
    {
        line[samples - 1] = first;
    }
    TraceSet {
        residuals: vec![vec![0.0; line.len()]],
        polylines: vec![line],
        window,
        resolution: samples,
        source: source.to_string(),
        tolerance: 0.0,
        dropped: 0,
    }
}

/// Real part of the dual picture for `P = z + w + 1`: traces `Q = 0` in
/// `window` and maps every point to the `(a, b)` of its tangent line
/// `a z + b w + 1 = 0`. Polylines are cut where the tangent line passes
/// near the origin (the dual point escapes) or leaves `dual_window`.
/// Residuals are those of the source points on `Q`.
pub fn dual_trace(
    q: &SparsePoly,
    window: Window,
    resolution: usize,
    dual_window: Window,
) -> Result<TraceSet, NumericsError> {
    dual_window.check()?;
    let fq = FloatPoly::zw(q);
    let src = trace_real_locus(|x, y| fq.eval_real(x, y), window, resolution, "Q")?;
    let mut polylines = Vec::new();
    let mut residuals = Vec::new();
    for (line, res) in src.polylines.iter().zip(&src.residuals) {
        let mut cur: Vec<[f64; 2]> = Vec::new();
        let mut cur_r: Vec<f64> = Vec::new();
        for (p, r) in line.iter().zip(res) {
            let (gz, gw) = fq.gradient_real(p[0], p[1]);
            let d = gz * p[0] + gw * p[1];
            let dual = [-gz / d, -gw / d];
            if d != 0.0 && dual[0].is_finite() && dual[1].is_finite() && dual_window.contains(dual) {
                cur.push(dual);
                cur_r.push(*r);
            } else {
                if cur.len() >= 2 {
                    polylines.push(std::mem::take(&mut cur));
                    residuals.push(std::mem::take(&mut cur_r));
                }
                cur.clear();
                cur_r.clear();
            }
        }
        if cur.len() >= 2 {
            polylines.push(cur);
            residuals.push(cur_r);
        }
    }
    Ok(TraceSet {
        polylines,
        residuals,
        window: dual_window,
        resolution,
        source: format!("dual of {q}"),
        tolerance: src.tolerance,
        dropped: src.dropped,
    })
}
