//! Combinatorial prediction of the log-front Newton polygon and its
//! boundary markings from the marked polygons of `P` and `Q`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::marking::{MarkedEdge, MarkedPolygon};
use super::partition::{partition_pairing, Partition};
use super::polygon::{angle_cmp, LatticePolygon, Point};
use super::LatticeError;

fn neg(n: Point) -> Point {
    [-n[0], -n[1]]
}

/// Direction of an edge from its outward normal (counterclockwise traversal).
fn direction_of(normal: Point) -> Point {
    [-normal[1], normal[0]]
}

#[derive(Default, Clone)]
struct Slot {
    /// Edge of `dP` with this outward normal.
    e: Option<Partition>,
    /// Edge of `-dQ` with this outward normal.
    f: Option<Partition>,
    e_len: u64,
    f_len: u64,
}

/// One opposite pair `E <-> F`, `E` in `dP`, `F` in `-dQ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OppositePair {
    pub normal_p: Point,
    pub pairing: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub polygon: MarkedPolygon,
    pub pairs: Vec<OppositePair>,
}

fn collect(p: &MarkedPolygon, q_reflected: &MarkedPolygon) -> BTreeMap<Point, Slot> {
    let mut slots: BTreeMap<Point, Slot> = BTreeMap::new();
    for e in &p.edges {
        let s = slots.entry(e.normal).or_default();
        s.e = Some(e.marking.clone());
        s.e_len = e.length;
    }
    for f in &q_reflected.edges {
        let s = slots.entry(f.normal).or_default();
        s.f = Some(f.marking.clone());
        s.f_len = f.length;
    }
    slots
}

fn len_of(p: &Option<Partition>) -> u64 {
    p.as_ref().map_or(0, Partition::len)
}

fn parts_of(p: &Option<Partition>) -> &[u64] {
    p.as_ref().map_or(&[], |p| p.parts())
}

fn count(total: u64, minus: u64, normal: Point) -> Result<u64, LatticeError> {
    total.checked_sub(minus).ok_or_else(|| LatticeError::PolygonCollapse {
        normal,
        deficit: minus - total,
    })
}

/// Predicted Newton polygon of `R = P / Q` with its boundary marking.
///
/// Start from `degQ * dP + degP * (-dQ)`, shorten both edges parallel to
/// every opposite pair by the pairing of their markings, and mark each
/// resulting edge by the tentacle rules.
pub fn predict_logfront_polygon(
    dp: &MarkedPolygon,
    dq: &MarkedPolygon,
    deg_p: u64,
    deg_q: u64,
) -> Result<Prediction, LatticeError> {
    if deg_p == 0 && deg_q == 0 {
        return Err(LatticeError::Degenerate("both log-Gauss degrees vanish".into()));
    }
    let mq = dq.reflect();
    let slots = collect(dp, &mq);
    let mut lengths: BTreeMap<Point, i128> = slots
        .iter()
        .map(|(n, s)| (*n, i128::from(deg_q * s.e_len + deg_p * s.f_len)))
        .collect();
    let mut pairs = Vec::new();
    for (n, s) in &slots {
        let Some(e) = &s.e else { continue };
        let Some(f) = slots.get(&neg(*n)).and_then(|o| o.f.as_ref()) else {
            continue;
        };
        let k = partition_pairing(e, f);
        pairs.push(OppositePair {
            normal_p: *n,
            pairing: k,
        });
        for m in [*n, neg(*n)] {
            *lengths.entry(m).or_insert(0) -= i128::from(k);
        }
    }
    for (n, l) in &lengths {
        if *l < 0 {
            return Err(LatticeError::PolygonCollapse {
                normal: *n,
                deficit: (-*l) as u64,
            });
        }
    }

    let empty = Slot::default();
    let mut marked: BTreeMap<Point, Partition> = BTreeMap::new();
    for (n, l) in &lengths {
        let s = slots.get(n).unwrap_or(&empty);
        let o = slots.get(&neg(*n)).unwrap_or(&empty);
        let (e, f, e_bar, f_bar) = (&s.e, &s.f, &o.e, &o.f);
        let mut parts = Vec::new();
        // Repeat counts only matter for edges that exist; a curve of Gauss
        // degree zero has no generic tentacles to repeat.
        if e.is_some() {
            let ce = count(deg_q, len_of(f) + len_of(f_bar), *n)?;
            for &x in parts_of(e) {
                parts.extend(std::iter::repeat_n(x, ce as usize));
            }
        }
        if f.is_some() {
            let cf = count(deg_p, len_of(e) + len_of(e_bar), *n)?;
            for &y in parts_of(f) {
                parts.extend(std::iter::repeat_n(y, cf as usize));
            }
        }
        for &x in parts_of(e) {
            for &y in parts_of(f) {
                parts.push(x + y);
            }
        }
        for &x in parts_of(e) {
            for &y in parts_of(f_bar) {
                parts.push(x.saturating_sub(y));
            }
        }
        for &x in parts_of(f) {
            for &y in parts_of(e_bar) {
                parts.push(x.saturating_sub(y));
            }
        }
        let mark = Partition::new(parts);
        if i128::from(mark.size()) != *l {
            return Err(LatticeError::Marking(format!(
                "edge with normal {n:?}: marking size {} differs from length {l}",
                mark.size()
            )));
        }
        if *l > 0 {
            marked.insert(*n, mark);
        }
    }

    let mut vectors: Vec<Point> = lengths
        .iter()
        .filter(|(_, l)| **l > 0)
        .map(|(n, l)| {
            let d = direction_of(*n);
            [d[0] * *l as i64, d[1] * *l as i64]
        })
        .collect();
    vectors.sort_by(|a, b| angle_cmp(*a, *b));
    let polygon = LatticePolygon::from_edge_vectors(&vectors);
    let markings = polygon
        .edges()
        .iter()
        .map(|e| marked.remove(&e.normal).expect("every edge is marked"))
        .collect();
    Ok(Prediction {
        polygon: MarkedPolygon::new(polygon, markings)?,
        pairs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCount {
    /// Number of parts in the predicted marking.
    pub derived: u64,
    /// `degP |dQ| + degQ |dP| - sum <lambda(E), lambda(F)>` with `|d.|` the
    /// lattice perimeters.
    pub as_printed: i64,
}

pub fn predict_boundary_count(
    dp: &MarkedPolygon,
    dq: &MarkedPolygon,
    deg_p: u64,
    deg_q: u64,
) -> Result<BoundaryCount, LatticeError> {
    let pred = predict_logfront_polygon(dp, dq, deg_p, deg_q)?;
    let pairing: u64 = pred.pairs.iter().map(|p| p.pairing).sum();
    let as_printed =
        (deg_p * dq.polygon.lattice_perimeter() + deg_q * dp.polygon.lattice_perimeter()) as i64 - pairing as i64;
    Ok(BoundaryCount {
        derived: pred.polygon.boundary_points(),
        as_printed,
    })
}

/// Per-edge lengths, in canonical edge order.
pub fn side_lengths(p: &MarkedPolygon) -> Vec<u64> {
    p.edges.iter().map(|e: &MarkedEdge| e.length).collect()
}
