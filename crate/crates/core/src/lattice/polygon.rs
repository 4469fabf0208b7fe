//! Convex lattice polygons, stored as a canonical translate.

use std::cmp::Ordering;

use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exactalg::{SparsePoly, Var};

pub type Point = [i64; 2];

fn cross(a: Point, b: Point) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

/// Lattice length of a vector: gcd of its coordinates.
pub fn lattice_length(v: Point) -> u64 {
    v[0].unsigned_abs().gcd(&v[1].unsigned_abs())
}

/// Primitive vector in the direction of `v` (zero stays zero).
pub fn primitive(v: Point) -> Point {
    let g = lattice_length(v) as i64;
    if g == 0 {
        v
    } else {
        [v[0] / g, v[1] / g]
    }
}

/// Outward normal of an edge traversed counterclockwise.
pub fn outward_normal(dir: Point) -> Point {
    [dir[1], -dir[0]]
}

/// Angular order of nonzero vectors, starting at the positive x-axis.
pub fn angle_cmp(a: Point, b: Point) -> Ordering {
    let half = |v: Point| u8::from(!(v[1] > 0 || (v[1] == 0 && v[0] > 0)));
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonKind {
    Point,
    Segment,
    Polygon,
}

/// Convex lattice polygon: counterclockwise vertices, no three consecutive
/// collinear, lexicographically minimal vertex first and at the origin.
/// A segment is kept as a two-gon with two opposite edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePolygon {
    vertices: Vec<Point>,
}

/// One side of a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub start: Point,
    pub vector: Point,
    pub length: u64,
    pub direction: Point,
    pub normal: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonMetrics {
    pub area2: u64,
    pub interior: u64,
    pub lattice_perimeter: u64,
    pub vertex_count: usize,
}

/// Counterclockwise hull without collinear points, starting at the
/// lexicographically minimal point. Coordinates are kept.
pub fn hull_vertices(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && cross(
                sub(lower[lower.len() - 1], lower[lower.len() - 2]),
                sub(p, lower[lower.len() - 1]),
            ) <= 0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(
                sub(upper[upper.len() - 1], upper[upper.len() - 2]),
                sub(p, upper[upper.len() - 1]),
            ) <= 0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl LatticePolygon {
    /// Convex hull of a nonempty point set.
    pub fn hull(points: &[Point]) -> LatticePolygon {
        assert!(!points.is_empty(), "hull of an empty point set");
        Self::from_ccw(hull_vertices(points))
    }

    fn from_ccw(mut vertices: Vec<Point>) -> LatticePolygon {
        let k = (0..vertices.len()).min_by_key(|&i| vertices[i]).unwrap_or(0);
        vertices.rotate_left(k);
        let o = vertices[0];
        LatticePolygon {
            vertices: vertices.into_iter().map(|v| sub(v, o)).collect(),
        }
    }

    /// Validates and canonicalizes a counterclockwise vertex list.
    pub fn from_vertices(vertices: &[Point]) -> Result<LatticePolygon, String> {
        let n = vertices.len();
        if n == 0 {
            return Err("polygon has no vertices".into());
        }
        if n >= 3 {
            for i in 0..n {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let c = vertices[(i + 2) % n];
                if cross(sub(b, a), sub(c, b)) <= 0 {
                    return Err(format!(
                        "vertices are not strictly convex and counterclockwise at {b:?}"
                    ));
                }
            }
        }
        if n == 2 && vertices[0] == vertices[1] {
            return Err("segment endpoints coincide".into());
        }
        Ok(Self::from_ccw(vertices.to_vec()))
    }

    pub fn point() -> LatticePolygon {
        LatticePolygon { vertices: vec![[0, 0]] }
    }

    /// Standard triangle with vertices (0,0), (d,0), (0,d).
    pub fn triangle(d: i64) -> LatticePolygon {
        assert!(d > 0);
        LatticePolygon {
            vertices: vec![[0, 0], [d, 0], [0, d]],
        }
    }

    /// Polygon with the given edge vectors, merged by direction and sorted
    /// by angle. Vectors must sum to zero.
    pub fn from_edge_vectors(vectors: &[Point]) -> LatticePolygon {
        let mut vs: Vec<Point> = vectors.iter().copied().filter(|v| *v != [0, 0]).collect();
        vs.sort_by(|a, b| angle_cmp(*a, *b));
        let mut merged: Vec<Point> = Vec::new();
        for v in vs {
            match merged.last_mut() {
                Some(last) if cross(*last, v) == 0 && angle_cmp(*last, v) == Ordering::Equal => {
                    last[0] += v[0];
                    last[1] += v[1];
                }
                _ => merged.push(v),
            }
        }
        let sum = merged.iter().fold([0, 0], |s, v| [s[0] + v[0], s[1] + v[1]]);
        assert_eq!(sum, [0, 0], "edge vectors do not close up");
        if merged.is_empty() {
            return Self::point();
        }
        let mut verts = Vec::with_capacity(merged.len());
        let mut at = [0, 0];
        for v in &merged {
            verts.push(at);
            at = [at[0] + v[0], at[1] + v[1]];
        }
        Self::from_ccw(verts)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn kind(&self) -> PolygonKind {
        match self.vertices.len() {
            1 => PolygonKind::Point,
            2 => PolygonKind::Segment,
            _ => PolygonKind::Polygon,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.kind() != PolygonKind::Polygon
    }

    /// Sides in counterclockwise order from the first vertex.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                let vector = sub(b, a);
                let direction = primitive(vector);
                Edge {
                    start: a,
                    vector,
                    length: lattice_length(vector),
                    direction,
                    normal: outward_normal(direction),
                }
            })
            .collect()
    }

    pub fn edge_vectors(&self) -> Vec<Point> {
        self.edges().into_iter().map(|e| e.vector).collect()
    }

    /// Twice the Euclidean area (shoelace).
    pub fn area2(&self) -> u64 {
        let n = self.vertices.len();
        let s: i64 = (0..n)
            .map(|i| cross(self.vertices[i], self.vertices[(i + 1) % n]))
            .sum();
        s.unsigned_abs()
    }

    pub fn area(&self) -> BigRational {
        BigRational::new(i128::from(self.area2()).into(), 2.into())
    }

    pub fn lattice_perimeter(&self) -> u64 {
        self.edges().iter().map(|e| e.length).sum()
    }

    /// Total degree of a polynomial with this Newton polygon and no monomial
    /// factor.
    pub fn total_degree(&self) -> i64 {
        let x0 = self.vertices.iter().map(|v| v[0]).min().unwrap_or(0);
        let y0 = self.vertices.iter().map(|v| v[1]).min().unwrap_or(0);
        self.vertices.iter().map(|v| v[0] + v[1] - x0 - y0).max().unwrap_or(0)
    }

    /// Interior lattice points by Pick's theorem.
    pub fn interior(&self) -> u64 {
        if self.is_degenerate() {
            return 0;
        }
        ((self.area2() as i64 - self.lattice_perimeter() as i64) / 2 + 1) as u64
    }

    pub fn metrics(&self) -> PolygonMetrics {
        PolygonMetrics {
            area2: self.area2(),
            interior: self.interior(),
            lattice_perimeter: self.lattice_perimeter(),
            vertex_count: self.vertices.len(),
        }
    }

    pub fn scale(&self, k: i64) -> LatticePolygon {
        assert!(k > 0);
        Self::from_edge_vectors(
            &self
                .edge_vectors()
                .iter()
                .map(|v| [k * v[0], k * v[1]])
                .collect::<Vec<_>>(),
        )
    }

    /// Point reflection `-self`.
    pub fn reflect(&self) -> LatticePolygon {
        Self::from_edge_vectors(&self.edge_vectors().iter().map(|v| [-v[0], -v[1]]).collect::<Vec<_>>())
    }

    pub fn minkowski_sum(&self, other: &LatticePolygon) -> LatticePolygon {
        let mut vs = self.edge_vectors();
        vs.extend(other.edge_vectors());
        Self::from_edge_vectors(&vs)
    }

    /// Brute-force lattice-point test, used by tests and small helpers.
    pub fn contains(&self, p: Point) -> bool {
        match self.kind() {
            PolygonKind::Point => p == self.vertices[0],
            PolygonKind::Segment => {
                let d = sub(self.vertices[1], self.vertices[0]);
                let q = sub(p, self.vertices[0]);
                cross(d, q) == 0 && {
                    let t = q[0] * d[0] + q[1] * d[1];
                    t >= 0 && t <= d[0] * d[0] + d[1] * d[1]
                }
            }
            PolygonKind::Polygon => self.edges().iter().all(|e| cross(e.vector, sub(p, e.start)) >= 0),
        }
    }
}

/// Sum of `scale * (±polygon)` over the parts.
pub fn minkowski_combine(parts: &[(i64, &LatticePolygon, bool)]) -> LatticePolygon {
    assert!(!parts.is_empty(), "Minkowski combination of nothing");
    let mut vs = Vec::new();
    for (k, p, reflect) in parts {
        assert!(*k > 0, "scales are positive");
        let s = if *reflect { -k } else { *k };
        vs.extend(p.edge_vectors().into_iter().map(|v| [s * v[0], s * v[1]]));
    }
    LatticePolygon::from_edge_vectors(&vs)
}

/// Exponent support of `p` in the variables `(x, y)`.
pub fn support(p: &SparsePoly, x: Var, y: Var) -> Vec<Point> {
    p.terms()
        .map(|(m, _)| [i64::from(m.exp(x)), i64::from(m.exp(y))])
        .collect()
}

/// Newton polygon of a nonzero polynomial in `(x, y)`.
pub fn newton_polygon_in(p: &SparsePoly, x: Var, y: Var) -> LatticePolygon {
    assert!(!p.is_zero(), "Newton polygon of zero");
    LatticePolygon::hull(&support(p, x, y))
}

/// Newton polygon in `(z, w)`.
pub fn newton_polygon(p: &SparsePoly) -> LatticePolygon {
    newton_polygon_in(p, Var::Z, Var::W)
}

pub fn polygon_metrics(p: &LatticePolygon) -> PolygonMetrics {
    p.metrics()
}

/// `Area(a + b) - Area(a) - Area(b)`.
pub fn mixed_volume(a: &LatticePolygon, b: &LatticePolygon) -> BigRational {
    let s = a.minkowski_sum(b).area2() as i128 - a.area2() as i128 - b.area2() as i128;
    BigRational::new(s.into(), 2.into())
}

/// Sum over side pairs of the parallelogram areas `|e x f|`.
pub fn epsilon_pairing(a: &LatticePolygon, b: &LatticePolygon) -> u64 {
    let fa = a.edge_vectors();
    let fb = b.edge_vectors();
    fa.iter()
        .flat_map(|e| fb.iter().map(move |f| cross(*e, *f).unsigned_abs()))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly_parse;

    fn tri(d: i64) -> LatticePolygon {
        LatticePolygon::triangle(d)
    }

    #[test]
    fn newton_polygons() {
        assert_eq!(newton_polygon(&poly_parse("z + w + 1").unwrap()), tri(1));
        let conic = poly_parse("z^2 + z*w + w^2 + z + w + 1").unwrap();
        assert_eq!(newton_polygon(&conic), tri(2));
        let h = newton_polygon(&poly_parse("z*w - 1").unwrap());
        assert_eq!(h.kind(), PolygonKind::Segment);
        assert_eq!(h.vertices(), &[[0, 0], [1, 1]]);
        // Translation is forgotten.
        assert_eq!(newton_polygon(&poly_parse("z^3*w + z^4*w + z^3*w^2").unwrap()), tri(1));
    }

    #[test]
    fn metrics_of_triangles() {
        let m = tri(4).metrics();
        assert_eq!(
            (m.area2, m.interior, m.lattice_perimeter, m.vertex_count),
            (16, 3, 12, 3)
        );
        let m = tri(1).metrics();
        assert_eq!((m.area2, m.interior, m.lattice_perimeter), (1, 0, 3));
        let m = tri(2).metrics();
        assert_eq!((m.area2, m.interior, m.lattice_perimeter), (4, 0, 6));
    }

    #[test]
    fn minkowski_examples() {
        assert_eq!(minkowski_combine(&[(1, &tri(1), false), (1, &tri(1), false)]), tri(2));
        let hex = minkowski_combine(&[(4, &tri(2), false), (4, &tri(2), true)]);
        assert_eq!(hex.edges().iter().map(|e| e.length).collect::<Vec<_>>(), vec![8; 6]);
        let hex = minkowski_combine(&[(10, &tri(2), false), (4, &tri(4), true)]);
        let lens: Vec<u64> = hex.edges().iter().map(|e| e.length).collect();
        assert_eq!(lens.len(), 6);
        for i in 0..6 {
            assert_ne!(lens[i], lens[(i + 1) % 6]);
            assert!(lens[i] == 20 || lens[i] == 16);
        }
    }

    #[test]
    fn mixed_volume_and_epsilon() {
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(mixed_volume(&tri(1), &tri(5)), q(5));
        assert_eq!(mixed_volume(&tri(2), &tri(4)), q(8));
        assert_eq!(mixed_volume(&tri(3), &tri(3)), tri(3).area() * q(2));
        assert_eq!(mixed_volume(&tri(3), &LatticePolygon::point()), q(0));
        assert_eq!(epsilon_pairing(&tri(2), &tri(3)), 36);
        assert_eq!(epsilon_pairing(&tri(2), &tri(4)), 48);
        let seg = LatticePolygon::from_vertices(&[[0, 0], [2, 0]]).unwrap();
        assert_eq!(epsilon_pairing(&seg, &seg), 0);
    }

    #[test]
    fn rejects_nonconvex_input() {
        assert!(LatticePolygon::from_vertices(&[[0, 0], [0, 1], [1, 0]]).is_err());
        assert!(LatticePolygon::from_vertices(&[[0, 0], [1, 0], [2, 0], [0, 1]]).is_err());
        assert!(LatticePolygon::from_vertices(&[[3, 3], [4, 3], [3, 4]]).unwrap() == tri(1));
    }

    #[test]
    fn contains_matches_pick() {
        let p = LatticePolygon::from_vertices(&[[0, 0], [3, 1], [2, 4], [-1, 2]]).unwrap();
        let (mut inside, mut boundary) = (0u64, 0u64);
        for x in -5..10 {
            for y in -5..10 {
                if p.contains([x, y]) {
                    let on_edge = p.edges().iter().any(|e| cross(e.vector, sub([x, y], e.start)) == 0);
                    if on_edge {
                        boundary += 1;
                    } else {
                        inside += 1;
                    }
                }
            }
        }
        assert_eq!(boundary, p.lattice_perimeter());
        assert_eq!(inside, p.interior());
    }
}
