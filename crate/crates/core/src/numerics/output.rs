//! CSV and SVG renderings of traces and point clouds.

use std::fmt::Write;

use super::cusp::DetectedCusp;
use super::trace::{TraceSet, Window};

/// Fixed 17-significant-digit scientific notation.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// `x,y,residual` rows, polylines separated by nothing but order.
pub fn trace_to_csv(t: &TraceSet) -> String {
    let mut s = String::from("x,y,residual\n");
    for (p, r) in t.points() {
        let _ = writeln!(s, "{},{},{}", fmt17(p[0]), fmt17(p[1]), fmt17(r));
    }
    s
}

/// Point cloud rows `x,y`; residual column empty for sampled clouds.
pub fn points_to_csv(points: &[[f64; 2]]) -> String {
    let mut s = String::from("x,y,residual\n");
    for p in points {
        let _ = writeln!(s, "{},{},", fmt17(p[0]), fmt17(p[1]));
    }
    s
}

const SIZE: f64 = 800.0;

fn to_view(w: &Window, p: [f64; 2]) -> (f64, f64) {
    ((p[0] - w.x0) / w.width() * SIZE, (w.y1 - p[1]) / w.height() * SIZE)
}

fn header(w: &Window) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE} {SIZE}\" width=\"{SIZE}\" height=\"{SIZE}\">\n\
         <desc>window {} {} {} {}</desc>\n<rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>\n",
        fmt17(w.x0),
        fmt17(w.x1),
        fmt17(w.y0),
        fmt17(w.y1)
    )
}

/// Polylines mapped from the window to an 800x800 view box, cusps as red
/// circles.
pub fn trace_to_svg(t: &TraceSet, cusps: &[DetectedCusp]) -> String {
    let mut s = header(&t.window);
    for line in &t.polylines {
        s.push_str("<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"");
        for (k, p) in line.iter().enumerate() {
            let (x, y) = to_view(&t.window, *p);
            let _ = write!(s, "{}{x:.3},{y:.3}", if k > 0 { " " } else { "" });
        }
        s.push_str("\"/>\n");
    }
    for c in cusps {
        let (x, y) = to_view(&t.window, c.at);
        let _ = writeln!(
            s,
            "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"none\" stroke=\"red\"/>"
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn points_to_svg(points: &[[f64; 2]], window: &Window) -> String {
    let mut s = header(window);
    for p in points.iter().filter(|p| window.contains(**p)) {
        let (x, y) = to_view(window, *p);
        let _ = writeln!(s, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"0.8\" fill=\"black\"/>");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::trace::trace_parametric;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt17(-2.0), "-2.0000000000000000e0");
        assert_eq!(fmt17(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn csv_and_svg_shapes() {
        let w = Window::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        let t = trace_parametric(|t| [t, -t], -0.5, 0.5, 3, w, "seg");
        let csv = trace_to_csv(&t);
        assert_eq!(csv.lines().count(), 4);
        let svg = trace_to_svg(&t, &[]);
        assert!(svg.contains("points=\"200.000,200.000 400.000,400.000 600.000,600.000\""));
    }
}
