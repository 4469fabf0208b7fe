//! Floating-point views of exact polynomials.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::exactalg::{SparsePoly, Var};

/// A polynomial in two variables `x`, `y` with `f64` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatPoly {
    pub x: Var,
    pub y: Var,
    /// `(i, j, c)` for `c x^i y^j`.
    pub terms: Vec<(u32, u32, f64)>,
}

impl FloatPoly {
    /// Rounds every coefficient; other variables must be absent.
    pub fn new(p: &SparsePoly, x: Var, y: Var) -> FloatPoly {
        debug_assert!(p.used_vars().iter().all(|v| v == x || v == y), "{p} is not in {x}, {y}");
        let terms = p
            .terms()
            .map(|(m, c)| (m.exp(x), m.exp(y), c.to_f64().unwrap_or(f64::NAN)))
            .collect();
        FloatPoly { x, y, terms }
    }

    pub fn zw(p: &SparsePoly) -> FloatPoly {
        FloatPoly::new(p, Var::Z, Var::W)
    }

    pub fn ab(p: &SparsePoly) -> FloatPoly {
        FloatPoly::new(p, Var::A, Var::B)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.iter().map(|t| t.1).max().unwrap_or(0)
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.iter().map(|t| t.0).max().unwrap_or(0)
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms.iter().map(|&(i, j, c)| x.powu(i) * y.powu(j) * c).sum()
    }

    /// `sum |c| |x|^i |y|^j`: the size of the terms, for relative residuals.
    pub fn scale(&self, x: Complex64, y: Complex64) -> f64 {
        let (ax, ay) = (x.norm(), y.norm());
        self.terms
            .iter()
            .map(|&(i, j, c)| c.abs() * ax.powi(i as i32) * ay.powi(j as i32))
            .sum()
    }

    pub fn eval_real(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(i, j, c)| c * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }

    pub fn scale_real(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(i, j, c)| c.abs() * x.abs().powi(i as i32) * y.abs().powi(j as i32))
            .sum()
    }

    /// Coefficients in `y`, lowest first, at a fixed `x`.
    pub fn coeffs_in_y(&self, x: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.degree_y() as usize + 1];
        for &(i, j, c) in &self.terms {
            out[j as usize] += x.powu(i) * c;
        }
        out
    }

    /// Coefficients in `x`, lowest first, at a fixed `y`.
    pub fn coeffs_in_x(&self, y: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.degree_x() as usize + 1];
        for &(i, j, c) in &self.terms {
            out[i as usize] += y.powu(j) * c;
        }
        out
    }

    /// `(d/dx, d/dy)`.
    pub fn gradient(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let mut gx = Complex64::new(0.0, 0.0);
        let mut gy = Complex64::new(0.0, 0.0);
        for &(i, j, c) in &self.terms {
            if i > 0 {
                gx += x.powu(i - 1) * y.powu(j) * (c * i as f64);
            }
            if j > 0 {
                gy += x.powu(i) * y.powu(j - 1) * (c * j as f64);
            }
        }
        (gx, gy)
    }

    pub fn gradient_real(&self, x: f64, y: f64) -> (f64, f64) {
        let g = self.gradient(Complex64::new(x, 0.0), Complex64::new(y, 0.0));
        (g.0.re, g.1.re)
    }
}

/// A polynomial in three variables viewed as a polynomial in `t` whose
/// coefficients are polynomials in `x`, `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatPoly3 {
    /// Entry `k` is the coefficient of `t^k`.
    pub coeffs: Vec<FloatPoly>,
}

impl FloatPoly3 {
    pub fn new(p: &SparsePoly, x: Var, y: Var, t: Var) -> FloatPoly3 {
        FloatPoly3 {
            coeffs: p.to_univariate(t).iter().map(|c| FloatPoly::new(c, x, y)).collect(),
        }
    }

    pub fn specialize(&self, x: Complex64, y: Complex64) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.eval(x, y)).collect()
    }
}
