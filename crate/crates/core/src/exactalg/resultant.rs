//! Resultants over `Z[other variables]`.
//!
//! Two independent fraction-free routes are provided and must agree:
//! the subresultant PRS and Bareiss elimination on the Sylvester matrix.
//! Sylvester convention: `deg_v q` rows of `p` first, then `deg_v p` rows of
//! `q`, coefficients from the highest degree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::poly::{IntPoly, SparsePoly, Var};
use super::AlgebraError;

/// Dense univariate view: entry `k` is the coefficient of `v^k`.
pub(crate) type Dense = Vec<IntPoly>;

pub(crate) fn dense_trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn deg(a: &Dense) -> usize {
    a.len() - 1
}

/// Pseudo-remainder of `a` by `b`: remainder of `lc(b)^(deg a - deg b + 1) a`.
pub(crate) fn prem(a: &Dense, b: &Dense) -> Dense {
    let (m, n) = (deg(a), deg(b));
    let lb = &b[n];
    let mut r = a.clone();
    let mut steps = m + 1 - n;
    while r.len() > n {
        let dr = deg(&r);
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for j in 0..n {
            let t = lr.mul(&b[j]);
            r[dr - n + j] = r[dr - n + j].sub(&t);
        }
        r.pop();
        r = dense_trim(r);
        steps -= 1;
    }
    // Keep the normalization lc(b)^(m-n+1) even when the degree dropped early.
    if steps > 0 {
        let f = lb.pow(steps as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

fn div_exact_poly(p: &IntPoly, d: &IntPoly) -> IntPoly {
    p.div_exact(d)
        .unwrap_or_else(|_| panic!("subresultant chain: inexact division of {p} by {d}"))
}

/// Resultant of two dense polynomials by the subresultant PRS.
pub(crate) fn resultant_prs_dense(a: &Dense, b: &Dense) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return IntPoly::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = false;
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = !sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        let r = b[0].pow(deg(&a) as u32);
        return if sign { r.neg() } else { r };
    }
    // Integer contents factor out as ca^deg(b) cb^deg(a).
    let ca = dense_int_content(&a);
    let cb = dense_int_content(&b);
    let t = Pow::pow(&ca, deg(&b) as u32) * Pow::pow(&cb, deg(&a) as u32);
    let a0: Dense = a.iter().map(|c| c.div_scalar(&ca).unwrap()).collect();
    let b0: Dense = b.iter().map(|c| c.div_scalar(&cb).unwrap()).collect();
    let (mut a, mut b) = (a0, b0);
    let mut g = IntPoly::one();
    let mut h = IntPoly::one();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return IntPoly::zero();
        }
        let divisor = g.mul(&h.pow(delta as u32));
        a = b;
        b = r.iter().map(|c| div_exact_poly(c, &divisor)).collect();
        g = a[deg(&a)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => div_exact_poly(&g.pow(delta as u32), &h.pow(delta as u32 - 1)),
        };
        if deg(&b) == 0 {
            let da = deg(&a) as u32;
            let lb = &b[0];
            let hh = if da == 1 {
                lb.clone()
            } else {
                div_exact_poly(&lb.pow(da), &h.pow(da - 1))
            };
            let r = hh.scale(&t);
            return if sign { r.neg() } else { r };
        }
    }
}

fn dense_int_content(a: &Dense) -> BigInt {
    use num_integer::Integer;
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(&c.int_content());
        if g.is_one() {
            break;
        }
    }
    g
}

/// Resultant of two dense polynomials by Bareiss elimination of the
/// Sylvester matrix.
pub(crate) fn resultant_bareiss_dense(a: &Dense, b: &Dense) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return IntPoly::zero();
    }
    let (m, n) = (deg(a), deg(b));
    if m == 0 && n == 0 {
        return IntPoly::one();
    }
    let size = m + n;
    let mut mat: Vec<Vec<IntPoly>> = vec![vec![IntPoly::zero(); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + i][i + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free determinant; row swaps flip the sign and every update is
/// an exact division by the previous pivot.
pub(crate) fn bareiss_det(mut mat: Vec<Vec<IntPoly>>) -> IntPoly {
    let size = mat.len();
    let mut negate = false;
    let mut prev = IntPoly::one();
    for k in 0..size {
        if mat[k][k].is_zero() {
            // Prefer the sparsest available pivot.
            let pick = (k + 1..size)
                .filter(|&i| !mat[i][k].is_zero())
                .min_by_key(|&i| mat[i][k].num_terms());
            match pick {
                Some(i) => {
                    mat.swap(k, i);
                    negate = !negate;
                }
                None => return IntPoly::zero(),
            }
        }
        let pivot = mat[k][k].clone();
        for i in k + 1..size {
            for j in k + 1..size {
                let t = mat[i][j].mul(&pivot).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = if prev.is_one() {
                    t
                } else {
                    t.div_exact(&prev)
                        .unwrap_or_else(|_| panic!("Bareiss step is not exact"))
                };
            }
            mat[i][k] = IntPoly::zero();
        }
        prev = pivot;
    }
    let d = mat[size - 1][size - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Which fraction-free route to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResultantMethod {
    #[default]
    Subresultant,
    Bareiss,
}

fn check_args(p: &SparsePoly, q: &SparsePoly, v: Var) -> Result<(), AlgebraError> {
    if p.degree(v) == 0 && q.degree(v) == 0 && !p.is_zero() && !q.is_zero() {
        return Err(AlgebraError::ConstantInVariable { var: v });
    }
    Ok(())
}

/// Integer resultant of integer polynomials with respect to `v`.
pub fn resultant_int(p: &IntPoly, q: &IntPoly, v: Var, method: ResultantMethod) -> IntPoly {
    let a = dense_trim(p.to_univariate(v));
    let b = dense_trim(q.to_univariate(v));
    let r = match method {
        ResultantMethod::Subresultant => resultant_prs_dense(&a, &b),
        ResultantMethod::Bareiss => resultant_bareiss_dense(&a, &b),
    };
    r.declare(p.vars().union(q.vars()).without(v))
}

/// Exact resultant of `p` and `q` with respect to `v`, using the
/// subresultant PRS.
pub fn resultant(p: &SparsePoly, q: &SparsePoly, v: Var) -> Result<SparsePoly, AlgebraError> {
    resultant_with(p, q, v, ResultantMethod::Subresultant)
}

pub fn resultant_with(
    p: &SparsePoly,
    q: &SparsePoly,
    v: Var,
    method: ResultantMethod,
) -> Result<SparsePoly, AlgebraError> {
    check_args(p, q, v)?;
    let vars = p.vars().union(q.vars()).without(v);
    if p.is_zero() || q.is_zero() {
        return Ok(SparsePoly::zero().declare(vars));
    }
    // res(P/dp, Q/dq) = dp^-n dq^-m res(P, Q) with m, n the v-degrees.
    let (dp, ip) = p.clear_denominators();
    let (dq, iq) = q.clear_denominators();
    let (m, n) = (p.degree(v), q.degree(v));
    let r = resultant_int(&ip, &iq, v, method);
    let scale = BigRational::new(BigInt::one(), Pow::pow(&dp, n) * Pow::pow(&dq, m));
    Ok(r.to_rational().scale(&scale).declare(vars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::poly_parse;

    fn p(s: &str) -> SparsePoly {
        poly_parse(s).unwrap()
    }

    #[test]
    fn hand_checked_values() {
        for m in [ResultantMethod::Subresultant, ResultantMethod::Bareiss] {
            assert_eq!(resultant_with(&p("w - z"), &p("w + z"), Var::W, m).unwrap(), p("2*z"));
            assert_eq!(
                resultant_with(&p("w^3 + z*w + 1"), &p("5"), Var::W, m).unwrap(),
                p("125")
            );
            assert!(resultant_with(&p("w^2 - z"), &p("w^2 - z"), Var::W, m)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn both_constant_is_an_error() {
        assert!(matches!(
            resultant(&p("z"), &p("z + 1"), Var::W),
            Err(AlgebraError::ConstantInVariable { var: Var::W })
        ));
    }

    #[test]
    fn hyperbola_and_parabola_fibers() {
        // res_w(a z + b w + 1, z w - 1) = -(a z^2 + z + b)
        let r1 = resultant(&p("a*z + b*w + 1"), &p("z*w - 1"), Var::W).unwrap();
        assert_eq!(r1, p("-a*z^2 - z - b"));
        let r2 = resultant(&r1, &r1.derivative(Var::Z), Var::Z).unwrap();
        assert_eq!(r2.normalize(), p("4*a^2*b - a"));
        let r1 = resultant(&p("a*z + b*w + 1"), &p("w - z^2"), Var::W).unwrap();
        assert_eq!(r1.normalize(), p("b*z^2 + a*z + 1"));
    }

    #[test]
    fn rational_coefficients_scale_correctly() {
        // res(w/2 - z, w + z) = 1/2 * z + z = 3/2 z
        assert_eq!(resultant(&p("1/2*w - z"), &p("w + z"), Var::W).unwrap(), p("3/2*z"));
    }

    #[test]
    fn sign_convention_is_the_sylvester_one() {
        // res(A, B) = (-1)^(mn) res(B, A)
        let a = p("w^2 + z*w + 3");
        let b = p("w^3 - 2*w + z");
        let ab = resultant(&a, &b, Var::W).unwrap();
        let ba = resultant(&b, &a, Var::W).unwrap();
        assert_eq!(ab, ba);
        let c = p("w + 2");
        assert_eq!(resultant(&a, &c, Var::W).unwrap(), resultant(&c, &a, Var::W).unwrap());
        let d = p("w - z");
        assert_eq!(
            resultant(&c, &d, Var::W).unwrap(),
            resultant(&d, &c, Var::W).unwrap().neg()
        );
    }
}
