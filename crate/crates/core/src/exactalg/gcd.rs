//! Multivariate gcd over `Z`.
//!
//! The reference route is content/primitive-part recursion: pick the main
//! variable of smallest positive degree, take contents recursively, and run a
//! primitive PRS on the primitive parts. A heuristic gcd (evaluation at a
//! large integer and xi-adic reconstruction, accepted only after trial
//! division) is tried first because it is much faster on dense inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::poly::{IntPoly, Monomial, SparsePoly, Var, VarSet};
use super::resultant::{dense_trim, prem, Dense};

const HEU_ATTEMPTS: usize = 6;

/// Canonical unit representative of an integer polynomial: primitive with a
/// positive graded leading coefficient.
pub fn normalize_int(p: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut g = p.int_content();
    if p.grlex_leading().unwrap().1.is_negative() {
        g = -g;
    }
    p.div_scalar(&g).unwrap()
}

/// Gcd of two integer polynomials, normalized by [`normalize_int`].
pub fn gcd_int(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let vars = p.vars().union(q.vars());
    let g = if p.is_zero() {
        q.clone()
    } else if q.is_zero() {
        p.clone()
    } else {
        let mp = p.monomial_content();
        let mq = q.monomial_content();
        let mono = mp.gcd(&mq);
        let pp = p.div_monomial(&mp).unwrap();
        let qq = q.div_monomial(&mq).unwrap();
        let core = gcd_recursive(&pp, &qq, true);
        core.mul_monomial(&mono)
    };
    normalize_int(&g).declare(vars)
}

/// Gcd over `Q`, normalized to the canonical unit; `gcd(0, q)` is `q`
/// normalized.
pub fn poly_gcd(p: &SparsePoly, q: &SparsePoly) -> SparsePoly {
    let vars = p.vars().union(q.vars());
    gcd_int(&p.to_primitive_int(), &q.to_primitive_int())
        .to_rational()
        .declare(vars)
}

/// Reference gcd by content/primitive-part recursion; no heuristic.
pub fn gcd_reference(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let vars = p.vars().union(q.vars());
    let g = if p.is_zero() {
        q.clone()
    } else if q.is_zero() {
        p.clone()
    } else {
        gcd_recursive(p, q, false)
    };
    normalize_int(&g).declare(vars)
}

fn gcd_recursive(p: &IntPoly, q: &IntPoly, fast: bool) -> IntPoly {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    let up = p.used_vars();
    let uq = q.used_vars();
    if up.is_empty() || uq.is_empty() {
        return IntPoly::constant(p.int_content().gcd(&q.int_content()));
    }
    if fast {
        if let Some(g) = heuristic_gcd(p, q) {
            return g;
        }
    }
    // A variable present in only one input cannot occur in the gcd.
    for v in Var::ALL {
        if up.contains(v) && !uq.contains(v) {
            return gcd_recursive(&content_with(p, v, fast), q, fast);
        }
        if uq.contains(v) && !up.contains(v) {
            return gcd_recursive(p, &content_with(q, v, fast), fast);
        }
    }
    let v = up
        .iter()
        .min_by_key(|&v| p.degree(v).min(q.degree(v)))
        .expect("nonconstant");
    let cp = content_with(p, v, fast);
    let cq = content_with(q, v, fast);
    let c = gcd_recursive(&cp, &cq, fast);
    let pp = p.div_exact(&cp).expect("content divides");
    let qq = q.div_exact(&cq).expect("content divides");
    let g = primitive_prs_gcd(&pp, &qq, v, fast);
    g.mul(&c)
}

/// Content with respect to `v`: gcd of the coefficients of the powers of
/// `v`, with the sign of the leading one.
pub fn content_in(p: &IntPoly, v: Var) -> IntPoly {
    content_with(p, v, true)
}

fn content_with(p: &IntPoly, v: Var, fast: bool) -> IntPoly {
    let coeffs = p.to_univariate(v);
    let mut nonzero: Vec<&IntPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| (c.total_degree(), c.num_terms()));
    let mut g = IntPoly::zero();
    for c in nonzero {
        g = gcd_recursive(&g, c, fast);
        if g.is_constant() && g.constant_value().unwrap().abs().is_one() {
            break;
        }
    }
    let g = normalize_int(&g);
    if p.lead_coeff_in(v).leading_term().unwrap().1.is_negative() {
        g.neg()
    } else {
        g
    }
}

fn primitive_part_dense(a: &Dense, v: Var, fast: bool) -> Dense {
    let p = IntPoly::from_univariate(a, v);
    let c = content_with(&p, v, fast);
    let pp = p.div_exact(&c).expect("content divides");
    dense_trim(pp.to_univariate(v))
}

/// Gcd of two polynomials primitive in `v`, by the primitive PRS.
fn primitive_prs_gcd(p: &IntPoly, q: &IntPoly, v: Var, fast: bool) -> IntPoly {
    let mut a = dense_trim(p.to_univariate(v));
    let mut b = dense_trim(q.to_univariate(v));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_empty() {
            return IntPoly::from_univariate(&primitive_part_dense(&a, v, fast), v);
        }
        if b.len() == 1 {
            return IntPoly::one();
        }
        let r = prem(&a, &b);
        a = b;
        b = if r.is_empty() {
            r
        } else {
            primitive_part_dense(&r, v, fast)
        };
    }
}

/// Heuristic gcd with trial-division certification; `None` when it gives up.
pub fn heuristic_gcd(p: &IntPoly, q: &IntPoly) -> Option<IntPoly> {
    let vars: Vec<Var> = p.used_vars().union(q.used_vars()).iter().collect();
    heu(p, q, &vars)
}

fn heu(f: &IntPoly, g: &IntPoly, vars: &[Var]) -> Option<IntPoly> {
    if f.is_zero() {
        return Some(g.clone());
    }
    if g.is_zero() {
        return Some(f.clone());
    }
    let Some((&x, rest)) = vars.split_first() else {
        return Some(IntPoly::constant(f.int_content().gcd(&g.int_content())));
    };
    if !f.used_vars().contains(x) && !g.used_vars().contains(x) {
        return heu(f, g, rest);
    }
    let fc = f.int_content();
    let gc = g.int_content();
    let gcd_c = fc.gcd(&gc);
    let f = f.div_scalar(&fc).unwrap();
    let g = g.div_scalar(&gc).unwrap();
    let fnorm = f.max_norm();
    let gnorm = g.max_norm();
    let b: BigInt = 2 * fnorm.clone().min(gnorm.clone()) + 29;
    let lf = f.lead_coeff_in(x).max_norm();
    let lg = g.lead_coeff_in(x).max_norm();
    let mut xi = b
        .clone()
        .min(BigInt::from(99) * b.sqrt())
        .max(2 * (fnorm / lf).min(gnorm / lg) + 2);
    for _ in 0..HEU_ATTEMPTS {
        let ff = f.eval_var(x, &xi);
        let gg = g.eval_var(x, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(h_eval) = heu(&ff, &gg, rest) {
                let h = interpolate(&h_eval, &xi, x);
                let h = h.int_primitive();
                if !h.is_zero() && f.div_exact(&h).is_ok() && g.div_exact(&h).is_ok() {
                    return Some(h.scale(&gcd_c));
                }
                // Cofactor routes.
                for (src, src_eval, other) in [(&f, &ff, &g), (&g, &gg, &f)] {
                    if let Ok(cf_eval) = src_eval.div_exact(&h_eval) {
                        let cf = interpolate(&cf_eval, &xi, x).int_primitive();
                        if cf.is_zero() {
                            continue;
                        }
                        if let Ok(h2) = src.div_exact(&cf) {
                            let h2 = h2.int_primitive();
                            if other.div_exact(&h2).is_ok() {
                                return Some(h2.scale(&gcd_c));
                            }
                        }
                    }
                }
            }
        }
        xi = (&xi * BigInt::from(73794) * xi.sqrt().sqrt()) / BigInt::from(27011);
    }
    None
}

/// Inverse of evaluation at `x = xi` using symmetric xi-adic digits of every
/// coefficient.
fn interpolate(h: &IntPoly, xi: &BigInt, x: Var) -> IntPoly {
    let mut out = IntPoly::zero();
    let mut h = h.clone();
    let half = xi / 2;
    let mut i = 0u32;
    while !h.is_zero() {
        let mut digit = IntPoly::zero();
        for (m, c) in h.terms() {
            let mut r = c.mod_floor(xi);
            if r > half {
                r -= xi;
            }
            digit.add_term(*m, r);
        }
        for (m, c) in digit.terms() {
            out.add_term(m.mul(&Monomial::var(x, i)), c.clone());
        }
        h = h.sub(&digit).div_scalar(xi).expect("digit removed");
        i += 1;
    }
    out.declare(VarSet::of(&[x]))
}
