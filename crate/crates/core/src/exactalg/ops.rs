//! Arithmetic front-end and the tangency-specific constructions.

use super::poly::{SparsePoly, Var, VarSet};
use super::AlgebraError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    ExactDiv,
}

pub fn poly_arith(op: ArithOp, p: &SparsePoly, q: &SparsePoly) -> Result<SparsePoly, AlgebraError> {
    Ok(match op {
        ArithOp::Add => p.add(q),
        ArithOp::Sub => p.sub(q),
        ArithOp::Mul => p.mul(q),
        ArithOp::ExactDiv => exact_div(p, q)?,
    })
}

/// Cofactor `p / q`, or the division remainder when `q` does not divide `p`.
pub fn exact_div(p: &SparsePoly, q: &SparsePoly) -> Result<SparsePoly, AlgebraError> {
    if q.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    p.div_exact(q).map_err(|remainder| AlgebraError::NotDivisible {
        remainder: Box::new(remainder),
    })
}

pub fn partial_derivative(p: &SparsePoly, v: Var) -> SparsePoly {
    p.derivative(v)
}

fn zw() -> VarSet {
    VarSet::of(&[Var::Z, Var::W])
}

/// `P(az, bw)`.
pub fn dilate(p: &SparsePoly) -> Result<SparsePoly, AlgebraError> {
    if !p.used_vars().is_subset_of(zw()) {
        return Err(AlgebraError::InvalidInput(format!(
            "dilate expects a polynomial in z, w; got {p}"
        )));
    }
    let vars = VarSet::of(&[Var::A, Var::B, Var::Z, Var::W]);
    Ok(p.map_monomials(vars, |m| {
        m.with_exp(Var::A, m.exp(Var::Z)).with_exp(Var::B, m.exp(Var::W))
    }))
}

/// `d_z(pd) d_w(q) - d_w(pd) d_z(q)`.
pub fn wronskian(pd: &SparsePoly, q: &SparsePoly) -> SparsePoly {
    pd.derivative(Var::Z)
        .mul(&q.derivative(Var::W))
        .sub(&pd.derivative(Var::W).mul(&q.derivative(Var::Z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::poly_parse;

    fn s(s: &str) -> SparsePoly {
        poly_parse(s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(
            poly_arith(ArithOp::Mul, &s("z + 1"), &s("z - 1")).unwrap(),
            s("z^2 - 1")
        );
        assert_eq!(
            poly_arith(ArithOp::ExactDiv, &s("z^2 - 1"), &s("z - 1")).unwrap(),
            s("z + 1")
        );
        match poly_arith(ArithOp::ExactDiv, &s("z^2 + 1"), &s("z - 1")) {
            Err(AlgebraError::NotDivisible { remainder }) => assert!(!remainder.is_zero()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dilate_examples() {
        assert_eq!(dilate(&s("z + w + 1")).unwrap(), s("a*z + b*w + 1"));
        assert_eq!(dilate(&s("z*w - 1")).unwrap(), s("a*b*z*w - 1"));
        assert_eq!(dilate(&s("z^2")).unwrap(), s("a^2*z^2"));
        assert!(dilate(&s("a*z")).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(partial_derivative(&s("z^2*w"), Var::Z), s("2*z*w"));
        assert!(partial_derivative(&s("z^2"), Var::W).is_zero());
        assert_eq!(partial_derivative(&s("a*z + b*w + 1"), Var::Z), s("a"));
    }

    #[test]
    fn wronskian_examples() {
        assert_eq!(wronskian(&s("a*z + b*w + 1"), &s("z*w - 1")), s("a*z - b*w"));
        assert!(wronskian(&s("z*w - 1"), &s("z*w - 1")).is_zero());
        assert_eq!(wronskian(&s("a*z"), &s("w")), s("a"));
    }
}
