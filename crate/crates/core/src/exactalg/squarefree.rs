//! Square-free decomposition in characteristic zero (Yun).

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::gcd::{content_in, gcd_int, normalize_int};
use super::poly::{IntPoly, SparsePoly, Var};
use super::AlgebraError;

/// `p = content * prod(factor^multiplicity)`, multiplicities strictly
/// increasing, factors normalized, square-free and pairwise coprime.
#[derive(Debug, Clone, PartialEq)]
pub struct SquarefreeDecomposition {
    pub content: BigRational,
    pub factors: Vec<(SparsePoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> SparsePoly {
        self.factors
            .iter()
            .fold(SparsePoly::constant(self.content.clone()), |acc, (f, k)| {
                acc.mul(&f.pow(*k))
            })
    }

    /// Product of the factors of multiplicity one.
    pub fn multiplicity_one_part(&self) -> SparsePoly {
        self.factors
            .iter()
            .filter(|(_, k)| *k == 1)
            .fold(SparsePoly::one(), |acc, (f, _)| acc.mul(f))
    }
}

/// Yun's algorithm on a polynomial primitive in `v`. Returns factors by
/// multiplicity, each square-free.
fn yun(f: &IntPoly, v: Var) -> Vec<(IntPoly, u32)> {
    let mut out = Vec::new();
    if f.degree(v) == 0 {
        return out;
    }
    let df = f.derivative(v);
    let a0 = gcd_int(f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let c = df.div_exact(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative(v));
    let mut k = 1;
    while b.degree(v) > 0 {
        let a = gcd_int(&b, &d);
        if a.degree(v) > 0 {
            out.push((a.clone(), k));
        }
        b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = c.sub(&b.derivative(v));
        k += 1;
    }
    out
}

/// Full decomposition over every variable: Yun in `v` on the primitive part,
/// then the `v`-content recursively in the remaining variables.
fn decompose_int(f: &IntPoly, v: Var, acc: &mut BTreeMap<u32, IntPoly>) {
    let used = f.used_vars();
    if used.is_empty() {
        return;
    }
    let v = if used.contains(v) {
        v
    } else {
        used.iter().next().unwrap()
    };
    let c = content_in(f, v);
    let pp = f.div_exact(&c).expect("content divides");
    for (factor, k) in yun(&pp, v) {
        let e = acc.entry(k).or_insert_with(IntPoly::one);
        *e = e.mul(&factor);
    }
    if !c.is_constant() {
        decompose_int(&c, v, acc);
    }
}

/// Square-free decomposition of `p` with `v` as the main variable.
pub fn squarefree_decomposition(p: &SparsePoly, v: Var) -> Result<SquarefreeDecomposition, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::InvalidInput("square-free decomposition of zero".into()));
    }
    let ip = p.to_primitive_int();
    let mut acc = BTreeMap::new();
    decompose_int(&ip, v, &mut acc);
    let mut factors = Vec::new();
    let mut product = SparsePoly::one();
    for (k, f) in acc {
        let f = normalize_int(&f);
        if f.is_constant() {
            continue;
        }
        let f = f.to_rational().declare(p.vars());
        product = product.mul(&f.pow(k));
        factors.push((f, k));
    }
    let quotient = p.div_exact(&product).expect("factors divide the input");
    let content = quotient.constant_value().expect("constant cofactor");
    Ok(SquarefreeDecomposition { content, factors })
}

/// Multiplicity-one part of an integer polynomial, primitive.
pub fn squarefree_part_one(p: &IntPoly, v: Var) -> IntPoly {
    let mut acc = BTreeMap::new();
    decompose_int(p, v, &mut acc);
    normalize_int(&acc.remove(&1).unwrap_or_else(IntPoly::one))
}

/// Radical: product of all distinct square-free factors.
pub fn squarefree_radical(p: &IntPoly, v: Var) -> IntPoly {
    let mut acc = BTreeMap::new();
    decompose_int(p, v, &mut acc);
    normalize_int(&acc.into_values().fold(IntPoly::one(), |x, f| x.mul(&f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::poly_parse;

    fn s(s: &str) -> SparsePoly {
        poly_parse(s).unwrap()
    }

    #[test]
    fn reference_examples() {
        let d = squarefree_decomposition(&s("z^3 + z^2"), Var::Z).unwrap();
        assert_eq!(d.factors, vec![(s("z + 1"), 1), (s("z"), 2)]);
        let d = squarefree_decomposition(&s("z"), Var::Z).unwrap();
        assert_eq!(d.factors, vec![(s("z"), 1)]);
        let d = squarefree_decomposition(&s("z^4 + 2*z^2 + 1"), Var::Z).unwrap();
        assert_eq!(d.factors, vec![(s("z^2 + 1"), 2)]);
    }

    #[test]
    fn content_factors_in_other_variables_are_found() {
        // a^2 (b+1)^3 (z - a) 3/2
        let p = s("3/2*a^2").mul(&s("b + 1").pow(3)).mul(&s("z - a"));
        let d = squarefree_decomposition(&p, Var::Z).unwrap();
        assert_eq!(d.content, BigRational::new(3.into(), 2.into()));
        assert_eq!(d.factors, vec![(s("z - a"), 1), (s("a"), 2), (s("b + 1"), 3)]);
        assert_eq!(d.reconstruct(), p);
    }

    #[test]
    fn negative_content_reconstructs() {
        let p = s("-2*z^2 + 4*z - 2");
        let d = squarefree_decomposition(&p, Var::Z).unwrap();
        assert_eq!(d.factors, vec![(s("z - 1"), 2)]);
        assert_eq!(d.content, BigRational::from_integer((-2).into()));
        assert_eq!(d.reconstruct(), p);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(squarefree_decomposition(&SparsePoly::zero(), Var::Z).is_err());
    }
}
