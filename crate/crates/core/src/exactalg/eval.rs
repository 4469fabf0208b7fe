//! Point evaluation, exact or floating.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::poly::{SparsePoly, Var, NVARS};
use super::AlgebraError;

/// A value for every variable the polynomial uses.
pub trait Assignment<T> {
    fn get(&self, v: Var) -> Option<&T>;
}

impl<T> Assignment<T> for [(Var, T)] {
    fn get(&self, v: Var) -> Option<&T> {
        self.iter().find(|(w, _)| *w == v).map(|(_, x)| x)
    }
}

impl<T, const N: usize> Assignment<T> for [(Var, T); N] {
    fn get(&self, v: Var) -> Option<&T> {
        Assignment::get(self.as_slice(), v)
    }
}

fn check<T>(p: &SparsePoly, at: &(impl Assignment<T> + ?Sized)) -> Result<(), AlgebraError> {
    for v in p.used_vars().iter() {
        if at.get(v).is_none() {
            return Err(AlgebraError::MissingAssignment { var: v });
        }
    }
    Ok(())
}

/// Nested Horner evaluation: the polynomial is split by the largest used
/// variable and each coefficient evaluated recursively.
fn horner<T: Clone>(
    p: &SparsePoly,
    vals: &[Option<T>; NVARS],
    conv: &impl Fn(&BigRational) -> T,
    add: &impl Fn(T, T) -> T,
    mul: &impl Fn(T, &T) -> T,
    zero: &T,
) -> T {
    let Some(v) = p.used_vars().iter().last() else {
        return p.constant_value().map(|c| conv(&c)).unwrap_or_else(|| zero.clone());
    };
    let x = vals[v.index()].as_ref().expect("checked");
    let coeffs = p.to_univariate(v);
    let mut acc = zero.clone();
    for c in coeffs.iter().rev() {
        acc = add(mul(acc, x), horner(c, vals, conv, add, mul, zero));
    }
    acc
}

fn table<T: Clone>(at: &(impl Assignment<T> + ?Sized)) -> [Option<T>; NVARS] {
    Var::ALL.map(|v| at.get(v).cloned())
}

/// Exact evaluation at rational values.
pub fn eval_rational(
    p: &SparsePoly,
    at: &(impl Assignment<BigRational> + ?Sized),
) -> Result<BigRational, AlgebraError> {
    check(p, at)?;
    Ok(horner(
        p,
        &table(at),
        &|c| c.clone(),
        &|x, y| x + y,
        &|x, y| x * y,
        &BigRational::zero(),
    ))
}

/// Floating evaluation at complex values.
pub fn eval_complex(p: &SparsePoly, at: &(impl Assignment<Complex64> + ?Sized)) -> Result<Complex64, AlgebraError> {
    check(p, at)?;
    Ok(horner(
        p,
        &table(at),
        &|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0),
        &|x, y| x + y,
        &|x, y| x * y,
        &Complex64::zero(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::poly_parse;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reference_examples() {
        let p = poly_parse("z + w + 1").unwrap();
        assert_eq!(
            eval_rational(&p, &[(Var::Z, q(1, 1)), (Var::W, q(1, 1))]).unwrap(),
            q(3, 1)
        );
        let p = poly_parse("z*w - 1").unwrap();
        assert_eq!(
            eval_rational(&p, &[(Var::Z, q(2, 1)), (Var::W, q(1, 2))]).unwrap(),
            q(0, 1)
        );
        let p = poly_parse("z^2").unwrap();
        let v = eval_complex(&p, &[(Var::Z, Complex64::i())]).unwrap();
        assert_eq!(v, Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn missing_assignment() {
        let p = poly_parse("z + w").unwrap();
        assert!(matches!(
            eval_rational(&p, &[(Var::Z, q(1, 1))]),
            Err(AlgebraError::MissingAssignment { var: Var::W })
        ));
    }
}
