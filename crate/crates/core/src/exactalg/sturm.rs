//! Real-root counting by Sturm sequences.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::{SparsePoly, Var};
use super::AlgebraError;

/// Dense rational polynomial, entry `k` the coefficient of `t^k`.
type Dense = Vec<BigRational>;

fn trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn rem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let n = b.len() - 1;
    let lb = &b[n];
    while r.len() > n {
        let dr = r.len() - 1;
        let q = &r[dr] / lb;
        for (j, bj) in b.iter().enumerate() {
            let t = &q * bj;
            r[dr - n + j] -= t;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|s| *s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sign(c: &BigRational) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots of a nonzero univariate polynomial.
pub fn sturm_real_roots(p: &SparsePoly) -> Result<usize, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::InvalidInput("Sturm count of the zero polynomial".into()));
    }
    let used = p.used_vars();
    if used.len() > 1 {
        return Err(AlgebraError::NotUnivariate);
    }
    let Some(v) = used.iter().next() else {
        return Ok(0);
    };
    Ok(sturm_count_dense(&dense_of(p, v)))
}

fn dense_of(p: &SparsePoly, v: Var) -> Dense {
    let mut d = vec![BigRational::zero(); p.degree(v) as usize + 1];
    for (m, c) in p.terms() {
        d[m.exp(v) as usize] = c.clone();
    }
    d
}

fn sturm_count_dense(p: &Dense) -> usize {
    let deriv: Dense = trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(k.into()))
            .collect(),
    );
    let mut seq = vec![p.clone()];
    let mut next = deriv;
    while !next.is_empty() {
        let r = rem(seq.last().unwrap(), &next);
        seq.push(next);
        next = r.into_iter().map(|c| -c).collect();
    }
    // Sign at +inf is the leading sign; at -inf it flips with odd degree.
    let at_pos = sign_changes(seq.iter().map(|s| sign(s.last().unwrap())));
    let at_neg = sign_changes(seq.iter().map(|s| {
        let l = sign(s.last().unwrap());
        if (s.len() - 1) % 2 == 1 {
            -l
        } else {
            l
        }
    }));
    at_neg - at_pos
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::poly_parse;

    fn count(s: &str) -> usize {
        sturm_real_roots(&poly_parse(s).unwrap()).unwrap()
    }

    #[test]
    fn reference_examples() {
        assert_eq!(count("t^2 - 1"), 2);
        assert_eq!(count("t^2 + 1"), 0);
        assert_eq!(count("t^3 - t"), 3);
    }

    #[test]
    fn repeated_roots_count_once() {
        assert_eq!(count("t^4 - 2*t^2 + 1"), 2);
        assert_eq!(count("t^3"), 1);
        assert_eq!(count("7"), 0);
    }

    #[test]
    fn rejects_multivariate() {
        assert!(matches!(
            sturm_real_roots(&poly_parse("t*z - 1").unwrap()),
            Err(AlgebraError::NotUnivariate)
        ));
    }
}
