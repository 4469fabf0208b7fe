//! Sparse multivariate polynomials over an exact coefficient ring.
//!
//! Every polynomial lives over the fixed variable alphabet `a, b, z, w, t`
//! (canonical order `a < b < z < w < t`). Exponent vectors always carry one
//! slot per alphabet letter, which gives every pair of polynomials a common
//! variable ordering for free. Which letters a polynomial is *declared* over
//! is tracked separately in a [`VarSet`].
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose derived order
//! is lexicographic with `a` most significant. That order is a monomial
//! order, so the last key is the leading term used by exact division.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Number of slots in an exponent vector.
pub const NVARS: usize = 5;

/// The polynomial variables, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A,
    B,
    Z,
    W,
    T,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::A, Var::B, Var::Z, Var::W, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        match self {
            Var::A => 'a',
            Var::B => 'b',
            Var::Z => 'z',
            Var::W => 'w',
            Var::T => 't',
        }
    }

    pub fn from_name(c: char) -> Option<Var> {
        Some(match c {
            'a' => Var::A,
            'b' => Var::B,
            'z' => Var::Z,
            'w' => Var::W,
            't' => Var::T,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A set of variables, stored as a bitmask over [`Var::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u8);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn of(vars: &[Var]) -> VarSet {
        vars.iter().fold(VarSet::EMPTY, |s, &v| s.with(v))
    }

    pub fn with(self, v: Var) -> VarSet {
        VarSet(self.0 | (1 << v.index()))
    }

    pub fn without(self, v: Var) -> VarSet {
        VarSet(self.0 & !(1 << v.index()))
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |&v| self.contains(v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
}

/// Exponent vector, one slot per [`Var`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, e: u32) -> Monomial {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn with_exp(mut self, v: Var, e: u32) -> Monomial {
        self.0[v.index()] = e;
        self
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (x, y) in m.iter_mut().zip(other.0.iter()) {
            *x += *y;
        }
        Monomial(m)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = self.0;
        for (x, y) in m.iter_mut().zip(other.0.iter()) {
            *x = x.checked_sub(*y)?;
        }
        Some(Monomial(m))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (x, y) in m.iter_mut().zip(other.0.iter()) {
            *x = (*x).min(*y);
        }
        Monomial(m)
    }

    pub fn support(&self) -> VarSet {
        Var::ALL
            .into_iter()
            .filter(|v| self.exp(*v) > 0)
            .fold(VarSet::EMPTY, VarSet::with)
    }

    /// Graded order used for canonical units: total degree first, then
    /// lexicographic with the *largest* variable (`t`, then `w`, `z`, `b`,
    /// `a`) compared first.
    pub fn grlex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            for v in Var::ALL.iter().rev() {
                let c = self.exp(*v).cmp(&other.exp(*v));
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

/// Exact coefficient ring. Implemented for `BigInt` and `BigRational`.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Send + Sync {
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Exact quotient, `None` when `o` does not divide `self` in the ring.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn is_neg(&self) -> bool;
    fn from_i64(v: i64) -> Self;
}

impl Coeff for BigInt {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(o);
        r.is_zero().then_some(q)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Coeff for BigRational {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| self / o)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Sparse polynomial with coefficients in `C`.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone)]
pub struct Poly<C> {
    vars: VarSet,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: Coeff> Eq for Poly<C> {}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            vars: VarSet::EMPTY,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::ONE, c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(C::one(), Monomial::var(v, 1)).declare(VarSet::of(&[v]))
    }

    pub fn monomial(c: C, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.vars = m.support();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero)
    /// terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds the declared variables in `vs` to this polynomial.
    pub fn declare(mut self, vs: VarSet) -> Self {
        self.vars = self.vars.union(vs);
        self
    }

    /// Declared variables (always including every variable in use).
    pub fn vars(&self) -> VarSet {
        self.vars
    }

    /// Variables that actually occur with positive exponent.
    pub fn used_vars(&self) -> VarSet {
        self.terms.keys().fold(VarSet::EMPTY, |s, m| s.union(m.support()))
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        self.vars = self.vars.union(m.support());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    /// Constant coefficient of a constant polynomial (zero for the zero
    /// polynomial).
    pub fn constant_value(&self) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero());
        }
        self.is_constant().then(|| self.terms[&Monomial::ONE].clone())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// Leading term in the lexicographic storage order.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.vars = r.vars.union(o.vars);
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.vars = r.vars.union(o.vars);
        for (m, c) in &o.terms {
            r.add_term(*m, c.neg_ref());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (small, large) = if self.terms.len() <= o.terms.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let m = m1.mul(m2);
                let prod = c1.mul_ref(c2);
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get().add_ref(&prod);
                        *e.get_mut() = s;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly {
            vars: self.vars.union(o.vars),
            terms: acc,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one().declare(self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero().declare(self.vars);
        }
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, x)| (*m, x.mul_ref(c))).collect(),
        }
    }

    /// Divides every coefficient exactly by `c`.
    pub fn div_scalar(&self, c: &C) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, x) in &self.terms {
            terms.insert(*m, x.div_exact(c)?);
        }
        Some(Poly { vars: self.vars, terms })
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        Poly {
            vars: self.vars.union(mono.support()),
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |g, m| g.gcd(m)),
        }
    }

    pub fn div_monomial(&self, mono: &Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div(mono)?, c.clone());
        }
        Some(Poly { vars: self.vars, terms })
    }

    /// Exact division: `Ok(q)` with `self = q * d`, or `Err(remainder)` of
    /// the lexicographic division when `d` does not divide `self`.
    ///
    /// For integer coefficients a failure is also reported when the
    /// quotient would need non-integral coefficients.
    pub fn div_exact(&self, d: &Self) -> Result<Self, Self> {
        if d.is_zero() {
            return Err(self.clone());
        }
        if self.is_zero() {
            return Ok(Self::zero().declare(self.vars.union(d.vars)));
        }
        let (lm, lc) = d.leading_term().map(|(m, c)| (*m, c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot: BTreeMap<Monomial, C> = BTreeMap::new();
        // Exponent bound on any quotient term of an exact division.
        let mut bound = [0u32; NVARS];
        for v in Var::ALL {
            let (df, dd) = (self.degree(v), d.degree(v));
            if df < dd {
                return Err(rem);
            }
            bound[v.index()] = df - dd;
        }
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (*m, c.clone())) {
            let qm = match m.div(&lm) {
                Some(qm) if qm.0.iter().zip(bound.iter()).all(|(e, b)| e <= b) => qm,
                _ => return Err(rem),
            };
            let qc = match c.div_exact(&lc) {
                Some(qc) => qc,
                None => return Err(rem),
            };
            for (dm, dc) in &d.terms {
                rem.add_term(dm.mul(&qm), dc.mul_ref(&qc).neg_ref());
            }
            quot.insert(qm, qc);
        }
        Ok(Poly {
            vars: self.vars.union(d.vars),
            terms: quot,
        })
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut r = Self::zero().declare(self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                r.add_term(m.with_exp(v, e - 1), c.mul_ref(&C::from_i64(e as i64)));
            }
        }
        r
    }

    /// Coefficients as a polynomial in `v`: entry `k` is the coefficient of
    /// `v^k`, itself free of `v`.
    pub fn to_univariate(&self, v: Var) -> Vec<Self> {
        let n = if self.is_zero() { 0 } else { self.degree(v) as usize + 1 };
        let rest = self.vars.without(v);
        let mut out = vec![Self::zero().declare(rest); n];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            out[k].terms.insert(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_univariate(coeffs: &[Self], v: Var) -> Self {
        let mut r = Self::zero().declare(VarSet::of(&[v]));
        for (k, c) in coeffs.iter().enumerate() {
            r.vars = r.vars.union(c.vars);
            for (m, x) in &c.terms {
                debug_assert_eq!(m.exp(v), 0);
                r.terms.insert(m.with_exp(v, k as u32), x.clone());
            }
        }
        r
    }

    /// Leading coefficient with respect to `v` (a polynomial free of `v`).
    pub fn lead_coeff_in(&self, v: Var) -> Self {
        self.to_univariate(v).pop().unwrap_or_else(Self::zero)
    }

    /// Substitutes `v := c` for a constant `c`.
    pub fn eval_var(&self, v: Var, c: &C) -> Self {
        let mut r = Self::zero().declare(self.vars.without(v));
        let mut powers: Vec<C> = vec![C::one()];
        for (m, x) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul_ref(c);
                powers.push(next);
            }
            r.add_term(m.with_exp(v, 0), x.mul_ref(&powers[e]));
        }
        r
    }

    /// Applies `f` to every exponent vector. `f` must be injective on the
    /// support.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, vars: VarSet, f: F) -> Self {
        let mut r = Self::zero().declare(vars);
        for (m, c) in &self.terms {
            r.add_term(f(m), c.clone());
        }
        r
    }

    /// Renames variables by `map(v)`; the map must be injective on used
    /// variables.
    pub fn rename(&self, map: impl Fn(Var) -> Var) -> Self {
        let vars = self.vars.iter().fold(VarSet::EMPTY, |s, v| s.with(map(v)));
        self.map_monomials(vars, |m| {
            let mut out = Monomial::ONE;
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    let t = map(v);
                    out.0[t.index()] += e;
                }
            }
            out
        })
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut r = Poly::<D>::zero().declare(self.vars);
        for (m, c) in &self.terms {
            r.add_term(*m, f(c));
        }
        r
    }

    /// Leading term in the graded order of [`Monomial::grlex_cmp`].
    pub fn grlex_leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|x, y| x.0.grlex_cmp(y.0))
    }
}

/// Polynomial with arbitrary-precision integer coefficients.
pub type IntPoly = Poly<BigInt>;

/// Polynomial with exact rational coefficients; the public carrier type.
pub type SparsePoly = Poly<BigRational>;

impl IntPoly {
    /// Gcd of the integer coefficients (non-negative).
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the integer content and makes the lexicographic leading
    /// coefficient positive.
    pub fn int_primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.int_content();
        if self.leading_term().unwrap().1.is_negative() {
            g = -g;
        }
        self.div_scalar(&g).expect("content divides")
    }

    pub fn to_rational(&self) -> SparsePoly {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    pub fn max_norm(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl SparsePoly {
    /// `(d, p)` with `self = p / d`, `p` integral and `d > 0` the least
    /// common denominator.
    pub fn clear_denominators(&self) -> (BigInt, IntPoly) {
        let d = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let p = self.map_coeffs(|c| (c * BigRational::from_integer(d.clone())).to_integer());
        (d, p)
    }

    /// Primitive integer associate, as an integer polynomial, with positive
    /// lexicographic leading coefficient.
    pub fn to_primitive_int(&self) -> IntPoly {
        self.clear_denominators().1.int_primitive()
    }

    /// Canonical unit representative: primitive integer coefficients with a
    /// positive leading coefficient in graded order.
    pub fn normalize(&self) -> SparsePoly {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.clear_denominators().1;
        let mut g = p.int_content();
        if p.grlex_leading().unwrap().1.is_negative() {
            g = -g;
        }
        p.div_scalar(&g).unwrap().to_rational().declare(self.vars)
    }

    pub fn from_int(c: i64) -> SparsePoly {
        SparsePoly::constant(BigRational::from_integer(BigInt::from(c)))
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    /// Renders in the input grammar, highest graded term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|x, y| y.0.grlex_cmp(x.0));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_neg();
            let abs = if neg { c.neg_ref() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || *m == Monomial::ONE {
                factors.push(abs.to_string());
            }
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    e => factors.push(format!("{}^{}", v, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn zw(i: u32, j: u32) -> Monomial {
        Monomial::var(Var::Z, i).mul(&Monomial::var(Var::W, j))
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let mut p = SparsePoly::zero();
        p.add_term(zw(1, 0), q(1, 1));
        p.add_term(zw(1, 0), q(-1, 1));
        assert!(p.is_zero());
        p.add_term(zw(0, 1), q(0, 1));
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn mul_and_exact_div() {
        let z = SparsePoly::var(Var::Z);
        let one = SparsePoly::one();
        let p = z.add(&one).mul(&z.sub(&one));
        assert_eq!(p, z.mul(&z).sub(&one));
        assert_eq!(p.div_exact(&z.sub(&one)).unwrap(), z.add(&one));
        let r = z.mul(&z).add(&one).div_exact(&z.sub(&one)).unwrap_err();
        assert!(!r.is_zero());
    }

    #[test]
    fn integer_division_rejects_fractional_quotient() {
        let z = IntPoly::var(Var::Z);
        let two_z = z.scale(&BigInt::from(2));
        assert!(z.div_exact(&two_z).is_err());
        assert_eq!(two_z.div_exact(&z).unwrap(), IntPoly::constant(2.into()));
    }

    #[test]
    fn univariate_view_round_trips() {
        let p = SparsePoly::from_terms([(zw(2, 1), q(3, 2)), (zw(0, 1), q(-1, 1)), (zw(1, 0), q(5, 1))]);
        let u = p.to_univariate(Var::W);
        assert_eq!(u.len(), 2);
        assert_eq!(SparsePoly::from_univariate(&u, Var::W), p);
    }

    #[test]
    fn normalize_uses_graded_leading_term() {
        // -(4ab - 1) normalizes to 4ab - 1
        let ab = Monomial::var(Var::A, 1).mul(&Monomial::var(Var::B, 1));
        let p = SparsePoly::from_terms([(ab, q(-8, 3)), (Monomial::ONE, q(2, 3))]);
        assert_eq!(p.normalize().to_string(), "4*a*b - 1");
    }

    #[test]
    fn grlex_compares_largest_variable_first() {
        let a2 = Monomial::var(Var::A, 2);
        let b2 = Monomial::var(Var::B, 2);
        let ab = Monomial::var(Var::A, 1).mul(&Monomial::var(Var::B, 1));
        assert_eq!(b2.grlex_cmp(&ab), std::cmp::Ordering::Greater);
        assert_eq!(ab.grlex_cmp(&a2), std::cmp::Ordering::Greater);
        assert_eq!(Monomial::var(Var::A, 3).grlex_cmp(&b2), std::cmp::Ordering::Greater);
    }
}
