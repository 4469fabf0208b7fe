//! Text and JSON encodings of [`SparsePoly`].
//!
//! Text grammar (whitespace ignored):
//!
//! ```text
//! poly  = term (('+' | '-') term)*
//! term  = [sign] coeff? ('*'? var ('^' posint)?)*
//! coeff = int | int '/' posint
//! var   = 'z' | 'w' | 'a' | 'b' | 't'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, SparsePoly, Var, VarSet};
use super::AlgebraError;

/// Parses a rational literal of the form `int` or `int/posint`.
pub fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Syntax {
        pos: 0,
        msg: format!("invalid rational literal {s:?}"),
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(AlgebraError::ZeroDenominator { pos: 0 });
            }
            Ok(BigRational::new(n, d))
        }
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            at: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|x| x.1)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map(|x| x.0).unwrap_or(self.src.len())
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.at += 1;
        c
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.at;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return None;
        }
        let s: String = self.chars[start..self.at].iter().map(|x| x.1).collect();
        Some(s.parse().expect("ascii digits"))
    }

    fn err(&self, msg: impl Into<String>) -> AlgebraError {
        AlgebraError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }
}

/// Parses a polynomial in the text grammar.
pub fn poly_parse(text: &str) -> Result<SparsePoly, AlgebraError> {
    let mut lx = Lexer::new(text);
    let mut p = SparsePoly::zero();
    if lx.peek().is_none() {
        return Err(lx.err("empty polynomial"));
    }
    let mut first = true;
    while lx.peek().is_some() {
        let mut negative = false;
        match lx.peek() {
            Some('+') => {
                lx.bump();
            }
            Some('-') => {
                lx.bump();
                negative = true;
            }
            _ if !first => return Err(lx.err("expected '+' or '-' between terms")),
            _ => {}
        }
        first = false;
        let (mono, coeff) = parse_term(&mut lx)?;
        p.add_term(mono, if negative { -coeff } else { coeff });
        p = p.declare(mono.support());
    }
    Ok(p)
}

fn parse_term(lx: &mut Lexer<'_>) -> Result<(Monomial, BigRational), AlgebraError> {
    let mut coeff = BigRational::one();
    let mut saw_anything = false;
    if let Some(n) = lx.digits() {
        saw_anything = true;
        let mut c = BigRational::from_integer(n);
        if lx.peek() == Some('/') {
            let slash = lx.pos();
            lx.bump();
            let d = lx.digits().ok_or_else(|| lx.err("expected denominator"))?;
            if d.is_zero() {
                return Err(AlgebraError::ZeroDenominator { pos: slash });
            }
            c /= BigRational::from_integer(d);
        }
        coeff = c;
    }
    let mut mono = Monomial::ONE;
    loop {
        let star = lx.peek() == Some('*');
        if star {
            if !saw_anything {
                return Err(lx.err("'*' without a left operand"));
            }
            lx.bump();
        }
        match lx.peek() {
            Some(c) if c.is_alphabetic() => {
                let pos = lx.pos();
                lx.bump();
                let v = Var::from_name(c).ok_or(AlgebraError::UnknownVariable { name: c, pos })?;
                let mut e = 1u32;
                if lx.peek() == Some('^') {
                    lx.bump();
                    let n = lx.digits().ok_or_else(|| lx.err("expected exponent"))?;
                    e = u32::try_from(n)
                        .ok()
                        .filter(|e| *e > 0)
                        .ok_or_else(|| lx.err("exponent must be a positive integer"))?;
                }
                mono = mono.mul(&Monomial::var(v, e));
                saw_anything = true;
            }
            _ if star => return Err(lx.err("expected a variable after '*'")),
            _ => break,
        }
    }
    if !saw_anything {
        return Err(lx.err("expected a term"));
    }
    match lx.peek() {
        None | Some('+') | Some('-') => Ok((mono, coeff)),
        Some(c) => Err(lx.err(format!("unexpected character {c:?}"))),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub coeff: String,
    pub exp: Vec<u32>,
}

/// JSON form: `{"vars":["z","w"],"terms":[{"coeff":"3/2","exp":[2,1]}]}`.
///
/// Coefficients are always strings so that no value ever passes through a
/// float.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &SparsePoly) -> PolyJson {
        let vars: Vec<Var> = p.vars().union(p.used_vars()).iter().collect();
        let mut terms: Vec<_> = p.terms().collect();
        terms.sort_by(|x, y| y.0.grlex_cmp(x.0));
        PolyJson {
            vars: vars.iter().map(|v| v.name().to_string()).collect(),
            terms: terms
                .into_iter()
                .map(|(m, c)| TermJson {
                    coeff: format_rational(c),
                    exp: vars.iter().map(|v| m.exp(*v)).collect(),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<SparsePoly, AlgebraError> {
        let mut vars = Vec::with_capacity(self.vars.len());
        for name in &self.vars {
            let mut chars = name.chars();
            let v = match (chars.next(), chars.next()) {
                (Some(c), None) => Var::from_name(c).ok_or(AlgebraError::UnknownVariable { name: c, pos: 0 })?,
                _ => {
                    return Err(AlgebraError::Syntax {
                        pos: 0,
                        msg: format!("bad variable name {name:?}"),
                    })
                }
            };
            if vars.contains(&v) {
                return Err(AlgebraError::Syntax {
                    pos: 0,
                    msg: format!("duplicate variable {name:?}"),
                });
            }
            vars.push(v);
        }
        let mut p = SparsePoly::zero().declare(VarSet::of(&vars));
        for t in &self.terms {
            if t.exp.len() != vars.len() {
                return Err(AlgebraError::Syntax {
                    pos: 0,
                    msg: format!("exponent vector {:?} does not match {} variables", t.exp, vars.len()),
                });
            }
            let mono = vars
                .iter()
                .zip(&t.exp)
                .fold(Monomial::ONE, |m, (v, e)| m.mul(&Monomial::var(*v, *e)));
            p.add_term(mono, parse_rational(&t.coeff)?);
        }
        Ok(p)
    }
}

/// Reads either encoding: JSON when the text starts with `{`.
pub fn poly_from_str(text: &str) -> Result<SparsePoly, AlgebraError> {
    if text.trim_start().starts_with('{') {
        let j: PolyJson = serde_json::from_str(text).map_err(|e| AlgebraError::Syntax {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        j.to_poly()
    } else {
        poly_parse(text)
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
    fn parses_the_reference_examples() {
        let p = poly_parse("z + w + 1").unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.coeff(&zw(1, 0)), Some(&q(1, 1)));
        assert_eq!(p.coeff(&zw(0, 1)), Some(&q(1, 1)));
        assert_eq!(p.coeff(&zw(0, 0)), Some(&q(1, 1)));
        assert_eq!(p.vars(), VarSet::of(&[Var::Z, Var::W]));

        let p = poly_parse("3/2*z^2*w - w").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&zw(2, 1)), Some(&q(3, 2)));
        assert_eq!(p.coeff(&zw(0, 1)), Some(&q(-1, 1)));

        assert!(poly_parse("z - z").unwrap().is_zero());
    }

    #[test]
    fn implicit_products_and_whitespace() {
        assert_eq!(poly_parse("4ab-1").unwrap(), poly_parse("4 * a * b - 1").unwrap());
        assert_eq!(poly_parse(" - z w ").unwrap().to_string(), "-z*w");
    }

    #[test]
    fn errors_carry_positions() {
        match poly_parse("z + x") {
            Err(AlgebraError::UnknownVariable { name: 'x', pos: 4 }) => {}
            other => panic!("{other:?}"),
        }
        match poly_parse("1/0*z") {
            Err(AlgebraError::ZeroDenominator { pos: 1 }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(poly_parse("z +"), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(poly_parse("z^0"), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(poly_parse("*z"), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(poly_parse(""), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(poly_parse("z w)"), Err(AlgebraError::Syntax { .. })));
    }

    #[test]
    fn json_form_round_trips() {
        let p = poly_parse("3/2*z^2*w - w + 7").unwrap();
        let j = PolyJson::from_poly(&p);
        assert_eq!(j.vars, vec!["z", "w"]);
        assert_eq!(
            j.terms[0],
            TermJson {
                coeff: "3/2".into(),
                exp: vec![2, 1]
            }
        );
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(poly_from_str(&text).unwrap(), p);
    }

    #[test]
    fn json_rejects_mismatched_exponents() {
        let bad = r#"{"vars":["z","w"],"terms":[{"coeff":"1","exp":[1]}]}"#;
        assert!(poly_from_str(bad).is_err());
        let bad = r#"{"vars":["x"],"terms":[]}"#;
        assert!(matches!(poly_from_str(bad), Err(AlgebraError::UnknownVariable { .. })));
    }

    #[test]
    fn display_is_reparseable() {
        for s in ["4*a*b - 1", "a^2 - 4*b", "-3/7*z^3*w + 2*z - 1/2"] {
            let p = poly_parse(s).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(poly_parse(&p.to_string()).unwrap(), p);
        }
    }
}
