//! Exact polynomial algebra over `Q`.

pub mod eval;
pub mod gcd;
pub mod ops;
pub mod parse;
pub mod poly;
pub mod resultant;
pub mod squarefree;
pub mod sturm;

pub use eval::{eval_complex, eval_rational, Assignment};
pub use gcd::{gcd_int, gcd_reference, heuristic_gcd, normalize_int, poly_gcd};
pub use ops::{dilate, exact_div, partial_derivative, poly_arith, wronskian, ArithOp};
pub use parse::{format_rational, parse_rational, poly_from_str, poly_parse, PolyJson, TermJson};
pub use poly::{Coeff, IntPoly, Monomial, Poly, SparsePoly, Var, VarSet};
pub use resultant::{resultant, resultant_int, resultant_with, ResultantMethod};
pub use squarefree::{squarefree_decomposition, SquarefreeDecomposition};
pub use sturm::sturm_real_roots;

/// Exact rational number; always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at byte {pos}")]
    UnknownVariable { name: char, pos: usize },
    #[error("zero denominator at byte {pos}")]
    ZeroDenominator { pos: usize },
    #[error("not divisible; remainder {remainder}")]
    NotDivisible { remainder: Box<SparsePoly> },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("both inputs are constant in {var}")]
    ConstantInVariable { var: Var },
    #[error("no value assigned to {var}")]
    MissingAssignment { var: Var },
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("{0}")]
    InvalidInput(String),
}

impl AlgebraError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            AlgebraError::Syntax { .. } => "exactalg.syntax",
            AlgebraError::UnknownVariable { .. } => "exactalg.unknown_variable",
            AlgebraError::ZeroDenominator { .. } => "exactalg.zero_denominator",
            AlgebraError::NotDivisible { .. } => "exactalg.not_divisible",
            AlgebraError::DivisionByZero => "exactalg.division_by_zero",
            AlgebraError::ConstantInVariable { .. } => "exactalg.constant_in_variable",
            AlgebraError::MissingAssignment { .. } => "exactalg.missing_assignment",
            AlgebraError::NotUnivariate => "exactalg.not_univariate",
            AlgebraError::InvalidInput(_) => "exactalg.invalid_input",
        }
    }
}
