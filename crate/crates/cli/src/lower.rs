//! Lowering of parsed expressions to linear combinations of eta-products.

use std::collections::HashMap;
use std::fmt;

use eta_core::{EtaProduct, Rational, RationalCombo};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::syntax::{parse_program, Expr, ExprKind, Pos, Program, Statement, SyntaxError};

/// Terms in the order they were written, unmerged.
pub type RawSum = Vec<(Rational, EtaProduct)>;

const MAX_TERMS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("cannot lower `{expr}` at {pos}: {message}")]
pub struct LowerError {
    pub pos: Pos,
    pub expr: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InputError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Lower(#[from] LowerError),
    #[error("the input contains no identity")]
    Empty,
    #[error("{0}")]
    Shape(String),
}

fn fail<T>(e: &Expr, message: impl Into<String>) -> Result<T, LowerError> {
    Err(LowerError { pos: e.pos, expr: e.to_string(), message: message.into() })
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn merged(sum: &RawSum) -> RationalCombo {
    RationalCombo::new(Rational::zero(), sum.iter().cloned())
}

/// The single nonzero term of `sum` after merging, if it has exactly one.
fn as_monomial(sum: &RawSum) -> Option<(Rational, EtaProduct)> {
    match merged(sum).to_sum().as_slice() {
        [t] => Some(t.clone()),
        _ => None,
    }
}

fn multiply(a: &RawSum, b: &RawSum, e: &Expr) -> Result<RawSum, LowerError> {
    if a.len().saturating_mul(b.len()) > MAX_TERMS {
        return fail(e, format!("product has more than {MAX_TERMS} terms"));
    }
    Ok(a.iter().flat_map(|(c, x)| b.iter().map(move |(d, y)| (c * d, x * y))).collect())
}

fn rational_pow(c: &Rational, n: i64) -> Rational {
    let base = if n < 0 { c.recip() } else { c.clone() };
    (0..n.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

fn lower(e: &Expr, env: &HashMap<String, RawSum>) -> Result<RawSum, LowerError> {
    Ok(match &e.kind {
        ExprKind::Int(s) => match s.parse::<Rational>() {
            Ok(v) => vec![(v, EtaProduct::one())],
            Err(_) => return fail(e, "not an integer"),
        },
        ExprKind::Eta(k) => vec![(int(1), EtaProduct::eta(*k).expect("positive multiplier"))],
        ExprKind::Bracket(list) => match EtaProduct::from_gp(list) {
            Ok(ep) => vec![(int(1), ep)],
            Err(err) => return fail(e, err.to_string()),
        },
        ExprKind::Name(n) => match env.get(n) {
            Some(v) => v.clone(),
            None => return fail(e, format!("`{n}` is not defined")),
        },
        ExprKind::Neg(a) => lower(a, env)?.into_iter().map(|(c, x)| (-c, x)).collect(),
        ExprKind::Add(a, b) => {
            let mut out = lower(a, env)?;
            out.extend(lower(b, env)?);
            out
        }
        ExprKind::Sub(a, b) => {
            let mut out = lower(a, env)?;
            out.extend(lower(b, env)?.into_iter().map(|(c, x)| (-c, x)));
            out
        }
        ExprKind::Mul(a, b) => multiply(&lower(a, env)?, &lower(b, env)?, e)?,
        ExprKind::Div(a, b) => {
            let num = lower(a, env)?;
            let den = lower(b, env)?;
            let Some((d, y)) = as_monomial(&den) else {
                let what = if merged(&den).to_sum().is_empty() { "division by zero" } else { "division by a sum" };
                return fail(b, format!("{what}; only single eta-products and nonzero numbers can divide"));
            };
            num.into_iter().map(|(c, x)| (c / &d, &x / &y)).collect()
        }
        ExprKind::Pow(a, b) => {
            let exp = merged(&lower(b, env)?);
            if !exp.terms().is_empty() || !exp.constant().is_integer() {
                return fail(b, "exponent must be an integer");
            }
            let Ok(n) = i64::try_from(exp.constant().to_integer()) else {
                return fail(b, "exponent is too large");
            };
            let base = lower(a, env)?;
            if let Some((c, x)) = as_monomial(&base) {
                vec![(rational_pow(&c, n), x.pow(n))]
            } else if n < 0 {
                return fail(e, "negative power of a sum");
            } else {
                let mut out = vec![(int(1), EtaProduct::one())];
                for _ in 0..n {
                    out = multiply(&out, &base, e)?;
                }
                out
            }
        }
    })
}

/// An identity read from input.
#[derive(Clone, Debug, PartialEq)]
pub enum Identity {
    /// `sum = 0`, terms in written order (`lhs - rhs` for `lhs = rhs`).
    Linear(RawSum),
    /// `U_p(g) = rhs`.
    Up { p: u64, g: EtaProduct, rhs: RationalCombo },
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::Linear(sum) => match eta_core::normalize_identity(sum) {
                Ok(n) => write!(f, "{}", n.combo),
                Err(_) => write!(f, "0"),
            },
            Identity::Up { p, g, rhs } => write!(f, "U({p}) {g} = {rhs}"),
        }
    }
}

fn environment(program: &Program) -> Result<HashMap<String, RawSum>, LowerError> {
    let mut env = HashMap::new();
    for b in &program.bindings {
        let v = lower(&b.value, &env)?;
        env.insert(b.name.clone(), v);
    }
    Ok(env)
}

pub fn lower_program(program: &Program) -> Result<Identity, InputError> {
    let env = environment(program)?;
    match &program.statement {
        None => Err(InputError::Empty),
        Some(Statement::Linear { lhs, rhs }) => {
            let mut sum = lower(lhs, &env)?;
            if let Some(rhs) = rhs {
                sum.extend(lower(rhs, &env)?.into_iter().map(|(c, x)| (-c, x)));
            }
            Ok(Identity::Linear(sum))
        }
        Some(Statement::Up { p, lhs, rhs }) => {
            let left = lower(lhs, &env)?;
            let Some((c, g)) = as_monomial(&left) else {
                return Err(InputError::Shape(format!("the operand of U({p}) must be a single eta-product, not `{lhs}`")));
            };
            let rhs = merged(&lower(rhs, &env)?).scale(&c.recip());
            Ok(Identity::Up { p: *p, g, rhs })
        }
    }
}

/// Parses and lowers an identity file.
pub fn parse_identity(text: &str) -> Result<Identity, InputError> {
    lower_program(&parse_program(text)?)
}

/// Parses a single expression (bindings allowed) into a merged combination, without normalizing.
pub fn parse_combo(text: &str) -> Result<RationalCombo, InputError> {
    let program = parse_program(text)?;
    let env = environment(&program)?;
    match &program.statement {
        Some(Statement::Linear { lhs, rhs: None }) => Ok(merged(&lower(lhs, &env)?)),
        Some(_) => Err(InputError::Shape("expected an expression, not an identity".into())),
        None => Err(InputError::Empty),
    }
}

/// Parses an expression that must denote a single eta-product (coefficient 1).
pub fn parse_product(text: &str) -> Result<EtaProduct, InputError> {
    let combo = parse_combo(text)?;
    match combo.to_sum().as_slice() {
        [(c, ep)] if c.is_one() => Ok(ep.clone()),
        _ => Err(InputError::Shape(format!("`{}` is not a single eta-product", text.trim()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use eta_core::normalize_identity;

    fn gp(list: &[i64]) -> EtaProduct {
        EtaProduct::from_gp(list).unwrap()
    }

    #[test]
    fn ramanujan_identity_lowers_to_the_normalized_combo() {
        let text = "let P = eta(1)^2/eta(3)^2;\nlet Q = eta(2)^2/eta(6)^2;\nP*Q + 9/(P*Q) - (Q/P)^3 - (P/Q)^3";
        let Identity::Linear(sum) = parse_identity(text).unwrap() else { panic!() };
        let combo = normalize_identity(&sum).unwrap().combo;
        assert_eq!(combo.to_string(), "1 + 9*[6,4,3,4,2,-4,1,-4] - [6,-4,3,8,2,4,1,-8] - [6,8,3,-4,2,-8,1,4]");
    }

    #[test]
    fn brackets_and_constants() {
        assert_eq!(parse_product("[5,6,1,-6]").unwrap(), gp(&[5, 6, 1, -6]));
        assert_eq!(parse_combo("1").unwrap(), RationalCombo::constant_only(int(1)));
        assert_eq!(parse_combo("3/4*[2,1] - 1/4*[2,1]").unwrap().to_string(), "1/2*[2,1]");
        assert_eq!(parse_combo("(1 + eta(1))^2").unwrap().to_string(), "1 + 2*[1,1] + [1,2]");
        assert_eq!(parse_combo("[]").unwrap(), RationalCombo::constant_only(int(1)));
    }

    #[test]
    fn up_identities() {
        let id = parse_identity("U(5) 2*[2,1,25,1,1,-1,50,-1] = 2*[5,4,2,2,10,-2,1,-4]").unwrap();
        assert_eq!(id.to_string(), "U(5) [50,-1,25,1,2,1,1,-1] = [10,-2,5,4,2,2,1,-4]");
        assert!(matches!(parse_identity("U(5) [2,1] + 1 = 0"), Err(InputError::Shape(_))));
    }

    #[test]
    fn lowering_errors() {
        let e = parse_combo("1/(eta(1) + eta(2))").unwrap_err();
        assert!(e.to_string().contains("division by a sum"), "{e}");
        assert!(matches!(parse_combo("eta(1)^(1/2)"), Err(InputError::Lower(_))));
        assert!(matches!(parse_combo("(1 + eta(1))^-1"), Err(InputError::Lower(_))));
        assert!(matches!(parse_combo("1/(eta(1) - eta(1))"), Err(InputError::Lower(_))));
        assert!(matches!(parse_combo("P"), Err(InputError::Lower(_))));
        assert!(matches!(parse_combo("[1,2,3]"), Err(InputError::Lower(_))));
        assert!(matches!(parse_identity("let P = 1;"), Err(InputError::Empty)));
    }
}
