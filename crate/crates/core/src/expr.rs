//! A small formula language for transcribing closed forms as data.
//!
//! ```text
//! sum    := ['-'] tensor (('+' | '-') tensor)*
//! tensor := term ('@' term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ['^' ['-'] int]
//! atom   := number | ident | ident '(' sum ')' | '(' sum ')'
//! ```
//!
//! Identifiers are resolved first against caller bindings, then against the
//! built-in scalars (`z theta s eta omega alpha beta delta i sqrt2`), then
//! by the evaluation context (generators, letters). `f(x)` applies one of
//! the elementary functions; `a @ b` is a tensor product of factors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalars::{Elementary, ExactScalar, Var};
use crate::Series;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Elementary, Box<Expr>),
    Tensor(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| Error::Parse(s.clone()))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Tok::Ident(chars[start..k].iter().collect()));
        } else if "+-*/^()@".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{}` in `{}`", c, src)));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some(Tok::Op(x)) if *x == c)
    }

    fn expect_op(&mut self, c: char) -> Result<()> {
        if self.peek_op(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{}` at token {}", c, self.pos)))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = if self.peek_op('-') {
            self.pos += 1;
            Expr::Neg(Box::new(self.tensor()?))
        } else {
            self.tensor()?
        };
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                lhs = Expr::Add(Box::new(lhs), Box::new(self.tensor()?));
            } else if self.peek_op('-') {
                self.pos += 1;
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.tensor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn tensor(&mut self) -> Result<Expr> {
        let first = self.term()?;
        if !self.peek_op('@') {
            return Ok(first);
        }
        let mut factors = vec![first];
        while self.peek_op('@') {
            self.pos += 1;
            factors.push(self.term()?);
        }
        Ok(Expr::Tensor(factors))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.peek_op('*') {
                self.pos += 1;
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.peek_op('/') {
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.peek_op('^') {
            self.pos += 1;
            let neg = if self.peek_op('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let k = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => {
                    let k: i32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    k
                }
                _ => return Err(Error::Parse("expected integer exponent".into())),
            };
            return Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek_op('(') {
                    let f = Elementary::from_name(&name)
                        .ok_or_else(|| Error::Parse(format!("unknown function `{}`", name)))?;
                    self.pos += 1;
                    let arg = self.sum()?;
                    self.expect_op(')')?;
                    Ok(Expr::Call(f, Box::new(arg)))
                } else {
                    Ok(Expr::Ident(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect_op(')')?;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {:?}", other))),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{}`", src)));
    }
    Ok(e)
}

/// The built-in scalar symbols.
pub fn builtin_scalar(name: &str) -> Option<Series> {
    Some(match name {
        "eta" => Series::eta(),
        "omega" => Series::omega(),
        "i" => Series::constant(ExactScalar::i()),
        "sqrt2" => Series::constant(ExactScalar::sqrt2()),
        _ => Series::var(Var::from_name(name)?),
    })
}

/// The algebra a formula is evaluated in.
pub trait Context {
    type Value: Clone;

    fn scalar(&self, s: Series) -> Self::Value;

    /// Resolve a non-scalar identifier.
    fn symbol(&self, name: &str) -> Result<Self::Value>;

    /// The value as a pure scalar, if it is one.
    fn as_scalar(&self, v: &Self::Value) -> Option<Series>;

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;

    fn neg(&self, a: &Self::Value) -> Self::Value;

    fn mul(&self, a: &Self::Value, b: &Self::Value, order: i32) -> Result<Self::Value>;

    fn apply(&self, f: Elementary, a: &Self::Value, order: i32) -> Result<Self::Value>;

    /// `1/a` for `a` with an invertible scalar constant part.
    fn reciprocal(&self, a: &Self::Value, order: i32) -> Result<Self::Value>;

    fn tensor(&self, _factors: &[Self::Value], _order: i32) -> Result<Self::Value> {
        Err(Error::Parse("tensor products are not available here".into()))
    }

    /// Truncation order of the value; `None` if exact.
    fn order_of(&self, v: &Self::Value) -> Option<i32>;

    fn truncate(&self, v: &Self::Value, order: i32) -> Self::Value;
}

/// Evaluate with every intermediate truncated at `order`.
pub fn eval_at<X: Context>(
    e: &Expr,
    ctx: &X,
    bindings: &HashMap<String, Expr>,
    order: i32,
) -> Result<X::Value> {
    let rec = |e: &Expr| eval_at(e, ctx, bindings, order);
    Ok(match e {
        Expr::Num(r) => ctx.scalar(Series::from_rational(r)),
        Expr::Ident(name) => {
            if let Some(b) = bindings.get(name) {
                return rec(b);
            }
            if let Some(s) = builtin_scalar(name) {
                ctx.scalar(s)
            } else {
                ctx.symbol(name)?
            }
        }
        Expr::Neg(a) => ctx.neg(&rec(a)?),
        Expr::Add(a, b) => ctx.add(&rec(a)?, &rec(b)?)?,
        Expr::Sub(a, b) => ctx.add(&rec(a)?, &ctx.neg(&rec(b)?))?,
        Expr::Mul(a, b) => ctx.mul(&rec(a)?, &rec(b)?, order)?,
        Expr::Div(a, b) => {
            let num = rec(a)?;
            let den = rec(b)?;
            let inv = match ctx.as_scalar(&den) {
                Some(s) if s.len() == 1 => ctx.scalar(s.inverse()?),
                Some(s) => ctx.scalar(s.inverse_at(order)?),
                None => ctx.reciprocal(&den, order)?,
            };
            ctx.mul(&num, &inv, order)?
        }
        Expr::Pow(a, k) => {
            let base = rec(a)?;
            let base = if *k < 0 {
                match ctx.as_scalar(&base) {
                    Some(s) if s.len() == 1 => ctx.scalar(s.inverse()?),
                    Some(s) => ctx.scalar(s.inverse_at(order)?),
                    None => ctx.reciprocal(&base, order)?,
                }
            } else {
                base
            };
            let mut acc = ctx.scalar(Series::from_int(1));
            for _ in 0..k.unsigned_abs() {
                acc = ctx.mul(&acc, &base, order)?;
            }
            acc
        }
        Expr::Call(f, a) => ctx.apply(*f, &rec(a)?, order)?,
        Expr::Tensor(fs) => {
            let vals = fs.iter().map(rec).collect::<Result<Vec<_>>>()?;
            ctx.tensor(&vals, order)?
        }
    })
}

/// Evaluate and truncate at `order`, raising the working order until the
/// result is known through weight `order` (divisions by positive-weight
/// monomials consume precision).
pub fn eval<X: Context>(e: &Expr, ctx: &X, bindings: &HashMap<String, Expr>, order: i32) -> Result<X::Value> {
    let mut last = None;
    for extra in 0..=12 {
        // A truncated divisor shows up as a domain error; more precision may fix it.
        let v = match eval_at(e, ctx, bindings, order + extra) {
            Err(Error::Domain(_)) if extra < 12 => continue,
            r => r?,
        };
        match ctx.order_of(&v) {
            None => return Ok(v),
            Some(n) if n >= order => return Ok(ctx.truncate(&v, order)),
            Some(n) => last = Some(n),
        }
    }
    Err(Error::Internal(format!(
        "formula could not be expanded to order {} (reached {:?})",
        order, last
    )))
}

/// Parse and evaluate in one step.
pub fn eval_str<X: Context>(src: &str, ctx: &X, bindings: &HashMap<String, Expr>, order: i32) -> Result<X::Value> {
    eval(&parse(src)?, ctx, bindings, order)
}

/// Bindings from `(name, source)` pairs.
pub fn bindings(pairs: &[(&str, &str)]) -> Result<HashMap<String, Expr>> {
    pairs.iter().map(|(k, v)| Ok((k.to_string(), parse(v)?))).collect()
}

/// Pure scalar formulas.
pub struct ScalarCtx;

impl Context for ScalarCtx {
    type Value = Series;

    fn scalar(&self, s: Series) -> Series {
        s
    }
    fn symbol(&self, name: &str) -> Result<Series> {
        Err(Error::Parse(format!("unknown scalar `{}`", name)))
    }
    fn as_scalar(&self, v: &Series) -> Option<Series> {
        Some(v.clone())
    }
    fn add(&self, a: &Series, b: &Series) -> Result<Series> {
        Ok(a.add_ref(b))
    }
    fn neg(&self, a: &Series) -> Series {
        a.neg_ref()
    }
    fn mul(&self, a: &Series, b: &Series, order: i32) -> Result<Series> {
        let p = a.mul_ref(b);
        Ok(if p.is_exact() && a.is_exact() && b.is_exact() { p } else { p.truncate(order) })
    }
    fn apply(&self, f: Elementary, a: &Series, order: i32) -> Result<Series> {
        a.compose_at(f, order)
    }
    fn reciprocal(&self, a: &Series, order: i32) -> Result<Series> {
        a.inverse_at(order)
    }
    fn order_of(&self, v: &Series) -> Option<i32> {
        v.order()
    }
    fn truncate(&self, v: &Series, order: i32) -> Series {
        v.truncate(order)
    }
}

/// Evaluate a scalar formula at `order`.
pub fn scalar(src: &str, order: i32) -> Result<Series> {
    eval_str(src, &ScalarCtx, &HashMap::new(), order)
}

/// Evaluate an exact scalar formula (no elementary functions or series inverses).
pub fn exact_scalar(src: &str) -> Series {
    let v = scalar(src, 64).unwrap_or_else(|e| panic!("bad exact scalar `{}`: {}", src, e));
    assert!(v.is_exact(), "`{}` is not exact", src);
    v
}

/// The rational `n/d`, a convenience for building coefficient tables.
pub fn q(n: i64, d: i64) -> Series {
    Series::from_rational(&BigRational::new(n.into(), d.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_evaluates_scalars() {
        assert_eq!(scalar("(z + eta) * 1", 4).unwrap().to_string(), "z + s^2");
        assert_eq!(scalar("s*s", 4).unwrap(), Series::eta());
        assert_eq!(scalar("z*eta*z*eta", 8).unwrap().to_string(), "z^2*s^4");
    }

    #[test]
    fn division_by_monomial_raises_working_order() {
        let t = scalar("tan(z*eta)/eta", 7).unwrap();
        assert_eq!(t.to_string(), "z + 1/3*z^3*s^4 + O(8)");
    }

    #[test]
    fn exact_constants() {
        assert_eq!(exact_scalar("1/sqrt2").to_string(), "1/2*sqrt2");
        assert_eq!(exact_scalar("-i*z/2").to_string(), "-1/2*i*z");
        assert_eq!(exact_scalar("s^-1/(2*sqrt2)").to_string(), "1/4*sqrt2*s^-1");
    }

    #[test]
    fn bindings_substitute() {
        let b = bindings(&[("eps", "-1")]).unwrap();
        let v = eval_str("eps*z", &ScalarCtx, &b, 4).unwrap();
        assert_eq!(v.to_string(), "-z");
    }

    #[test]
    fn parse_errors() {
        assert!(parse("z +").is_err());
        assert!(parse("foo(z)").is_err());
        assert!(scalar("q", 2).is_err());
    }
}
