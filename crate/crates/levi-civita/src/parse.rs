//! Expression grammar and evaluator for field arithmetic, so computations
//! can be stated textually. Grammar (EBNF):
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = factor { ("*" | "/") factor } ;
//! factor   = "-" factor | power ;
//! power    = atom [ "^" exponent ] ;
//! atom     = number | "d" | name "(" expr ")" | name | "(" expr ")" ;
//! exponent = rational | "(" rational ")" ;
//! rational = [ "-" ] integer [ "/" integer ] ;
//! ```
//!
//! `d` is the distinguished infinitesimal; `exp`, `sin`, `cos`, `sh` and
//! `val` are the built-in calls; any other name is a variable. Exponents
//! are exact rational literals. Whitespace is insignificant.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, Valuation};
use crate::number::LcNumber;
use crate::series::{elementary, Elementary};

/// Built-in unary functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    /// Standard part.
    Sh,
    /// Valuation, as a number (`+inf` for zero).
    Val,
}

impl Func {
    fn name(&self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sh => "sh",
            Func::Val => "val",
        }
    }
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Literal(f64),
    D,
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Exponent),
    Call(Func, Box<Expr>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("`{}`", c as char)))
        }
    }

    fn err(&mut self, expected: &str) -> Error {
        self.skip_ws();
        Error::Syntax { offset: self.pos, expected: expected.to_string() }
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if self.pos == start {
            return Err(self.err("number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<f64>().map_err(|_| Error::Syntax {
            offset: start,
            expected: "number".to_string(),
        })
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.err("integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| Error::Syntax { offset: start, expected: "integer".to_string() })
    }

    fn rational(&mut self) -> Result<Exponent> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.integer()?;
            if den == 0 {
                return Err(Error::Syntax {
                    offset: self.pos,
                    expected: "nonzero denominator".to_string(),
                });
            }
            Ok(Exponent::new(num, den))
        } else {
            Ok(Exponent::int(num))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start || self.src[start].is_ascii_digit() {
            self.pos = start;
            None
        } else {
            Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Ok(Expr::Literal(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.ident().ok_or_else(|| {
                    let e = self.err("name");
                    e
                })?;
                if name == "d" {
                    return Ok(Expr::D);
                }
                let func = match name.as_str() {
                    "exp" => Some(Func::Exp),
                    "sin" => Some(Func::Sin),
                    "cos" => Some(Func::Cos),
                    "sh" => Some(Func::Sh),
                    "val" => Some(Func::Val),
                    _ => None,
                };
                match func {
                    Some(f) => {
                        self.expect(b'(')?;
                        let arg = self.expr()?;
                        self.expect(b')')?;
                        Ok(Expr::Call(f, Box::new(arg)))
                    }
                    None => Ok(Expr::Var(name)),
                }
            }
            _ => Err(self.err("literal, `d`, name or `(`")),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = if self.peek() == Some(b'(') {
                self.pos += 1;
                let r = self.rational()?;
                self.expect(b')')?;
                r
            } else {
                self.rational()?
            };
            Ok(Expr::Pow(Box::new(base), exp))
        } else {
            Ok(base)
        }
    }

    // Unary minus binds tighter than `^`.
    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            Ok(Expr::Neg(Box::new(self.factor()?)))
        } else {
            self.power()
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }
}

/// Parses an expression; errors carry the byte offset and expected tokens.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("end of input or operator"));
    }
    Ok(e)
}

/// Result of evaluating an expression: a field element, or an infinite
/// standard part / valuation.
#[derive(Clone, Debug, PartialEq)]
pub enum EvalValue {
    Number(LcNumber),
    PosInfinity,
    NegInfinity,
}

impl EvalValue {
    pub fn into_number(self) -> Result<LcNumber> {
        match self {
            EvalValue::Number(x) => Ok(x),
            _ => Err(Error::Domain("value is infinite".into())),
        }
    }
}

impl fmt::Display for EvalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalValue::Number(x) => write!(f, "{x}"),
            EvalValue::PosInfinity => write!(f, "+inf"),
            EvalValue::NegInfinity => write!(f, "-inf"),
        }
    }
}

fn as_number(v: EvalValue) -> Result<LcNumber> {
    match v {
        EvalValue::Number(x) => Ok(x),
        _ => Err(Error::Domain("arithmetic on an infinite value".into())),
    }
}

/// Bottom-up evaluation with the given working horizon for division,
/// roots and elementary calls.
pub fn eval_expr(
    e: &Expr,
    env: &HashMap<String, LcNumber>,
    target: Valuation,
) -> Result<EvalValue> {
    let number = |x: LcNumber| Ok(EvalValue::Number(x));
    match e {
        Expr::Literal(c) => number(LcNumber::from_real(*c)),
        Expr::D => number(LcNumber::d()),
        Expr::Var(name) => match env.get(name) {
            Some(x) => number(x.clone()),
            None => Err(Error::UnboundVariable(name.clone())),
        },
        Expr::Neg(a) => {
            let v = eval_expr(a, env, target)?;
            match v {
                EvalValue::Number(x) => number(-x),
                EvalValue::PosInfinity => Ok(EvalValue::NegInfinity),
                EvalValue::NegInfinity => Ok(EvalValue::PosInfinity),
            }
        }
        Expr::Add(a, b) => {
            let x = as_number(eval_expr(a, env, target)?)?;
            let y = as_number(eval_expr(b, env, target)?)?;
            number(&x + &y)
        }
        Expr::Sub(a, b) => {
            let x = as_number(eval_expr(a, env, target)?)?;
            let y = as_number(eval_expr(b, env, target)?)?;
            number(&x - &y)
        }
        Expr::Mul(a, b) => {
            let x = as_number(eval_expr(a, env, target)?)?;
            let y = as_number(eval_expr(b, env, target)?)?;
            number(&x * &y)
        }
        Expr::Div(a, b) => {
            let x = as_number(eval_expr(a, env, target)?)?;
            let y = as_number(eval_expr(b, env, target)?)?;
            number(&x * &y.inv(target)?)
        }
        Expr::Pow(base, exp) => {
            let x = as_number(eval_expr(base, env, target)?)?;
            if exp.is_integer() {
                number(x.pow_i(exp.numer(), target)?)
            } else {
                // x^(p/q) = (x^p)^(1/q); requires a positive base.
                let p = x.pow_i(exp.numer(), target)?;
                number(p.nth_root(exp.denom() as u32, target)?)
            }
        }
        Expr::Call(f, a) => {
            let x = as_number(eval_expr(a, env, target)?)?;
            match f {
                Func::Exp => number(elementary(Elementary::Exp, &x, target)?),
                Func::Sin => number(elementary(Elementary::Sin, &x, target)?),
                Func::Cos => number(elementary(Elementary::Cos, &x, target)?),
                Func::Sh => {
                    let s = x.std_part();
                    if s == f64::INFINITY {
                        Ok(EvalValue::PosInfinity)
                    } else if s == f64::NEG_INFINITY {
                        Ok(EvalValue::NegInfinity)
                    } else {
                        number(LcNumber::from_real(s))
                    }
                }
                Func::Val => match x.valuation() {
                    Valuation::Finite(q) => number(LcNumber::from_real(q.as_f64())),
                    Valuation::Infinite => Ok(EvalValue::PosInfinity),
                },
            }
        }
    }
}

/// Convenience wrapper erroring when the result is infinite.
pub fn eval_number(
    e: &Expr,
    env: &HashMap<String, LcNumber>,
    target: Valuation,
) -> Result<LcNumber> {
    as_number(eval_expr(e, env, target)?)
}

/// Fast real-arithmetic evaluation with a single variable binding; used
/// for test functions supplied as expressions.
pub fn eval_real(e: &Expr, var: &str, x: f64) -> Result<f64> {
    Ok(match e {
        Expr::Literal(c) => *c,
        Expr::D => return Err(Error::Domain("`d` has no real value".into())),
        Expr::Var(name) if name == var => x,
        Expr::Var(name) => return Err(Error::UnboundVariable(name.clone())),
        Expr::Neg(a) => -eval_real(a, var, x)?,
        Expr::Add(a, b) => eval_real(a, var, x)? + eval_real(b, var, x)?,
        Expr::Sub(a, b) => eval_real(a, var, x)? - eval_real(b, var, x)?,
        Expr::Mul(a, b) => eval_real(a, var, x)? * eval_real(b, var, x)?,
        Expr::Div(a, b) => {
            let num = eval_real(a, var, x)?;
            let den = eval_real(b, var, x)?;
            if den == 0.0 {
                return Err(Error::ZeroDivision);
            }
            num / den
        }
        Expr::Pow(base, exp) => eval_real(base, var, x)?.powf(exp.as_f64()),
        Expr::Call(f, a) => {
            let v = eval_real(a, var, x)?;
            match f {
                Func::Exp => v.exp(),
                Func::Sin => v.sin(),
                Func::Cos => v.cos(),
                Func::Sh => v,
                Func::Val => {
                    return Err(Error::Domain("`val` has no real counterpart".into()))
                }
            }
        }
    })
}

/// Lowers an expression to polynomial coefficients in the variable `var`
/// (ascending degree). Division, fractional powers and calls are allowed
/// only on subexpressions free of `var`.
pub fn expr_to_polynomial(e: &Expr, var: &str, target: Valuation) -> Result<Vec<LcNumber>> {
    fn constant(coeffs: &[LcNumber]) -> Option<&LcNumber> {
        if coeffs.len() == 1 {
            Some(&coeffs[0])
        } else {
            None
        }
    }
    fn norm(mut v: Vec<LcNumber>) -> Vec<LcNumber> {
        while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
        v
    }
    let not_poly = || Error::Domain(format!("expression is not a polynomial in `{var}`"));
    Ok(match e {
        Expr::Literal(c) => vec![LcNumber::from_real(*c)],
        Expr::D => vec![LcNumber::d()],
        Expr::Var(name) if name == var => vec![LcNumber::zero(), LcNumber::one()],
        Expr::Var(name) => return Err(Error::UnboundVariable(name.clone())),
        Expr::Neg(a) => expr_to_polynomial(a, var, target)?
            .into_iter()
            .map(|c| -c)
            .collect(),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let sign = if matches!(e, Expr::Sub(_, _)) { -1.0 } else { 1.0 };
            let pa = expr_to_polynomial(a, var, target)?;
            let pb = expr_to_polynomial(b, var, target)?;
            let n = pa.len().max(pb.len());
            let zero = LcNumber::zero();
            norm((0..n)
                .map(|i| {
                    let x = pa.get(i).unwrap_or(&zero);
                    let y = pb.get(i).unwrap_or(&zero);
                    x + &y.scale(sign)
                })
                .collect())
        }
        Expr::Mul(a, b) => {
            let pa = expr_to_polynomial(a, var, target)?;
            let pb = expr_to_polynomial(b, var, target)?;
            let mut out = vec![LcNumber::zero(); pa.len() + pb.len() - 1];
            for (i, x) in pa.iter().enumerate() {
                for (j, y) in pb.iter().enumerate() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
            norm(out)
        }
        Expr::Div(a, b) => {
            let pa = expr_to_polynomial(a, var, target)?;
            let pb = expr_to_polynomial(b, var, target)?;
            let den = constant(&pb).ok_or_else(not_poly)?;
            let inv = den.inv(target)?;
            pa.into_iter().map(|c| &c * &inv).collect()
        }
        Expr::Pow(base, exp) => {
            let pb = expr_to_polynomial(base, var, target)?;
            if let Some(c) = constant(&pb) {
                if exp.is_integer() {
                    vec![c.pow_i(exp.numer(), target)?]
                } else {
                    vec![c.pow_i(exp.numer(), target)?.nth_root(exp.denom() as u32, target)?]
                }
            } else if exp.is_integer() && !exp.is_negative() {
                let mut acc = vec![LcNumber::one()];
                for _ in 0..exp.numer() {
                    let mut out = vec![LcNumber::zero(); acc.len() + pb.len() - 1];
                    for (i, x) in acc.iter().enumerate() {
                        for (j, y) in pb.iter().enumerate() {
                            out[i + j] = &out[i + j] + &(x * y);
                        }
                    }
                    acc = out;
                }
                norm(acc)
            } else {
                return Err(not_poly());
            }
        }
        Expr::Call(f, a) => {
            let pa = expr_to_polynomial(a, var, target)?;
            let c = constant(&pa).ok_or_else(not_poly)?;
            let call = Expr::Call(*f, Box::new(Expr::Var("c".into())));
            let mut bound = HashMap::new();
            bound.insert("c".to_string(), c.clone());
            vec![eval_number(&call, &bound, target)?]
        }
    })
}

impl fmt::Display for Expr {
    /// Parenthesized printing that reparses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn prec(e: &Expr) -> u8 {
            match e {
                Expr::Add(..) | Expr::Sub(..) => 1,
                Expr::Mul(..) | Expr::Div(..) => 2,
                Expr::Neg(..) => 3,
                Expr::Pow(..) => 4,
                _ => 5,
            }
        }
        fn write_child(
            f: &mut fmt::Formatter<'_>,
            child: &Expr,
            min_prec: u8,
        ) -> fmt::Result {
            if prec(child) < min_prec {
                write!(f, "({child})")
            } else {
                write!(f, "{child}")
            }
        }
        match self {
            Expr::Literal(c) => write!(f, "{c}"),
            Expr::D => write!(f, "d"),
            Expr::Var(name) => write!(f, "{name}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_child(f, a, 3)
            }
            Expr::Add(a, b) => {
                write_child(f, a, 1)?;
                write!(f, " + ")?;
                write_child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write_child(f, a, 1)?;
                write!(f, " - ")?;
                write_child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "*")?;
                write_child(f, b, 3)
            }
            Expr::Div(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "/")?;
                write_child(f, b, 3)
            }
            Expr::Pow(base, exp) => {
                write_child(f, base, 5)?;
                if exp.is_integer() && !exp.is_negative() {
                    write!(f, "^{exp}")
                } else {
                    write!(f, "^({exp})")
                }
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
