//! Tiny polynomial expression language for the relations of local models,
//! e.g. `x_1^2x_2-x_3x_4` or `xy(x-y)`. Juxtaposition is multiplication and
//! variables are a letter with an optional `_digits` suffix.

use std::collections::HashMap;

use crate::field::Field;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    Const(i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

pub fn parse(s: &str) -> Result<Expr, String> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { chars, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(format!("unexpected {:?} at {} in {s:?}", p.chars[p.pos], p.pos));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr, String> {
        let mut lhs = if self.peek() == Some('-') {
            self.pos += 1;
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' { Expr::Add(Box::new(lhs), Box::new(rhs)) } else { Expr::Sub(Box::new(lhs), Box::new(rhs)) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, String> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, String> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.number()?;
            return Ok(Expr::Pow(Box::new(base), e as u32));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<i64, String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected a number at {start}"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|e| format!("{e}"))
    }

    fn atom(&mut self) -> Result<Expr, String> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(format!("expected ')' at {}", self.pos));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Const(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                let mut name = c.to_string();
                if self.peek() == Some('_') {
                    self.pos += 1;
                    name.push('_');
                    name.push_str(&self.number()?.to_string());
                }
                Ok(Expr::Var(name))
            }
            other => Err(format!("unexpected {other:?} at {}", self.pos)),
        }
    }
}

impl Expr {
    /// Substitutes series for the variables.
    pub fn eval<F: Field>(
        &self,
        f: &F,
        vars: &HashMap<String, TruncatedSeries<F::Elem>>,
        branches: usize,
        truncation: usize,
    ) -> Result<TruncatedSeries<F::Elem>, String> {
        let go = |e: &Expr| e.eval(f, vars, branches, truncation);
        Ok(match self {
            Expr::Var(v) => vars.get(v).cloned().ok_or_else(|| format!("unknown variable {v}"))?,
            Expr::Const(c) => TruncatedSeries::one(f, branches, truncation).scale(f, &f.from_i64(*c)),
            Expr::Neg(a) => TruncatedSeries::zero(f, branches, truncation).sub(f, &go(a)?).map_err(|e| e.to_string())?,
            Expr::Add(a, b) => go(a)?.add(f, &go(b)?).map_err(|e| e.to_string())?,
            Expr::Sub(a, b) => go(a)?.sub(f, &go(b)?).map_err(|e| e.to_string())?,
            Expr::Mul(a, b) => go(a)?.mul(f, &go(b)?).map_err(|e| e.to_string())?,
            Expr::Pow(a, k) => go(a)?.pow(f, *k as usize),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_implicit_products() {
        let e = parse("xy(x-y)").unwrap();
        assert!(matches!(e, Expr::Mul(..)));
        assert!(parse("x_1^2x_3-x_4^2").is_ok());
        assert!(parse("y(x^2-y^3)").is_ok());
        assert!(parse("x_1x_3-").is_err());
        assert!(parse("(x").is_err());
    }
}
