//! Canonical polynomial text grammar.
//!
//! Integer/rational coefficients, variables from the order, operators
//! `+ - * ^` and parentheses, e.g. `x1^2 + x2^2 - 1`. Printing is
//! canonical (descending lexicographic term order, explicit `*`), and
//! `parse(print(p)) == p`.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Signed, Zero};

use super::{Polynomial, Rational, VarOrder};
use crate::error::CadError;
use crate::Result;

/// Format a rational as `p/q`, omitting `/1` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p` or `p/q` (optionally signed) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num_s)
        .map_err(|_| CadError::Parse(format!("invalid integer `{num_s}`")))?;
    let den = BigInt::from_str(den_s)
        .map_err(|_| CadError::Parse(format!("invalid integer `{den_s}`")))?;
    if den.is_zero() {
        return Err(CadError::Parse("zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

fn write_term(
    out: &mut String,
    exps: &[u32],
    coeff: &Rational,
    names: Option<&VarOrder>,
    first: bool,
) {
    let c = if coeff.is_negative() {
        out.push_str(if first { "-" } else { " - " });
        -coeff.clone()
    } else {
        if !first {
            out.push_str(" + ");
        }
        coeff.clone()
    };
    let mut factors: Vec<String> = Vec::new();
    if !c.is_one() || exps.iter().all(|&e| e == 0) {
        factors.push(format_rational(&c));
    }
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = match names {
            Some(order) => order.name(i).to_string(),
            None => generic_var_name(i, exps.len()),
        };
        if e == 1 {
            factors.push(name);
        } else {
            factors.push(format!("{name}^{e}"));
        }
    }
    out.push_str(&factors.join("*"));
}

fn generic_var_name(i: usize, nvars: usize) -> String {
    if nvars == 1 {
        "x".to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn format_with(p: &Polynomial, names: Option<&VarOrder>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    // Descending lexicographic term order.
    for (i, (e, c)) in p.terms.iter().rev().enumerate() {
        write_term(&mut out, e, c, names, i == 0);
    }
    out
}

/// Canonical text of `p` under the given variable order.
pub fn format_poly(p: &Polynomial, order: &VarOrder) -> String {
    assert_eq!(p.nvars(), order.len(), "variable count mismatch");
    format_with(p, Some(order))
}

pub(super) fn write_generic(p: &Polynomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(&format_with(p, None))
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    order: &'a VarOrder,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> CadError {
        CadError::Parse(format!("{msg} at position {}", self.pos))
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        BigInt::from_str(&s).map_err(|_| self.error("invalid number"))
    }

    fn parse_ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_') {
            return Err(self.error("expected an identifier"));
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn parse_base(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.parse_expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_uint()?;
                // A `/` directly after an integer literal is a rational literal.
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.parse_uint()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    Ok(Polynomial::constant(
                        self.order.len(),
                        Rational::new(num, den),
                    ))
                } else {
                    self.pos = save;
                    Ok(Polynomial::constant(self.order.len(), Rational::from(num)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.parse_ident()?;
                match self.order.index_of(&name) {
                    Some(v) => Ok(Polynomial::variable(self.order.len(), v)),
                    None => Err(CadError::UnknownVariable(format!(
                        "variable `{name}` is not in the variable order"
                    ))),
                }
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }

    fn parse_factor(&mut self) -> Result<Polynomial> {
        let base = self.parse_base()?;
        if self.eat('^') {
            let e = self.parse_uint()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            let mut acc = Polynomial::one(self.order.len());
            for _ in 0..e {
                acc = &acc * &base;
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn parse_term(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.parse_factor()?;
                    acc = &acc * &f;
                }
                // Juxtaposition, e.g. `2x1` or `x1(x2+1)`, is accepted on input.
                Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '(' => {
                    let f = self.parse_factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_expr(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let mut acc = Polynomial::zero(self.order.len());
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            let _ = self.eat('+');
        }
        loop {
            let t = self.parse_term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some('-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => return Ok(acc),
            }
        }
    }
}

/// Parse polynomial text against a variable order.
pub fn parse_poly(input: &str, order: &VarOrder) -> Result<Polynomial> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        order,
    };
    let poly = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}
