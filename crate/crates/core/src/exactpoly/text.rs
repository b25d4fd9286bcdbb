//! Canonical text form of polynomials.
//!
//! Terms are written in descending order under the active monomial order.
//! Inside a monomial, variables run from the lowest to the highest priority,
//! so `w2^3*j222222^2` for a registry that lists `j222222` before `w2`.
//! A coefficient of ±1 is omitted on non-constant terms; other coefficients
//! are written as `c*` or `p/q*`. The zero polynomial prints as `0`.
//!
//! The parser accepts any product of numeric and variable factors per term,
//! in any variable order, so hand-written input need not be canonical.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, PolyError, Polynomial, Rational, VariableRegistry};

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn format_monomial(m: &Monomial, registry: &VariableRegistry) -> String {
    let mut out = String::new();
    for &(v, e) in m.exponents().iter().rev() {
        if !out.is_empty() {
            out.push('*');
        }
        match registry.name(v) {
            Some(name) => out.push_str(name),
            None => {
                let _ = write!(out, "x{v}");
            }
        }
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
    out
}

/// Canonical text of `p` under `order`.
pub fn format_polynomial(p: &Polynomial, order: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.sorted_terms(order).into_iter().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if m.is_one() {
            out.push_str(&format_rational(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&format_rational(&abs));
                out.push('*');
            }
            out.push_str(&format_monomial(m, order.registry()));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            c if c.is_ascii_digit() => {
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                Token::Num(s.parse().expect("digits"))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Token::Ident(chars[start..=i].iter().collect())
            }
            other => {
                return Err(PolyError::Parse {
                    column: start + 1,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start + 1, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    registry: &'a VariableRegistry,
    end_column: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_column)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            column: self.column(),
            message: message.into(),
        })
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn polynomial(&mut self) -> Result<Polynomial, PolyError> {
        if self.tokens.is_empty() {
            return self.error("empty polynomial");
        }
        let mut out = Polynomial::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    true
                }
                None if !first => return Ok(out),
                _ if first => false,
                _ => return self.error("expected `+` or `-`"),
            };
            first = false;
            let (m, c) = self.term()?;
            out.add_term(m, if negative { -c } else { c });
            if self.peek().is_none() {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rational), PolyError> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::one();
        loop {
            match self.next() {
                Some(Token::Num(n)) => {
                    let mut value = Rational::from_integer(n);
                    if self.peek() == Some(&Token::Slash) {
                        self.pos += 1;
                        match self.next() {
                            Some(Token::Num(d)) if !d.is_zero() => value /= Rational::from_integer(d),
                            Some(Token::Num(_)) => {
                                self.pos -= 1;
                                return self.error("zero denominator");
                            }
                            _ => {
                                self.pos -= 1;
                                return self.error("expected denominator");
                            }
                        }
                    }
                    coeff *= value;
                }
                Some(Token::Ident(name)) => {
                    let Some(idx) = self.registry.index_of(&name) else {
                        self.pos -= 1;
                        return Err(PolyError::UnknownVariable(name));
                    };
                    let mut e = 1u32;
                    if self.peek() == Some(&Token::Caret) {
                        self.pos += 1;
                        match self.next() {
                            Some(Token::Num(k)) => match u32::try_from(k) {
                                Ok(k) => e = k,
                                Err(_) => {
                                    self.pos -= 1;
                                    return self.error("exponent too large");
                                }
                            },
                            _ => {
                                self.pos -= 1;
                                return self.error("expected exponent");
                            }
                        }
                    }
                    mono = mono.mul(&Monomial::from_pairs([(idx, e)]));
                }
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return self.error("expected number or variable");
                }
            }
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }
}

/// Parses a polynomial over `registry`.
pub fn parse_polynomial(text: &str, registry: &VariableRegistry) -> Result<Polynomial, PolyError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        registry,
        end_column: text.chars().count() + 1,
    };
    parser.polynomial()
}

/// Parses one polynomial per non-empty line, skipping `#` comments.
pub fn parse_polynomial_lines(text: &str, registry: &VariableRegistry) -> Result<Vec<Polynomial>, (usize, PolyError)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_polynomial(l, registry).map_err(|e| (i + 1, e)))
        .collect()
}
