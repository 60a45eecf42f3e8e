//! Recursive-descent reader for polynomial expressions.
//!
//! ```text
//! expr   := '-'? term (('+' | '-') '-'? term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nonneg-integer)?
//! base   := identifier | integer | integer '/' positive-integer | '(' expr ')'
//! ```
//!
//! Identifiers match `[A-Za-z][A-Za-z0-9_]*` and must name an ambient variable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::polynomial::{Ambient, Polynomial};
use super::PolyError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Token::Int(digits.parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Token::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(PolyError::Parse {
                    position: start,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    ambient: &'a Ambient,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, message: impl Into<String>) -> PolyError {
        PolyError::Parse {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.signed_term()?;
        loop {
            if self.eat(&Token::Plus) {
                acc = &acc + &self.signed_term()?;
            } else if self.eat(&Token::Minus) {
                acc = &acc - &self.signed_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn signed_term(&mut self) -> Result<Polynomial, PolyError> {
        if self.eat(&Token::Minus) {
            Ok(-self.term()?)
        } else {
            self.term()
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        while self.eat(&Token::Star) {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.base()?;
        if !self.eat(&Token::Caret) {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                let e = n
                    .to_u32()
                    .ok_or_else(|| self.error("exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(self.error("expected a non-negative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                let index = self
                    .ambient
                    .index_of(&name)
                    .ok_or(PolyError::UnknownVariable(name))?;
                self.pos += 1;
                Ok(Polynomial::var_at(self.ambient, index))
            }
            Some(Token::Int(n)) => {
                self.pos += 1;
                if self.eat(&Token::Slash) {
                    match self.peek().cloned() {
                        Some(Token::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Ok(Polynomial::constant(self.ambient, BigRational::new(n, d)))
                        }
                        _ => Err(self.error("expected a positive integer denominator")),
                    }
                } else {
                    Ok(Polynomial::constant(self.ambient, BigRational::from_integer(n)))
                }
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(_) => Err(self.error("expected a variable, number or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses `text` into a canonical polynomial over `ambient`.
pub fn parse_polynomial(text: &str, ambient: &Ambient) -> Result<Polynomial, PolyError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.chars().count(),
        ambient,
    };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{integer, Monomial};

    fn amb(names: &[&str]) -> Ambient {
        Ambient::new(names).unwrap()
    }

    #[test]
    fn reads_simple_sum() {
        let a = amb(&["q1", "p1"]);
        let p = parse_polynomial("p1*q1 + 2", &a).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coefficient(&Monomial::from_exponents(vec![1, 1])), integer(1));
        assert_eq!(p.constant_term(), integer(2));
    }

    #[test]
    fn zero_is_empty() {
        let p = parse_polynomial("0", &amb(&["x"])).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn precedence_and_unary_minus() {
        let a = amb(&["x", "y"]);
        let p = parse_polynomial("-x^2 + 2*x*y^2 - (x - y)", &a).unwrap();
        let q = parse_polynomial("2*x*y^2 - x^2 - x + y", &a).unwrap();
        assert_eq!(p, q);
        let r = parse_polynomial("3/2*x - -y", &a).unwrap();
        assert_eq!(r.to_string(), "3/2*x + y");
    }

    #[test]
    fn errors_carry_position() {
        let a = amb(&["x"]);
        match parse_polynomial("x + * x", &a) {
            Err(PolyError::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_polynomial("x + z", &a) {
            Err(PolyError::UnknownVariable(v)) => assert_eq!(v, "z"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_polynomial("1/0", &a).is_err());
        assert!(parse_polynomial("x/2", &a).is_err());
        assert!(parse_polynomial("(x", &a).is_err());
        assert!(parse_polynomial("x^y", &a).is_err());
        assert!(parse_polynomial("x y", &a).is_err());
    }
}
