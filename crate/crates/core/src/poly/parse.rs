//! Text syntax for polynomials with exact rational coefficients.
//!
//! Terms are separated by `+` and `-`. A term is an optional coefficient
//! (`p/q`, integer, or decimal such as `0.25`) joined by `*` to factors
//! `xK^E`, where `K` is a 1-based variable index and the exponent `E >= 1`
//! defaults to 1. Whitespace is insignificant. Example:
//! `3/2*x1^2*x3 - x2 + 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, PolyError, Polynomial};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Integer(BigInt),
    Decimal(Rational),
    Variable(usize),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err(position: usize, message: impl Into<String>) -> PolyError {
    PolyError::Parse { position, message: message.into() }
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Token)>, PolyError> {
        let mut out = Vec::new();
        while let Some(&b) = self.peek() {
            let start = self.pos;
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.pos += 1;
                }
                b'+' => {
                    self.pos += 1;
                    out.push((start, Token::Plus));
                }
                b'-' => {
                    self.pos += 1;
                    out.push((start, Token::Minus));
                }
                b'*' => {
                    self.pos += 1;
                    out.push((start, Token::Star));
                }
                b'^' => {
                    self.pos += 1;
                    out.push((start, Token::Caret));
                }
                b'/' => {
                    self.pos += 1;
                    out.push((start, Token::Slash));
                }
                b'x' => {
                    self.pos += 1;
                    let digits = self.take_digits();
                    if digits.is_empty() {
                        return Err(err(start, "expected variable index after 'x'"));
                    }
                    let k: usize = digits
                        .parse()
                        .map_err(|_| err(start, "variable index too large"))?;
                    if k == 0 {
                        return Err(err(start, "variable indices are 1-based"));
                    }
                    out.push((start, Token::Variable(k)));
                }
                b'0'..=b'9' | b'.' => {
                    let int_part = self.take_digits();
                    if self.peek() == Some(&b'.') {
                        self.pos += 1;
                        let frac_part = self.take_digits();
                        if int_part.is_empty() && frac_part.is_empty() {
                            return Err(err(start, "expected digits around '.'"));
                        }
                        let digits = format!("{int_part}{frac_part}");
                        let numer: BigInt =
                            digits.parse().map_err(|_| err(start, "bad decimal literal"))?;
                        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
                        out.push((start, Token::Decimal(Rational::new(numer, denom))));
                    } else {
                        let numer: BigInt =
                            int_part.parse().map_err(|_| err(start, "bad integer literal"))?;
                        out.push((start, Token::Integer(numer)));
                    }
                }
                other => {
                    return Err(err(start, format!("unexpected character '{}'", other as char)));
                }
            }
        }
        Ok(out)
    }

    fn peek(&self) -> Option<&u8> {
        self.src.get(self.pos)
    }

    fn take_digits(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        String::from_utf8(self.src[start..self.pos].to_vec()).expect("ascii digits")
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    /// coefficient := integer ('/' integer)? | decimal
    fn coefficient(&mut self) -> Result<Rational, PolyError> {
        let at = self.here();
        match self.next() {
            Some((_, Token::Integer(numer))) => {
                if self.peek() == Some(&Token::Slash) {
                    self.next();
                    let at_denom = self.here();
                    match self.next() {
                        Some((_, Token::Integer(denom))) => {
                            if denom.is_zero() {
                                return Err(err(at_denom, "zero denominator"));
                            }
                            Ok(Rational::new(numer, denom))
                        }
                        _ => Err(err(at_denom, "expected integer denominator after '/'")),
                    }
                } else {
                    Ok(Rational::from(numer))
                }
            }
            Some((_, Token::Decimal(q))) => Ok(q),
            _ => Err(err(at, "expected a coefficient")),
        }
    }

    /// factor := xK ('^' integer>=1)?
    fn factor(&mut self) -> Result<(usize, u32), PolyError> {
        let at = self.here();
        match self.next() {
            Some((vp, Token::Variable(k))) => {
                if k > self.n {
                    return Err(err(
                        vp,
                        format!("variable x{k} exceeds the ambient dimension {}", self.n),
                    ));
                }
                let mut exp = 1u32;
                if self.peek() == Some(&Token::Caret) {
                    self.next();
                    let at_exp = self.here();
                    match self.next() {
                        Some((_, Token::Integer(e))) => {
                            let e: u32 = e
                                .try_into()
                                .map_err(|_| err(at_exp, "exponent too large"))?;
                            if e == 0 {
                                return Err(err(at_exp, "exponent must be >= 1"));
                            }
                            exp = e;
                        }
                        _ => return Err(err(at_exp, "expected integer exponent after '^'")),
                    }
                }
                Ok((k - 1, exp))
            }
            _ => Err(err(at, "expected a variable factor like x1 or x2^3")),
        }
    }

    /// term := coefficient ('*' factor)* | factor ('*' factor)*
    fn term(&mut self) -> Result<(Rational, Monomial), PolyError> {
        let mut exponents = vec![0u32; self.n];
        let coeff = match self.peek() {
            Some(Token::Integer(_)) | Some(Token::Decimal(_)) => self.coefficient()?,
            Some(Token::Variable(_)) => {
                let (idx, exp) = self.factor()?;
                exponents[idx] += exp;
                Rational::one()
            }
            _ => return Err(err(self.here(), "expected a term")),
        };
        while self.peek() == Some(&Token::Star) {
            self.next();
            let (idx, exp) = self.factor()?;
            exponents[idx] += exp;
        }
        Ok((coeff, Monomial::new(exponents)))
    }
}

/// Parses an expression into a polynomial in `n >= 2` variables.
pub fn parse_polynomial(text: &str, n: usize) -> Result<Polynomial<Rational>, PolyError> {
    if n < 2 {
        return Err(PolyError::InvalidDimension { n });
    }
    let tokens = Lexer::new(text).tokens()?;
    if tokens.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut parser = Parser { tokens, pos: 0, end: text.len(), n };
    let mut poly = Polynomial::zero(n);

    let mut sign = Rational::one();
    if parser.peek() == Some(&Token::Minus) {
        parser.next();
        sign = -sign;
    } else if parser.peek() == Some(&Token::Plus) {
        parser.next();
    }
    loop {
        let (coeff, mono) = parser.term()?;
        poly.add_term(mono, sign.clone() * coeff);
        match parser.next() {
            None => break,
            Some((_, Token::Plus)) => sign = Rational::one(),
            Some((_, Token::Minus)) => sign = -Rational::one(),
            Some((p, t)) => {
                return Err(err(p, format!("expected '+' or '-', found {t:?}")));
            }
        }
    }
    Ok(poly)
}
