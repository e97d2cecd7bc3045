//! Textual polynomial syntax, e.g. `3/2*x^2 - x + 5`, `(x^2 + x)/2`, `5x/3`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*     juxtaposition multiplies
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::RingElement;
use crate::error::Error;

const MAX_EXPONENT: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            ' ' | '\t' | '\n' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("ascii digits")));
                continue;
            }
            'x' | 'X' => Tok::X,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        };
        out.push(tok);
        i += 1;
    }
    Ok(out)
}

type Poly = Vec<BigRational>;

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn add(a: &Poly, b: &Poly, sign: i32) -> Poly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).unwrap_or(&zero);
                let y = b.get(i).unwrap_or(&zero);
                if sign < 0 {
                    x - y
                } else {
                    x + y
                }
            })
            .collect(),
    )
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly, Error> {
        let mut acc = self.term()?;
        while let Some(t @ (Tok::Plus | Tok::Minus)) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = add(&acc, &rhs, if t == Tok::Plus { 1 } else { -1 });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = mul(&acc, &rhs);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if rhs.len() != 1 {
                        return Err(Error::Parse(
                            "division is only allowed by a nonzero constant".into(),
                        ));
                    }
                    let inv = rhs[0].recip();
                    acc = acc.iter().map(|c| c * &inv).collect();
                }
                Some(Tok::X | Tok::LParen | Tok::Num(_)) => {
                    let rhs = self.unary()?;
                    acc = mul(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, Error> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.iter().map(|c| -c).collect())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, Error> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = match self.next() {
            Some(Tok::Num(n)) => n
                .to_usize()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| Error::Parse(format!("exponent {n} too large")))?,
            _ => return Err(Error::Parse("expected integer exponent after '^'".into())),
        };
        let mut out: Poly = vec![BigRational::from_integer(1.into())];
        for _ in 0..e {
            out = mul(&out, &base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Poly, Error> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(trim(vec![BigRational::from_integer(n)])),
            Some(Tok::X) => Ok(vec![
                BigRational::zero(),
                BigRational::from_integer(1.into()),
            ]),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse("expected ')'".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

impl FromStr for RingElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let toks = lex(s)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut p = Parser { toks, pos: 0 };
        let poly = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
        }
        Ok(RingElement::from_rational_coeffs(&poly))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RingElement {
        s.parse().unwrap()
    }

    #[test]
    fn parses_documented_forms() {
        assert_eq!(
            p("3/2*x^2 - x + 5"),
            RingElement::from_i64s(&[10, -2, 3], 2)
        );
        assert_eq!(p("x/2"), RingElement::from_i64s(&[0, 1], 2));
        assert_eq!(p("(x^2 + x)/2"), RingElement::from_i64s(&[0, 1, 1], 2));
        assert_eq!(p("5x/3"), RingElement::from_i64s(&[0, 5], 3));
        assert_eq!(p("-x"), RingElement::from_i64s(&[0, -1], 1));
        assert_eq!(p("2(x+1)"), RingElement::from_i64s(&[2, 2], 1));
        assert_eq!(p("(x-1)(x+1)"), RingElement::from_i64s(&[-1, 0, 1], 1));
        assert_eq!(p("0"), RingElement::zero());
        assert_eq!(p(" 7 "), RingElement::from_int(7));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "x/0", "x/x", "x^", "(x", "x)", "y", "2^x", "x^99999"] {
            assert!(bad.parse::<RingElement>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "x/2",
            "(x - 1)/2",
            "5*x/3",
            "-x^2/4",
            "3*x^2 - x + 5",
            "0",
            "-12",
        ] {
            let e = p(s);
            assert_eq!(e.to_string(), s);
            assert_eq!(p(&e.to_string()), e);
        }
    }
}
