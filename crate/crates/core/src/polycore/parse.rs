//! Text form of polynomials: `3/2*z1^2*z3 - z2*z3^2`.
//!
//! ```text
//! expression = ['+'|'-'] term (('+'|'-') term)*
//! term       = factor ('*' factor)*
//! factor     = integer ['/' integer] | 'z' index ['^' integer]
//! ```
//! Whitespace is ignored. Variables are 1-based in text and 0-based in code.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::form::Form;
use super::monomial::Monomial;
use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let before = &self.src[..self.pos.min(self.src.len())];
        let line = 1 + before.iter().filter(|&&b| b == b'\n').count();
        let column = 1 + before.iter().rev().take_while(|&&b| b != b'\n').count();
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn small_integer(&mut self, what: &str) -> Result<u32> {
        let v = self.integer()?;
        u32::try_from(v).map_err(|_| self.error(format!("{what} too large")))
    }
}

/// Parses a homogeneous form. With `nvars = None` the variable count is the
/// largest index used.
pub fn parse_form(text: &str, nvars: Option<usize>) -> Result<Form> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(Vec<(usize, u32)>, Rational)> = Vec::new();
    let mut sign = Rational::one();
    match lx.peek() {
        Some(b'-') => {
            sign = -sign;
            lx.pos += 1;
        }
        Some(b'+') => lx.pos += 1,
        None => return Err(lx.error("empty expression")),
        _ => {}
    }
    loop {
        let mut coeff = sign.clone();
        let mut vars = Vec::new();
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = lx.integer()?;
                    let mut r = Rational::from_integer(n);
                    if lx.peek() == Some(b'/') {
                        lx.pos += 1;
                        let d = lx.integer()?;
                        if d.is_zero() {
                            return Err(lx.error("zero denominator"));
                        }
                        r /= Rational::from_integer(d);
                    }
                    coeff *= r;
                }
                Some(b'z') => {
                    lx.pos += 1;
                    let idx = lx.small_integer("variable index")? as usize;
                    if idx == 0 {
                        return Err(lx.error("variables are numbered from z1"));
                    }
                    let mut e = 1;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        e = lx.small_integer("exponent")?;
                        if e == 0 {
                            return Err(lx.error("exponent must be positive"));
                        }
                    }
                    vars.push((idx - 1, e));
                }
                Some(c) => return Err(lx.error(format!("unexpected character '{}'", c as char))),
                None => return Err(lx.error("unexpected end of expression")),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        terms.push((vars, coeff));
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.pos += 1;
                sign = Rational::one();
            }
            Some(b'-') => {
                lx.pos += 1;
                sign = -Rational::one();
            }
            Some(c) => return Err(lx.error(format!("unexpected character '{}'", c as char))),
        }
    }

    let used = terms
        .iter()
        .flat_map(|(v, _)| v.iter().map(|(k, _)| k + 1))
        .max()
        .unwrap_or(0);
    let nvars = match nvars {
        Some(d) if used > d => {
            return Err(Error::Invariant(format!(
                "variable z{used} exceeds the declared count {d}"
            )))
        }
        Some(d) => d,
        None => used,
    };
    let monos: Vec<(Monomial, Rational)> = terms
        .into_iter()
        .map(|(vars, c)| {
            let mut exps = vec![0u32; nvars];
            for (k, e) in vars {
                exps[k] += e;
            }
            (Monomial::new(exps), c)
        })
        .collect();
    let nonzero: Vec<&(Monomial, Rational)> = monos.iter().filter(|(_, c)| !c.is_zero()).collect();
    let degree = nonzero.first().map_or(0, |(m, _)| m.degree());
    if nonzero.iter().any(|(m, _)| m.degree() != degree) {
        return Err(Error::Invariant("form is not homogeneous".into()));
    }
    let mut f = Form::zero(nvars, degree);
    for (m, c) in monos {
        if m.degree() == degree {
            f.add_term(m, c);
        }
    }
    Ok(f)
}

pub(crate) fn write_form(f: &mut fmt::Formatter<'_>, p: &Form) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let a = c.abs();
        if m.degree() == 0 {
            write!(f, "{}", fmt_rational(&a))?;
        } else if a.is_one() {
            write!(f, "{m}")?;
        } else {
            write!(f, "{}*{m}", fmt_rational(&a))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rational::ratio;

    #[test]
    fn parses_grammar_example() {
        let f = parse_form("3/2*z1^2*z3 - z2*z3^2", None).unwrap();
        assert_eq!(f.nvars(), 3);
        assert_eq!(f.degree(), 3);
        assert_eq!(f.coeff(&Monomial::new(vec![2, 0, 1])), ratio(3, 2));
        assert_eq!(f.to_string(), "3/2*z1^2*z3 - z2*z3^2");
    }

    #[test]
    fn malformed_exponent_reports_position() {
        match parse_form("z1^", None) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_inhomogeneous() {
        assert!(matches!(parse_form("z1 + z2^2", None), Err(Error::Invariant(_))));
    }

    #[test]
    fn constants_and_signs() {
        let f = parse_form("-2", Some(2)).unwrap();
        assert_eq!(f.degree(), 0);
        assert_eq!(f.to_string(), "-2");
        let g = parse_form("z1 - z1", Some(1)).unwrap();
        assert!(g.is_zero());
    }
}
