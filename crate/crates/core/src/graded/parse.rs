//! Reader for the plain monomial/class string format used in ring and
//! bundle configuration files: `s1^2*s2`, `1 + 6*h + 21*h^2`, `-3/2*h`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ring::Generator;
use super::Rational;
use crate::error::{Error, Result};

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor { input, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, reason: impl Into<String>) -> Error {
        Error::Syntax {
            input: self.input.to_string(),
            offset: self.pos,
            reason: reason.into(),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.input[start..self.pos].parse().expect("ascii digits"))
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a generator name or a number"));
        }
        Ok(&self.input[start..self.pos])
    }

    fn exponent(&mut self) -> Result<u32> {
        let n = self.digits()?;
        u32::try_from(n).map_err(|_| self.error("exponent too large"))
    }
}

fn factor(
    cur: &mut Cursor<'_>,
    gens: &[Generator],
    exps: &mut [u32],
    coeff: &mut Rational,
) -> Result<()> {
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let num = cur.digits()?;
            let den = if cur.eat('/') {
                cur.digits()?
            } else {
                BigInt::one()
            };
            if den.is_zero() {
                return Err(cur.error("zero denominator"));
            }
            *coeff *= Rational::new(num, den);
        }
        _ => {
            let start = cur.pos;
            let name = cur.ident()?;
            let idx = gens
                .iter()
                .position(|g| g.name == name)
                .ok_or_else(|| Error::Syntax {
                    input: cur.input.to_string(),
                    offset: start,
                    reason: format!("unknown generator `{name}`"),
                })?;
            let e = if cur.eat('^') { cur.exponent()? } else { 1 };
            exps[idx] += e;
        }
    }
    Ok(())
}

fn term(cur: &mut Cursor<'_>, gens: &[Generator]) -> Result<(Vec<u32>, Rational)> {
    let mut exps = vec![0; gens.len()];
    let mut coeff = Rational::one();
    factor(cur, gens, &mut exps, &mut coeff)?;
    while cur.eat('*') {
        factor(cur, gens, &mut exps, &mut coeff)?;
    }
    Ok((exps, coeff))
}

pub(crate) fn polynomial(gens: &[Generator], input: &str) -> Result<Vec<(Vec<u32>, Rational)>> {
    let mut cur = Cursor::new(input);
    let mut out = Vec::new();
    let mut negative = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        let (exps, c) = term(&mut cur, gens)?;
        out.push((exps, if negative { -c } else { c }));
        if cur.eat('+') {
            negative = false;
        } else if cur.eat('-') {
            negative = true;
        } else {
            break;
        }
    }
    if cur.peek().is_some() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(out)
}

pub(crate) fn monomial(gens: &[Generator], input: &str) -> Result<Vec<u32>> {
    let terms = polynomial(gens, input)?;
    match terms.as_slice() {
        [(exps, c)] if c.is_one() => Ok(exps.clone()),
        _ => Err(Error::Syntax {
            input: input.to_string(),
            offset: 0,
            reason: "expected a single monomial with coefficient 1".into(),
        }),
    }
}
