//! Recursive-descent reader for the expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := base ('^' integer)?
//! base   := integer ('/' integer)? | symbol | name '(' expr (',' expr)* ')' | '(' expr ')'
//! ```

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::ast::{Expr, Func};
use crate::graded::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: BTreeSet<String>,
    pub found: String,
}

impl ParseError {
    /// The message followed by the input with a caret under the offset.
    pub fn render(&self, input: &str) -> String {
        let column = input[..self.offset.min(input.len())].chars().count();
        format!("{self}\n  {input}\n  {}^", " ".repeat(column))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expected: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        write!(
            f,
            "parse error at byte {}: expected {}, found {}",
            self.offset,
            expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = input[i..].chars().next().expect("in bounds");
        if c.is_whitespace() {
            i += c.len_utf8();
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(input[start..i].parse().expect("digits")), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(input[start..i].to_string()), start));
        } else if "+-*^/(),".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(ParseError {
                offset: i,
                expected: ["expression".to_string()].into(),
                found: format!("`{c}`"),
            });
        }
    }
    out.push((Tok::End, input.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn operand_start() -> BTreeSet<String> {
    ["number", "symbol", "function call", "`(`", "`-`"]
        .into_iter()
        .map(String::from)
        .collect()
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, expected: BTreeSet<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            expected,
            found: self.peek().to_string(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail([format!("`{c}`")].into())
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().clone() {
            Tok::Int(n) => match u32::try_from(&n) {
                Ok(e) => {
                    self.bump();
                    Ok(Expr::Pow(Box::new(base), e))
                }
                Err(_) => self.fail(["exponent below 2^32".to_string()].into()),
            },
            _ => self.fail(["integer exponent".to_string()].into()),
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(num) => {
                self.bump();
                if !self.eat('/') {
                    return Ok(Expr::Number(Rational::from_integer(num)));
                }
                match self.peek().clone() {
                    Tok::Int(den) if !den.is_zero() => {
                        self.bump();
                        Ok(Expr::Number(Rational::new(num, den)))
                    }
                    _ => self.fail(["non-zero denominator".to_string()].into()),
                }
            }
            Tok::Ident(name) => {
                let start = self.offset();
                self.bump();
                if self.peek() != &Tok::Sym('(') {
                    return Ok(Expr::Symbol(name));
                }
                let func: Func = match name.parse() {
                    Ok(f) => f,
                    Err(()) => {
                        return Err(ParseError {
                            offset: start,
                            expected: Func::ALL.iter().map(|f| format!("`{f}`")).collect(),
                            found: format!("`{name}`"),
                        })
                    }
                };
                self.bump();
                let mut args = vec![self.expr()?];
                while self.eat(',') {
                    args.push(self.expr()?);
                }
                if !func.accepts(args.len()) {
                    let (lo, hi) = func.arity();
                    let want = match hi {
                        Some(hi) if hi == lo => format!("{lo} argument(s) to `{func}`"),
                        Some(hi) => format!("{lo} to {hi} arguments to `{func}`"),
                        None => format!("at least {lo} argument(s) to `{func}`"),
                    };
                    return Err(ParseError {
                        offset: start,
                        expected: [want].into(),
                        found: format!("{} arguments", args.len()),
                    });
                }
                if self.eat(')') {
                    return Ok(Expr::Call(func, args));
                }
                self.fail(["`,`".to_string(), "`)`".to_string()].into())
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.fail(operand_start()),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(input)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        let mut expected: BTreeSet<String> = ["`+`", "`-`", "`*`", "`^`"]
            .into_iter()
            .map(String::from)
            .collect();
        expected.insert("end of input".into());
        return p.fail(expected);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::rational;

    fn sym(s: &str) -> Box<Expr> {
        Box::new(Expr::Symbol(s.into()))
    }

    fn num(n: i64) -> Box<Expr> {
        Box::new(Expr::Number(rational(n)))
    }

    #[test]
    fn integrate_call() {
        assert_eq!(
            parse("integrate(s1^4)").unwrap(),
            Expr::Call(Func::Integrate, vec![Expr::Pow(sym("s1"), 4)])
        );
    }

    #[test]
    fn product_of_sums() {
        let e = parse("(1+6*h+21*h^2)*(1-h)").unwrap();
        let left = Expr::Add(
            Box::new(Expr::Add(num(1), Box::new(Expr::Mul(num(6), sym("h"))))),
            Box::new(Expr::Mul(num(21), Box::new(Expr::Pow(sym("h"), 2)))),
        );
        let right = Expr::Sub(num(1), sym("h"));
        assert_eq!(e, Expr::Mul(Box::new(left), Box::new(right)));
    }

    #[test]
    fn sym_call() {
        assert_eq!(
            parse("sym(5, Q)").unwrap(),
            Expr::Call(
                Func::Sym,
                vec![Expr::Number(rational(5)), Expr::Symbol("Q".into())]
            )
        );
    }

    #[test]
    fn dangling_operator() {
        let err = parse("1+").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.expected.contains("number"));
        assert_eq!(err.found, "end of input");
    }

    #[test]
    fn left_associative() {
        assert_eq!(
            parse("a - b - c").unwrap(),
            Expr::Sub(Box::new(Expr::Sub(sym("a"), sym("b"))), sym("c"))
        );
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(
            parse("-h^2").unwrap(),
            Expr::Neg(Box::new(Expr::Pow(sym("h"), 2)))
        );
    }

    #[test]
    fn rational_literals() {
        assert_eq!(
            parse("3/6").unwrap(),
            Expr::Number(Rational::new(1.into(), 2.into()))
        );
        assert_eq!(parse("1/0").unwrap_err().offset, 2);
    }

    #[test]
    fn arity_and_names_checked() {
        assert_eq!(parse("sym(Q)").unwrap_err().offset, 0);
        assert_eq!(parse("1 + frob(Q)").unwrap_err().offset, 4);
        assert!(parse("contribution(Q, Q, Q)").is_ok());
        assert!(parse("chern(Q, 1)").is_ok());
    }

    #[test]
    fn trailing_input() {
        let err = parse("h h").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(parse("h^").is_err());
        assert!(parse("h^2^3").is_err());
        assert!(parse("(h").is_err());
        assert!(parse("h $").is_err());
    }

    #[test]
    fn printing_is_reparseable() {
        for s in [
            "-h^2",
            "(-h)^2",
            "(3/2)^2",
            "a - (b - c)",
            "a*(b*c)",
            "-(a*b)",
            "a*-b",
            "a - -b",
            "integrate(chern(sym(5, Q))*invert(chern(Q)))",
            "(a^2)^3",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn rendered_error_points_at_offset() {
        let err = parse("1 + * 2").unwrap_err();
        let text = err.render("1 + * 2");
        assert!(text.ends_with("\n  1 + * 2\n      ^"), "{text}");
    }
}
