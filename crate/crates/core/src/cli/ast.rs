use std::fmt;
use std::str::FromStr;

use crate::graded::Rational;

/// Built-in functions of the expression language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Integrate,
    Chern,
    Segre,
    Dual,
    Sym,
    Tensor,
    Invert,
    Contribution,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Integrate,
        Func::Chern,
        Func::Segre,
        Func::Dual,
        Func::Sym,
        Func::Tensor,
        Func::Invert,
        Func::Contribution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Integrate => "integrate",
            Func::Chern => "chern",
            Func::Segre => "segre",
            Func::Dual => "dual",
            Func::Sym => "sym",
            Func::Tensor => "tensor",
            Func::Invert => "invert",
            Func::Contribution => "contribution",
        }
    }

    /// Smallest and largest accepted argument counts.
    pub fn arity(self) -> (usize, Option<usize>) {
        match self {
            Func::Integrate | Func::Dual | Func::Invert => (1, Some(1)),
            Func::Chern | Func::Segre => (1, Some(2)),
            Func::Sym | Func::Tensor => (2, Some(2)),
            Func::Contribution => (1, None),
        }
    }

    pub fn accepts(self, n: usize) -> bool {
        let (lo, hi) = self.arity();
        n >= lo && hi.is_none_or(|hi| n <= hi)
    }
}

impl FromStr for Func {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Func::ALL.into_iter().find(|f| f.name() == s).ok_or(())
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Expression tree. Literals are non-negative; a leading minus is a
/// separate [`Expr::Neg`] node, so printing and re-reading is lossless.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Number(Rational),
    Symbol(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Vec<Expr>),
}

// binding strength, loosest first
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const ATOM: u8 = 4;

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => SUM,
            Expr::Mul(..) => PRODUCT,
            Expr::Neg(_) | Expr::Pow(..) => UNARY,
            Expr::Number(q) if !q.is_integer() => UNARY,
            Expr::Number(_) | Expr::Symbol(_) | Expr::Call(..) => ATOM,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Number(q) => write!(f, "{q}"),
            Expr::Symbol(s) => f.write_str(s),
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, UNARY)
            }
            Expr::Add(a, b) => {
                a.write_at(f, SUM)?;
                f.write_str(" + ")?;
                b.write_at(f, PRODUCT)
            }
            Expr::Sub(a, b) => {
                a.write_at(f, SUM)?;
                f.write_str(" - ")?;
                b.write_at(f, PRODUCT)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, PRODUCT)?;
                f.write_str("*")?;
                b.write_at(f, UNARY)
            }
            Expr::Pow(a, n) => {
                a.write_at(f, ATOM)?;
                write!(f, "^{n}")
            }
            Expr::Call(func, args) => {
                write!(f, "{func}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    a.write_at(f, 0)?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
