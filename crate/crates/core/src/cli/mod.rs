//! Command-line front end: a small expression language over a preset ring
//! and canned commands for line counts, Euler characteristics and
//! contribution tables.

mod ast;
mod command;
mod eval;
mod parser;

pub use ast::{Expr, Func};
pub use command::run_command;
pub use eval::{Context, Value};
pub use parser::{parse, ParseError};
