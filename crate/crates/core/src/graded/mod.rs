//! Truncated graded rings with exact rational coefficients.

mod class;
mod config;
mod monomial;
mod multinomial;
mod parse;
mod ring;

use std::collections::BTreeMap;

pub use class::GradedClass;
pub use config::{
    parse_rational, GeneratorSpec, IntegrationEntry, RationalValue, RingSpec, RuleSpec,
};
pub use monomial::Monomial;
pub use multinomial::{binomial, multinomial};
pub use ring::{ChowRing, Generator, RewriteRule};

pub(crate) use class::same_ring;

/// Exact coefficient type.
pub type Rational = num_rational::BigRational;

pub(crate) type Terms = BTreeMap<Monomial, Rational>;

/// Integer from a rational that must be integral.
pub fn expect_integer(q: &Rational) -> crate::error::Result<num_bigint::BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(crate::error::Error::NonIntegerResult(q.to_string()))
    }
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
