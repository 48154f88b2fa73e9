use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::parse;
use super::ring::{ChowRing, Generator, RewriteRule};
use super::Rational;
use crate::error::{Error, Result};

/// JSON description of a ring:
/// `{generators: [{name, degree}], dimension, rules: [{lhs, rhs}], integration: [{monomial, value}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generators: Vec<GeneratorSpec>,
    pub dimension: u32,
    #[serde(default)]
    pub rules: Vec<RuleSpec>,
    #[serde(default)]
    pub integration: Vec<IntegrationEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleSpec {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrationEntry {
    pub monomial: String,
    pub value: RationalValue,
}

/// A rational in JSON: a plain integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalValue {
    Integer(i64),
    Text(String),
}

impl RationalValue {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RationalValue::Integer(i) => Ok(Rational::from_integer(BigInt::from(*i))),
            RationalValue::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        match q.is_integer().then(|| q.to_integer().to_i64()).flatten() {
            Some(i) => RationalValue::Integer(i),
            None => RationalValue::Text(q.to_string()),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Config(format!("`{s}` is not a rational number"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

impl RingSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ring spec serializes")
    }

    pub fn build(&self) -> Result<Arc<ChowRing>> {
        let gens: Vec<Generator> = self
            .generators
            .iter()
            .map(|g| Generator::new(g.name.clone(), g.degree))
            .collect();
        let mut rules = Vec::new();
        for r in &self.rules {
            rules.push(RewriteRule {
                lhs: parse::monomial(&gens, &r.lhs)?,
                rhs: parse::polynomial(&gens, &r.rhs)?,
            });
        }
        let mut table = Vec::new();
        for e in &self.integration {
            table.push((parse::monomial(&gens, &e.monomial)?, e.value.to_rational()?));
        }
        let name = self.name.clone().unwrap_or_else(|| "custom".to_string());
        ChowRing::new(name, gens, self.dimension, rules, table)
    }

    pub fn from_ring(ring: &ChowRing) -> Self {
        let format_terms = |terms: &[(super::Monomial, Rational)]| {
            if terms.is_empty() {
                return "0".to_string();
            }
            let mut out = String::new();
            for (i, (m, c)) in terms.iter().enumerate() {
                let abs = if c < &Rational::zero() {
                    -c.clone()
                } else {
                    c.clone()
                };
                match (i, c < &Rational::zero()) {
                    (0, true) => out.push('-'),
                    (0, false) => {}
                    (_, true) => out.push_str(" - "),
                    (_, false) => out.push_str(" + "),
                }
                if m.is_unit() {
                    out.push_str(&abs.to_string());
                } else {
                    out.push_str(&format!("{}*{}", abs, ring.format_monomial(m)));
                }
            }
            out
        };
        RingSpec {
            name: Some(ring.name().to_string()),
            generators: ring
                .generators()
                .iter()
                .map(|g| GeneratorSpec {
                    name: g.name.clone(),
                    degree: g.degree,
                })
                .collect(),
            dimension: ring.dimension(),
            rules: ring
                .rules()
                .map(|(lhs, rhs)| RuleSpec {
                    lhs: ring.format_monomial(lhs),
                    rhs: format_terms(rhs),
                })
                .collect(),
            integration: ring
                .integration_table()
                .iter()
                .map(|(m, v)| IntegrationEntry {
                    monomial: ring.format_monomial(m),
                    value: RationalValue::from_rational(v),
                })
                .collect(),
        }
    }
}
