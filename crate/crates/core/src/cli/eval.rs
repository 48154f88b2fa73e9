use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;

use super::ast::{Expr, Func};
use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::graded::{ChowRing, GradedClass, Rational};
use crate::residual::{contribution, BundleSpec, Normal};
use crate::varieties::preset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Number(Rational),
    Class(GradedClass),
    Bundle(Bundle),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(q) => write!(f, "{q}"),
            Value::Class(c) => write!(f, "{c}"),
            Value::Bundle(b) => write!(f, "{b}"),
        }
    }
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Number(_) => "a number",
            Value::Class(_) => "a class",
            Value::Bundle(_) => "a bundle",
        }
    }
}

/// The active ring and the bundles bound by name.
#[derive(Debug, Clone)]
pub struct Context {
    ring: Arc<ChowRing>,
    bundles: BTreeMap<String, Bundle>,
}

/// Bundle bindings file: `{"bundles": [{"name", "rank", "chern"}]}`.
#[derive(Debug, Clone, Deserialize)]
struct BundleFile {
    bundles: Vec<NamedBundle>,
}

#[derive(Debug, Clone, Deserialize)]
struct NamedBundle {
    name: String,
    #[serde(flatten)]
    spec: BundleSpec,
}

impl Context {
    pub fn new(ring: Arc<ChowRing>) -> Self {
        Context {
            ring,
            bundles: BTreeMap::new(),
        }
    }

    /// A preset ring with its tautological bundles.
    pub fn preset(name: &str) -> Result<Self> {
        let p = preset(name)?;
        Ok(Context {
            ring: p.ring,
            bundles: p.bundles.into_iter().collect(),
        })
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    pub fn bundles(&self) -> &BTreeMap<String, Bundle> {
        &self.bundles
    }

    pub fn bind(&mut self, name: impl Into<String>, bundle: Bundle) -> Result<()> {
        crate::graded::same_ring(&self.ring, bundle.ring())?;
        self.bundles.insert(name.into(), bundle);
        Ok(())
    }

    /// Adds the bundles of a bindings file, replacing same-named ones.
    pub fn bind_json(&mut self, text: &str) -> Result<()> {
        let file: BundleFile =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        for b in file.bundles {
            let bundle = b.spec.build(&self.ring)?;
            self.bind(b.name, bundle)?;
        }
        Ok(())
    }

    fn class(&self, v: Value) -> Result<GradedClass> {
        match v {
            Value::Number(q) => Ok(GradedClass::constant(&self.ring, q)),
            Value::Class(c) => Ok(c),
            Value::Bundle(_) => Err(Error::Type(
                "expected a class or number, found a bundle".into(),
            )),
        }
    }

    pub fn evaluate(&self, expr: &Expr) -> Result<Value> {
        match expr {
            Expr::Number(q) => Ok(Value::Number(q.clone())),
            Expr::Symbol(name) => {
                if let Ok(g) = GradedClass::generator(&self.ring, name) {
                    Ok(Value::Class(g))
                } else if let Some(b) = self.bundles.get(name) {
                    Ok(Value::Bundle(b.clone()))
                } else {
                    Err(Error::UnknownSymbol(name.clone()))
                }
            }
            Expr::Neg(a) => match self.evaluate(a)? {
                Value::Number(q) => Ok(Value::Number(-q)),
                v => Ok(Value::Class(self.class(v)?.neg())),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                let (x, y) = (self.evaluate(a)?, self.evaluate(b)?);
                if let (Value::Number(p), Value::Number(q)) = (&x, &y) {
                    return Ok(Value::Number(match expr {
                        Expr::Add(..) => p + q,
                        Expr::Sub(..) => p - q,
                        _ => p * q,
                    }));
                }
                let (x, y) = (self.class(x)?, self.class(y)?);
                Ok(Value::Class(match expr {
                    Expr::Add(..) => x.add(&y)?,
                    Expr::Sub(..) => x.sub(&y)?,
                    _ => x.mul(&y)?,
                }))
            }
            Expr::Pow(a, n) => match self.evaluate(a)? {
                Value::Number(q) => Ok(Value::Number(num_traits::pow(q, *n as usize))),
                v => Ok(Value::Class(self.class(v)?.pow(*n))),
            },
            Expr::Call(func, args) => self.call(*func, args),
        }
    }

    fn call(&self, func: Func, args: &[Expr]) -> Result<Value> {
        let values = args
            .iter()
            .map(|a| self.evaluate(a))
            .collect::<Result<Vec<_>>>()?;
        match func {
            Func::Integrate => {
                let c = self.class(values[0].clone())?;
                Ok(Value::Number(c.integrate()?))
            }
            Func::Chern | Func::Segre => {
                let b = bundle(func, &values[0])?;
                let total = if func == Func::Chern {
                    b.chern().clone()
                } else {
                    b.segre_total()
                };
                match values.get(1) {
                    None => Ok(Value::Class(total)),
                    Some(v) => Ok(Value::Class(total.component(small_integer(func, v)?))),
                }
            }
            Func::Dual => Ok(Value::Bundle(bundle(func, &values[0])?.dual())),
            Func::Sym => {
                let d = small_integer(func, &values[0])?;
                Ok(Value::Bundle(bundle(func, &values[1])?.sym_power(d)?))
            }
            Func::Tensor => Ok(Value::Bundle(
                bundle(func, &values[0])?.tensor(bundle(func, &values[1])?)?,
            )),
            Func::Invert => match &values[0] {
                Value::Number(q) if q.is_zero() => Err(Error::NotAUnit("0".into())),
                Value::Number(q) => Ok(Value::Number(q.recip())),
                v => Ok(Value::Class(self.class(v.clone())?.invert_unit()?)),
            },
            Func::Contribution => {
                let normals = values
                    .iter()
                    .map(|v| {
                        let b = bundle(func, v)?;
                        Normal::new(b.clone(), b.rank())
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Value::Class(contribution(&normals, self.ring.dimension())?))
            }
        }
    }
}

fn bundle(func: Func, v: &Value) -> Result<&Bundle> {
    match v {
        Value::Bundle(b) => Ok(b),
        other => Err(Error::Type(format!(
            "`{func}` expects a bundle, found {}",
            other.kind()
        ))),
    }
}

fn small_integer(func: Func, v: &Value) -> Result<u32> {
    match v {
        Value::Number(q) if q.is_integer() => q.to_integer().to_u32().ok_or_else(|| {
            Error::Type(format!(
                "`{func}` expects a non-negative integer, found {q}"
            ))
        }),
        other => Err(Error::Type(format!(
            "`{func}` expects a non-negative integer, found {}",
            other.kind()
        ))),
    }
}
