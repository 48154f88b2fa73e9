use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::ring::ChowRing;
use super::{Rational, Terms};
use crate::error::{Error, Result};

/// An element of a [`ChowRing`], kept in normal form.
#[derive(Debug, Clone)]
pub struct GradedClass {
    ring: Arc<ChowRing>,
    terms: Terms,
}

pub(crate) fn same_ring(a: &Arc<ChowRing>, b: &Arc<ChowRing>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::RingMismatch {
            left: a.name().to_string(),
            right: b.name().to_string(),
        })
    }
}

impl GradedClass {
    /// Reduces arbitrary terms into normal form.
    pub(crate) fn from_terms(ring: &Arc<ChowRing>, terms: Terms) -> Self {
        GradedClass {
            ring: ring.clone(),
            terms: ring.reduce(terms),
        }
    }

    pub(crate) fn from_normal_terms(ring: &Arc<ChowRing>, mut terms: Terms) -> Self {
        terms.retain(|_, c| !c.is_zero());
        GradedClass {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn zero(ring: &Arc<ChowRing>) -> Self {
        GradedClass {
            ring: ring.clone(),
            terms: Terms::new(),
        }
    }

    pub fn one(ring: &Arc<ChowRing>) -> Self {
        GradedClass::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<ChowRing>, c: Rational) -> Self {
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(ring.unit_monomial(), c);
        }
        GradedClass {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn generator(ring: &Arc<ChowRing>, name: &str) -> Result<Self> {
        let idx = ring
            .generator_index(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        Ok(GradedClass::monomial(
            ring,
            ring.generator_monomial(idx),
            Rational::one(),
        ))
    }

    pub fn monomial(ring: &Arc<ChowRing>, m: Monomial, c: Rational) -> Self {
        let mut terms = Terms::new();
        terms.insert(m, c);
        GradedClass::from_terms(ring, terms)
    }

    /// Builds a class from `(exponents, coefficient)` pairs and reduces it.
    pub fn from_exponents(
        ring: &Arc<ChowRing>,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut t = Terms::new();
        for (exps, c) in terms {
            let m = ring.monomial(&exps)?;
            *t.entry(m).or_insert_with(Rational::zero) += c;
        }
        Ok(GradedClass::from_terms(ring, t))
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    /// Terms in ascending monomial order (so ascending degree).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&self.ring.unit_monomial())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest degree carrying a nonzero term.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Homogeneous part of the given degree.
    pub fn component(&self, degree: u32) -> GradedClass {
        self.filter_degree(|d| d == degree)
    }

    /// Drops every term of degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> GradedClass {
        self.filter_degree(|d| d <= max_degree)
    }

    fn filter_degree(&self, keep: impl Fn(u32) -> bool) -> GradedClass {
        GradedClass {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m.degree()))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &GradedClass) -> Result<GradedClass> {
        same_ring(&self.ring, &other.ring)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(Rational::zero) += c;
        }
        Ok(GradedClass::from_normal_terms(&self.ring, terms))
    }

    pub fn sub(&self, other: &GradedClass) -> Result<GradedClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedClass {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> GradedClass {
        GradedClass::from_normal_terms(
            &self.ring,
            self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        )
    }

    /// Cup product, reduced to normal form and truncated at the dimension.
    pub fn mul(&self, other: &GradedClass) -> Result<GradedClass> {
        same_ring(&self.ring, &other.ring)?;
        let dim = self.ring.dimension();
        let mut terms = Terms::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > dim {
                    continue;
                }
                *terms.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Ok(GradedClass::from_terms(&self.ring, terms))
    }

    pub fn pow(&self, exp: u32) -> GradedClass {
        let mut acc = GradedClass::one(&self.ring);
        for _ in 0..exp {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Inverse of a class with constant term 1, by the finite geometric
    /// series `Σ (1 - a)^j` (nilpotent because the ring is truncated).
    pub fn invert_unit(&self) -> Result<GradedClass> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::NotAUnit(c0.to_string()));
        }
        let one = GradedClass::one(&self.ring);
        let nil = one.sub(self)?;
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..self.ring.dimension() {
            power = power.mul(&nil)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// Degree map: sums the top-degree terms against the integration table.
    /// Classes without a top-degree part integrate to zero.
    pub fn integrate(&self) -> Result<Rational> {
        let dim = self.ring.dimension();
        let table = self.ring.integration_table();
        let mut total = Rational::zero();
        for (m, c) in self.terms.iter().filter(|(m, _)| m.degree() == dim) {
            let value = table
                .get(m)
                .ok_or_else(|| Error::UnknownTopMonomial(self.ring.format_monomial(m)))?;
            total += c * value;
        }
        Ok(total)
    }
}

impl PartialEq for GradedClass {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring).is_ok() && self.terms == other.terms
    }
}

impl Eq for GradedClass {}

impl fmt::Display for GradedClass {
    /// Degree-ascending, with explicit `*` and `^`, e.g. `6 - 20*h + 20*h^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_unit() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                f.write_str(&self.ring.format_monomial(m))?;
            } else {
                write!(f, "{}*{}", abs, self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}
