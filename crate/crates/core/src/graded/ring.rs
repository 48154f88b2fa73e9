use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::class::GradedClass;
use super::monomial::Monomial;
use super::parse;
use super::{Rational, Terms};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

/// Rewrite rule input: `lhs -> rhs`, monomials given as exponent vectors.
#[derive(Debug, Clone)]
pub struct RewriteRule {
    pub lhs: Vec<u32>,
    pub rhs: Vec<(Vec<u32>, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Rule {
    pub(crate) lhs: Monomial,
    pub(crate) rhs: Vec<(Monomial, Rational)>,
}

/// A graded commutative Q-algebra presented by generators, oriented rewrite
/// rules and a degree map on the top-dimensional part.
///
/// Everything above `dimension` is identically zero. Rings are shared behind
/// an [`Arc`] so that classes can carry a cheap reference to their owner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowRing {
    name: String,
    generators: Vec<Generator>,
    degrees: Vec<u32>,
    dimension: u32,
    rules: Vec<Rule>,
    integration: BTreeMap<Monomial, Rational>,
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ChowRing {
    /// Builds a ring from explicitly oriented rewrite rules.
    ///
    /// Every monomial on a right-hand side must be strictly smaller than the
    /// rule's leading monomial in the graded reverse-lexicographic order,
    /// which makes rewriting terminate. Rules are applied as given; no
    /// completion is attempted (see [`ChowRing::from_relations`]).
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        dimension: u32,
        rules: Vec<RewriteRule>,
        integration: Vec<(Vec<u32>, Rational)>,
    ) -> Result<Arc<ChowRing>> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !valid_identifier(&g.name) {
                return Err(Error::InvalidGenerator(format!(
                    "`{}` is not an identifier",
                    g.name
                )));
            }
            if g.degree == 0 {
                return Err(Error::InvalidGenerator(format!(
                    "`{}` must have positive degree",
                    g.name
                )));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        let degrees: Vec<u32> = generators.iter().map(|g| g.degree).collect();
        let mut ring = ChowRing {
            name: name.into(),
            generators,
            degrees,
            dimension,
            rules: Vec::new(),
            integration: BTreeMap::new(),
        };

        for rule in rules {
            let lhs = ring.monomial_checked(rule.lhs)?;
            if lhs.is_unit() {
                return Err(Error::InvalidRule(
                    "the unit monomial cannot be rewritten".into(),
                ));
            }
            let mut rhs = Terms::new();
            for (exps, c) in rule.rhs {
                let m = ring.monomial_checked(exps)?;
                if m >= lhs {
                    return Err(Error::NonTerminatingRule {
                        lhs: ring.format_monomial(&lhs),
                        offending: ring.format_monomial(&m),
                    });
                }
                *rhs.entry(m).or_insert_with(Rational::zero) += c;
            }
            rhs.retain(|_, c| !c.is_zero());
            ring.rules.push(Rule {
                lhs,
                rhs: rhs.into_iter().collect(),
            });
        }

        for (exps, value) in integration {
            let m = ring.monomial_checked(exps)?;
            if m.degree() != dimension {
                return Err(Error::InvalidTableEntry {
                    monomial: ring.format_monomial(&m),
                    reason: format!("degree {} differs from dimension {}", m.degree(), dimension),
                });
            }
            ring.integration.insert(m, value);
        }
        Ok(Arc::new(ring))
    }

    /// Polynomial ring on the given generators, truncated above `dimension`.
    pub fn free(
        name: impl Into<String>,
        generators: Vec<Generator>,
        dimension: u32,
    ) -> Result<Arc<ChowRing>> {
        ChowRing::new(name, generators, dimension, Vec::new(), Vec::new())
    }

    /// The Chow ring of a point: no generators, dimension 0, `∫1 = 1`.
    pub fn point() -> Arc<ChowRing> {
        ChowRing::new(
            "point",
            Vec::new(),
            0,
            Vec::new(),
            vec![(Vec::new(), Rational::one())],
        )
        .expect("point ring is well formed")
    }

    /// Builds a ring from homogeneous relations, completing them degree by
    /// degree into a reduced rewrite system.
    ///
    /// Because the ring is truncated, the ideal is only needed up to the
    /// dimension, so the completion is plain linear algebra on each graded
    /// piece: the reduced row echelon form of `I_d` (pivot = largest monomial)
    /// yields one rule per pivot not already divisible by a lower-degree rule.
    /// The resulting rule set is confluent.
    pub fn from_relations(
        name: impl Into<String>,
        generators: Vec<Generator>,
        dimension: u32,
        relations: &[GradedClass],
        integration: Vec<(Vec<u32>, Rational)>,
    ) -> Result<Arc<ChowRing>> {
        let scratch = ChowRing::free("scratch", generators.clone(), dimension)?;
        let mut by_degree: Vec<Vec<Terms>> = vec![Vec::new(); dimension as usize + 1];
        for rel in relations {
            if rel.ring().generators != generators {
                return Err(Error::RingMismatch {
                    left: rel.ring().name.clone(),
                    right: "relation generators".into(),
                });
            }
            let degs: BTreeSet<u32> = rel.terms().map(|(m, _)| m.degree()).collect();
            match degs.len() {
                0 => continue,
                1 => {}
                _ => return Err(Error::InhomogeneousRelation(rel.to_string())),
            }
            let d = *degs.iter().next().unwrap();
            if d == 0 {
                return Err(Error::InvalidRule(
                    "relation of degree 0 kills the ring".into(),
                ));
            }
            if d <= dimension {
                // rebuild against the scratch ring's monomials (identical layout)
                by_degree[d as usize]
                    .push(rel.terms().map(|(m, c)| (m.clone(), c.clone())).collect());
            }
        }

        let mut bases: Vec<Vec<Terms>> = vec![Vec::new(); dimension as usize + 1];
        let mut rules: Vec<Rule> = Vec::new();
        for d in 1..=dimension as usize {
            let mut candidates: Vec<Terms> = std::mem::take(&mut by_degree[d]);
            for (j, g) in generators.iter().enumerate() {
                let gd = g.degree as usize;
                if gd > d {
                    continue;
                }
                let x = scratch.generator_monomial(j);
                for row in &bases[d - gd] {
                    candidates.push(row.iter().map(|(m, c)| (m.mul(&x), c.clone())).collect());
                }
            }
            let mut echelon: BTreeMap<Monomial, Terms> = BTreeMap::new();
            for cand in candidates {
                insert_echelon(&mut echelon, cand);
            }
            for (pivot, row) in &echelon {
                if rules.iter().any(|r| r.lhs.divides(pivot)) {
                    continue;
                }
                let rhs = row
                    .iter()
                    .filter(|(m, _)| *m != pivot)
                    .map(|(m, c)| (m.clone(), -c.clone()))
                    .collect();
                rules.push(Rule {
                    lhs: pivot.clone(),
                    rhs,
                });
            }
            bases[d] = echelon.into_values().collect();
        }

        let rules = rules
            .into_iter()
            .map(|r| RewriteRule {
                lhs: r.lhs.exponents().to_vec(),
                rhs: r
                    .rhs
                    .into_iter()
                    .map(|(m, c)| (m.exponents().to_vec(), c))
                    .collect(),
            })
            .collect();
        ChowRing::new(name, generators, dimension, rules, integration)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Rules as `(lhs, rhs)` pairs, rhs given as `(monomial, coefficient)` terms.
    pub fn rules(&self) -> impl Iterator<Item = (&Monomial, &[(Monomial, Rational)])> {
        self.rules.iter().map(|r| (&r.lhs, r.rhs.as_slice()))
    }

    pub fn integration_table(&self) -> &BTreeMap<Monomial, Rational> {
        &self.integration
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial::unit(self.generators.len())
    }

    pub fn monomial(&self, exps: &[u32]) -> Result<Monomial> {
        self.monomial_checked(exps.to_vec())
    }

    fn monomial_checked(&self, exps: Vec<u32>) -> Result<Monomial> {
        if exps.len() != self.generators.len() {
            return Err(Error::InvalidArgument(format!(
                "exponent vector of length {} for a ring with {} generators",
                exps.len(),
                self.generators.len()
            )));
        }
        Ok(Monomial::with_degrees(exps, &self.degrees))
    }

    pub(crate) fn generator_monomial(&self, index: usize) -> Monomial {
        let mut exps = vec![0; self.generators.len()];
        exps[index] = 1;
        Monomial::from_parts(exps, self.degrees[index])
    }

    /// All monomials of the given weighted degree, ascending.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.generators.len()];
        enumerate_degree(&self.degrees, 0, degree, &mut exps, &mut out);
        let mut monos: Vec<Monomial> = out
            .into_iter()
            .map(|e| Monomial::from_parts(e, degree))
            .collect();
        monos.sort();
        monos
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        !self.rules.iter().any(|r| r.lhs.divides(m))
    }

    /// Normal-form monomials of each degree `0..=dimension`.
    pub fn basis(&self) -> Vec<Vec<Monomial>> {
        (0..=self.dimension)
            .map(|d| {
                self.monomials_of_degree(d)
                    .into_iter()
                    .filter(|m| self.is_normal(m))
                    .collect()
            })
            .collect()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn parse_monomial(&self, input: &str) -> Result<Monomial> {
        let exps = parse::monomial(&self.generators, input)?;
        self.monomial_checked(exps)
    }

    /// Parses a class string such as `"2*s1*s2 - s1^3"` and reduces it.
    pub fn parse_class(self: &Arc<Self>, input: &str) -> Result<GradedClass> {
        let raw = parse::polynomial(&self.generators, input)?;
        let mut terms = Terms::new();
        for (exps, c) in raw {
            let m = self.monomial_checked(exps)?;
            *terms.entry(m).or_insert_with(Rational::zero) += c;
        }
        Ok(GradedClass::from_terms(self, terms))
    }

    /// Rewrites to normal form, always reducing the largest reducible
    /// monomial first. Terms above the dimension are dropped.
    pub(crate) fn reduce(&self, terms: Terms) -> Terms {
        let mut pending: Terms = terms
            .into_iter()
            .filter(|(m, c)| m.degree() <= self.dimension && !c.is_zero())
            .collect();
        if self.rules.is_empty() {
            return pending;
        }
        let mut out = Terms::new();
        while let Some((m, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.rules.iter().find(|r| r.lhs.divides(&m)) {
                Some(rule) => {
                    let q = rule.lhs.cofactor(&m);
                    for (rm, rc) in &rule.rhs {
                        let p = rm.mul(&q);
                        let entry = pending.entry(p).or_insert_with(Rational::zero);
                        *entry += &c * rc;
                    }
                }
                None => {
                    out.insert(m, c);
                }
            }
        }
        out
    }

    /// Rewrites to normal form applying rules in an order picked by
    /// `choose`: given the number of applicable (monomial, rule) pairs it
    /// returns the index of the one to apply next.
    ///
    /// For a confluent rule set the result equals [`GradedClass`]'s normal
    /// form regardless of the choices made.
    pub fn normal_form_with(
        self: &Arc<Self>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
        mut choose: impl FnMut(usize) -> usize,
    ) -> GradedClass {
        let mut current: Terms = Terms::new();
        for (m, c) in terms {
            if m.degree() <= self.dimension {
                *current.entry(m).or_insert_with(Rational::zero) += c;
            }
        }
        current.retain(|_, c| !c.is_zero());
        loop {
            let candidates: Vec<(Monomial, usize)> = current
                .keys()
                .flat_map(|m| {
                    self.rules
                        .iter()
                        .enumerate()
                        .filter(move |(_, r)| r.lhs.divides(m))
                        .map(move |(i, _)| (m.clone(), i))
                })
                .collect();
            if candidates.is_empty() {
                break;
            }
            let (m, ri) = candidates[choose(candidates.len()) % candidates.len()].clone();
            let c = current.remove(&m).expect("candidate present");
            let rule = &self.rules[ri];
            let q = rule.lhs.cofactor(&m);
            for (rm, rc) in &rule.rhs {
                let p = rm.mul(&q);
                if p.degree() > self.dimension {
                    continue;
                }
                *current.entry(p).or_insert_with(Rational::zero) += &c * rc;
            }
            current.retain(|_, c| !c.is_zero());
        }
        GradedClass::from_normal_terms(self, current)
    }
}

impl fmt::Display for ChowRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn enumerate_degree(
    degrees: &[u32],
    idx: usize,
    remaining: u32,
    exps: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if idx == degrees.len() {
        if remaining == 0 {
            out.push(exps.clone());
        }
        return;
    }
    let d = degrees[idx];
    let mut e = 0;
    while e * d <= remaining {
        exps[idx] = e;
        enumerate_degree(degrees, idx + 1, remaining - e * d, exps, out);
        e += 1;
    }
    exps[idx] = 0;
}

/// Inserts `v` into a fully reduced row echelon basis keyed by pivot.
fn insert_echelon(echelon: &mut BTreeMap<Monomial, Terms>, mut v: Terms) {
    let pivots: Vec<Monomial> = v
        .keys()
        .filter(|m| echelon.contains_key(*m))
        .cloned()
        .collect();
    for p in pivots {
        let Some(c) = v.get(&p).cloned() else {
            continue;
        };
        if c.is_zero() {
            continue;
        }
        for (m, rc) in &echelon[&p] {
            let e = v.entry(m.clone()).or_insert_with(Rational::zero);
            *e -= &c * rc;
        }
    }
    v.retain(|_, c| !c.is_zero());
    let Some((lead, lc)) = v.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
        return;
    };
    for c in v.values_mut() {
        *c /= &lc;
    }
    for row in echelon.values_mut() {
        if let Some(c) = row.get(&lead).cloned() {
            for (m, vc) in &v {
                let e = row.entry(m.clone()).or_insert_with(Rational::zero);
                *e -= &c * vc;
            }
            row.retain(|_, c| !c.is_zero());
        }
    }
    echelon.insert(lead, v);
}
