//! Residual intersection: top Chern numbers computed along the components
//! of a degenerate vanishing locus `V(s) = Z_1 ∪ … ∪ Z_M`.
//!
//! Each non-empty intersection `Z_S = ∩_{i∈S} Z_i` (a locally complete
//! intersection of codimension `Σ d_i`) contributes
//!
//! ```text
//! -(-1)^|S| ∫_{Z_S} c(E|Z_S) · c(S),
//! c(S) = Σ_{l_i ≥ 0} multinomial(Σ (l_i + d_i); l_1 + d_1, …) Π s_{l_i}(N_i|Z_S)
//! ```
//!
//! and `c(S)` is the multi-Segre class of the restricted normal bundles.

mod config;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

pub use config::{BundleSpec, ConfigurationSpec, NormalSpec, RingRef, StratumSpec};

use crate::bundle::{multi_segre, Bundle};
use crate::error::{Error, Result};
use crate::graded::{multinomial, rational, ChowRing, Generator, GradedClass, Rational};

/// Normal bundle of one component, restricted to a stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normal {
    pub bundle: Bundle,
    pub codim: u32,
}

impl Normal {
    pub fn new(bundle: Bundle, codim: u32) -> Result<Self> {
        if bundle.rank() != codim {
            return Err(Error::RankCodimMismatch {
                rank: bundle.rank(),
                codim,
            });
        }
        Ok(Normal { bundle, codim })
    }
}

/// One intersection `Z_{i_1} ∩ … ∩ Z_{i_k}` (or a class of isomorphic ones).
#[derive(Debug, Clone)]
pub struct Stratum {
    labels: Vec<usize>,
    restricted_bundle: Bundle,
    normals: Vec<Normal>,
    multiplicity: u64,
    description: String,
}

impl Stratum {
    pub fn new(
        labels: Vec<usize>,
        restricted_bundle: Bundle,
        normals: Vec<Normal>,
        multiplicity: u64,
    ) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidStratum("label set must be non-empty".into()));
        }
        let distinct: BTreeSet<usize> = labels.iter().copied().collect();
        if distinct.len() != labels.len() {
            return Err(Error::InvalidStratum(format!(
                "repeated labels in {labels:?}"
            )));
        }
        if normals.len() != labels.len() {
            return Err(Error::InvalidStratum(format!(
                "{} labels but {} normal bundles",
                labels.len(),
                normals.len()
            )));
        }
        if multiplicity == 0 {
            return Err(Error::InvalidStratum(
                "multiplicity must be positive".into(),
            ));
        }
        for n in &normals {
            if n.bundle.rank() != n.codim {
                return Err(Error::RankCodimMismatch {
                    rank: n.bundle.rank(),
                    codim: n.codim,
                });
            }
            crate::graded::same_ring(restricted_bundle.ring(), n.bundle.ring())?;
        }
        let description = restricted_bundle.ring().name().to_string();
        Ok(Stratum {
            labels,
            restricted_bundle,
            normals,
            multiplicity,
            description,
        })
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        self.restricted_bundle.ring()
    }

    pub fn restricted_bundle(&self) -> &Bundle {
        &self.restricted_bundle
    }

    pub fn normals(&self) -> &[Normal] {
        &self.normals
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn codimension(&self) -> u32 {
        self.normals.iter().map(|n| n.codim).sum()
    }

    /// `-(-1)^k` for a `k`-fold intersection.
    pub fn sign(&self) -> i32 {
        if self.labels.len() % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// `∫_{Z_S} c(E|Z_S) · c(S)`, without sign or multiplicity.
    pub fn integral(&self) -> Result<Rational> {
        let c = contribution(&self.normals, self.ring().dimension())?;
        self.restricted_bundle.chern().mul(&c)?.integrate()
    }
}

/// The data of a degenerate section: ambient dimension and the strata of
/// its vanishing locus. Empty intersections are simply absent.
#[derive(Debug, Clone)]
pub struct VanishingConfiguration {
    ambient_dimension: u32,
    strata: Vec<Stratum>,
}

impl VanishingConfiguration {
    pub fn new(ambient_dimension: u32, strata: Vec<Stratum>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for s in &strata {
            let mut key = s.labels.clone();
            key.sort_unstable();
            if !seen.insert(key) {
                return Err(Error::InvalidStratum(format!(
                    "label set {:?} appears twice",
                    s.labels
                )));
            }
            let dim = s.ring().dimension();
            if dim + s.codimension() != ambient_dimension {
                return Err(Error::InvalidStratum(format!(
                    "stratum {:?} has dimension {dim} and codimension {}, ambient dimension is {ambient_dimension}",
                    s.labels,
                    s.codimension()
                )));
            }
            if s.restricted_bundle.rank() != ambient_dimension {
                return Err(Error::DimensionMismatch {
                    rank: s.restricted_bundle.rank() as u64,
                    dimension: ambient_dimension as u64,
                });
            }
        }
        Ok(VanishingConfiguration {
            ambient_dimension,
            strata,
        })
    }

    pub fn ambient_dimension(&self) -> u32 {
        self.ambient_dimension
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }
}

/// The contribution class `c(i_1, …, i_k)` of a stratum, truncated at
/// `max_degree`. This is the multi-Segre class of the normals.
pub fn contribution(normals: &[Normal], max_degree: u32) -> Result<GradedClass> {
    for n in normals {
        if n.bundle.rank() != n.codim {
            return Err(Error::RankCodimMismatch {
                rank: n.bundle.rank(),
                codim: n.codim,
            });
        }
    }
    let bundles: Vec<Bundle> = normals.iter().map(|n| n.bundle.clone()).collect();
    multi_segre(&bundles, max_degree)
}

/// `∫_Z c(E|Z) · c(N)^{-1}` for a single locally complete intersection.
pub fn lci_chern_number(stratum: &Stratum) -> Result<Rational> {
    if stratum.labels.len() != 1 {
        return Err(Error::InvalidStratum(format!(
            "expected a single component, got labels {:?}",
            stratum.labels
        )));
    }
    let segre = stratum.normals[0].bundle.segre_total();
    stratum.restricted_bundle.chern().mul(&segre)?.integrate()
}

/// Per-stratum line of a residual evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumTerm {
    pub description: String,
    pub labels: Vec<usize>,
    pub multiplicity: u64,
    pub sign: i32,
    #[serde(serialize_with = "crate::residual::serialize_rational")]
    pub integral: Rational,
    #[serde(serialize_with = "crate::residual::serialize_rational")]
    pub subtotal: Rational,
}

pub(crate) fn serialize_rational<S: serde::Serializer>(
    q: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match q.is_integer().then(|| q.to_integer().to_i64()).flatten() {
        Some(i) => s.serialize_i64(i),
        None => s.serialize_str(&q.to_string()),
    }
}

/// Evaluates every stratum (in parallel) and returns the signed terms in
/// input order.
pub fn residual_terms(config: &VanishingConfiguration) -> Result<Vec<StratumTerm>> {
    config
        .strata
        .par_iter()
        .map(|s| {
            let integral = s.integral()?;
            let subtotal = &integral * rational(s.sign() as i64) * rational(s.multiplicity as i64);
            Ok(StratumTerm {
                description: s.description.clone(),
                labels: s.labels.clone(),
                multiplicity: s.multiplicity,
                sign: s.sign(),
                integral,
                subtotal,
            })
        })
        .collect()
}

/// `∫_X c(E)` from the strata of the vanishing locus.
pub fn residual_chern_number(config: &VanishingConfiguration) -> Result<Rational> {
    Ok(residual_terms(config)?
        .into_iter()
        .fold(Rational::zero(), |acc, t| acc + t.subtotal))
}

/// The contribution of `components` identical components of codimension
/// `codim`, as a polynomial in formal Segre symbols `s1, s2, …` of one
/// bundle (`s_j` has degree `j`), up to total degree `max_total_degree`.
///
/// Computed straight from the multinomial sum, independently of
/// [`multi_segre`].
pub fn contribution_coefficients(
    codim: u32,
    components: u32,
    max_total_degree: u32,
) -> GradedClass {
    let gens: Vec<Generator> = (1..=max_total_degree)
        .map(|j| Generator::new(format!("s{j}"), j))
        .collect();
    let name = format!("segre symbols (codim {codim}, {components} components)");
    let ring = ChowRing::free(name, gens, max_total_degree).expect("formal ring is well formed");

    let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    let mut ls = Vec::new();
    formal_terms(
        codim,
        components as usize,
        max_total_degree,
        max_total_degree,
        &mut ls,
        &mut acc,
    );
    GradedClass::from_exponents(&ring, acc).expect("exponents sized to the ring")
}

fn formal_terms(
    codim: u32,
    components: usize,
    ngens: u32,
    budget: u32,
    ls: &mut Vec<u32>,
    acc: &mut BTreeMap<Vec<u32>, Rational>,
) {
    if ls.len() == components {
        let parts: Vec<u64> = ls.iter().map(|&l| (l + codim) as u64).collect();
        let coeff = multinomial(parts.iter().sum(), &parts).expect("parts sum by construction");
        let mut exps = vec![0u32; ngens as usize];
        for &l in ls.iter().filter(|&&l| l > 0) {
            exps[l as usize - 1] += 1;
        }
        *acc.entry(exps).or_insert_with(Rational::zero) += Rational::from_integer(coeff);
        return;
    }
    for l in 0..=budget {
        ls.push(l);
        formal_terms(codim, components, ngens, budget - l, ls, acc);
        ls.pop();
    }
}
