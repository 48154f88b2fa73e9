use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Normal, Stratum, VanishingConfiguration};
use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::graded::{ChowRing, RingSpec};
use crate::varieties::preset;

/// JSON form of a [`VanishingConfiguration`].
///
/// ```json
/// {"ambient_dimension": 4,
///  "strata": [{"labels": [0], "ring": "Grass(4,2)",
///              "bundle": {"rank": 4, "chern": "1 + 10*s1 + ..."},
///              "normals": [{"rank": 2, "chern": "1 + s1 + s2", "codim": 2}]}]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigurationSpec {
    pub ambient_dimension: u32,
    pub strata: Vec<StratumSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumSpec {
    pub labels: Vec<usize>,
    #[serde(default = "one")]
    pub multiplicity: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub ring: RingRef,
    pub bundle: BundleSpec,
    pub normals: Vec<NormalSpec>,
}

fn one() -> u64 {
    1
}

/// A preset name such as `"Grass(4,2)"`, or a ring written out in full.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Preset(String),
    Explicit(RingSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleSpec {
    pub rank: u32,
    pub chern: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalSpec {
    pub rank: u32,
    pub chern: String,
    pub codim: u32,
}

impl BundleSpec {
    pub fn build(&self, ring: &Arc<ChowRing>) -> Result<Bundle> {
        Bundle::new(self.rank, ring.parse_class(&self.chern)?)
    }

    pub fn from_bundle(bundle: &Bundle) -> Self {
        BundleSpec {
            rank: bundle.rank(),
            chern: bundle.chern().to_string(),
        }
    }
}

impl ConfigurationSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    pub fn build(&self) -> Result<VanishingConfiguration> {
        let mut presets: HashMap<String, Arc<ChowRing>> = HashMap::new();
        let mut strata = Vec::with_capacity(self.strata.len());
        for s in &self.strata {
            let ring = match &s.ring {
                RingRef::Preset(name) => match presets.get(name) {
                    Some(r) => r.clone(),
                    None => {
                        let r = preset(name)?.ring;
                        presets.insert(name.clone(), r.clone());
                        r
                    }
                },
                RingRef::Explicit(spec) => spec.build()?,
            };
            let bundle = s.bundle.build(&ring)?;
            let normals = s
                .normals
                .iter()
                .map(|n| Normal::new(Bundle::new(n.rank, ring.parse_class(&n.chern)?)?, n.codim))
                .collect::<Result<Vec<_>>>()?;
            let mut stratum = Stratum::new(s.labels.clone(), bundle, normals, s.multiplicity)?;
            if let Some(d) = &s.description {
                stratum = stratum.with_description(d.clone());
            }
            strata.push(stratum);
        }
        VanishingConfiguration::new(self.ambient_dimension, strata)
    }

    /// Writes a configuration back out; rings are embedded in full.
    pub fn from_configuration(config: &VanishingConfiguration) -> Self {
        ConfigurationSpec {
            ambient_dimension: config.ambient_dimension(),
            strata: config
                .strata()
                .iter()
                .map(|s| StratumSpec {
                    labels: s.labels().to_vec(),
                    multiplicity: s.multiplicity(),
                    description: Some(s.description().to_string()),
                    ring: RingRef::Explicit(RingSpec::from_ring(s.ring())),
                    bundle: BundleSpec::from_bundle(s.restricted_bundle()),
                    normals: s
                        .normals()
                        .iter()
                        .map(|n| NormalSpec {
                            rank: n.bundle.rank(),
                            chern: n.bundle.chern().to_string(),
                            codim: n.codim,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}
