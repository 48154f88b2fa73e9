//! Preset Chow rings: projective spaces and Grassmannians, plus the Pieri
//! oracle used to fill their integration tables.

mod grassmannian;
mod projective;
mod schubert;

use std::sync::Arc;

pub use grassmannian::{grassmannian, Grassmannian};
pub use projective::{projective_space, ProjectiveSpace};
pub use schubert::{pieri_expand, schubert_integral_oracle, Partition};

use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::graded::ChowRing;

/// A preset ring together with its named tautological bundles.
#[derive(Debug, Clone)]
pub struct Preset {
    pub ring: Arc<ChowRing>,
    pub bundles: Vec<(String, Bundle)>,
}

/// Resolves preset names: `point`, `P<n>` or `P(<n>)`, `G(<m>,<k>)` or `Grass(<m>,<k>)`.
///
/// Projective spaces bind `O1` (hyperplane bundle) and `T`; Grassmannians
/// bind `Q`, `K` and `T`.
pub fn preset(name: &str) -> Result<Preset> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let unknown = || Error::UnknownSymbol(format!("preset `{name}`"));
    if compact.eq_ignore_ascii_case("point") {
        return Ok(Preset {
            ring: ChowRing::point(),
            bundles: Vec::new(),
        });
    }
    if let Some(n) = compact
        .strip_prefix('P')
        .or_else(|| compact.strip_prefix("P^"))
    {
        let n = n.trim_start_matches('^');
        let n = n
            .strip_prefix('(')
            .and_then(|n| n.strip_suffix(')'))
            .unwrap_or(n);
        let n: u32 = n.parse().map_err(|_| unknown())?;
        let p = ProjectiveSpace::new(n);
        return Ok(Preset {
            ring: p.ring().clone(),
            bundles: vec![
                ("O1".into(), p.line_bundle(1)),
                ("T".into(), p.tangent_bundle()?),
            ],
        });
    }
    let args = compact
        .strip_prefix("Grass(")
        .or_else(|| compact.strip_prefix("G("))
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(unknown)?;
    let (m, k) = args.split_once(',').ok_or_else(unknown)?;
    let m: u32 = m.parse().map_err(|_| unknown())?;
    let k: u32 = k.parse().map_err(|_| unknown())?;
    let g = Grassmannian::new(m, k)?;
    Ok(Preset {
        ring: g.ring().clone(),
        bundles: vec![
            ("Q".into(), g.quotient().clone()),
            ("K".into(), g.kernel().clone()),
            ("T".into(), g.tangent_bundle()?),
        ],
    })
}
