//! Virtual counts of lines on hypersurfaces and complete intersections.
//!
//! Lines in `P^n` are points of `Grass(n+1,2)`, and a degree-`d` form
//! induces a section of `Sym^d Q` there. Its top Chern number counts the
//! lines on the hypersurface when ranks and dimensions match.
//!
//! The residual route degenerates the hypersurface into `d` hyperplanes.
//! Lines inside `j` of them form a `Grass(n+1-j,2)` with normal bundle
//! `j` copies of `Q`, and there are `binom(d, j)` such strata.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::graded::{binomial, expect_integer, multinomial};
use crate::residual::{residual_terms, Normal, Stratum, StratumTerm, VanishingConfiguration};
use crate::varieties::{grassmannian, Grassmannian};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Residual,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Residual => "residual",
        })
    }
}

/// Result of a count. `strata` is empty for direct integration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub method: Method,
    #[serde(serialize_with = "serialize_bigint")]
    pub total: BigInt,
    pub strata: Vec<StratumTerm>,
}

fn serialize_bigint<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(i) => s.serialize_i64(i),
        None => s.serialize_str(&n.to_string()),
    }
}

fn line_space(n: u32) -> Result<Grassmannian> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("no lines in P{n}")));
    }
    grassmannian(n + 1, 2)
}

fn check_dimension(rank: u64, n: u32) -> Result<()> {
    let dimension = 2 * (n as u64 - 1);
    if rank != dimension {
        return Err(Error::DimensionMismatch { rank, dimension });
    }
    Ok(())
}

/// `∫ c_top(Sym^d Q)` over `Grass(n+1,2)`.
pub fn lines_direct(n: u32, d: u32) -> Result<CountReport> {
    lines_on_complete_intersection_direct(n, &[d])
}

/// `∫ c_top(⊕ Sym^{d_i} Q)` over `Grass(n+1,2)`.
pub fn lines_on_complete_intersection_direct(n: u32, degrees: &[u32]) -> Result<CountReport> {
    if degrees.is_empty() {
        return Err(Error::InvalidArgument("no degrees given".into()));
    }
    let g = line_space(n)?;
    check_dimension(degrees.iter().map(|&d| d as u64 + 1).sum(), n)?;
    let mut e = Bundle::trivial(g.ring(), 0);
    for &d in degrees {
        e = e.whitney_sum(&g.quotient().sym_power(d)?)?;
    }
    Ok(CountReport {
        method: Method::Direct,
        total: expect_integer(&e.top_chern_number()?)?,
        strata: Vec::new(),
    })
}

/// The strata of the degeneration into `d` hyperplanes.
pub fn hyperplane_configuration(n: u32, d: u32) -> Result<VanishingConfiguration> {
    line_space(n)?;
    check_dimension(d as u64 + 1, n)?;
    let mut strata = Vec::new();
    for j in 1..=d.min(n - 1) {
        let g = grassmannian(n + 1 - j, 2)?;
        let e = g.quotient().sym_power(d)?;
        let normals = (0..j)
            .map(|_| Normal::new(g.quotient().clone(), 2))
            .collect::<Result<Vec<_>>>()?;
        let multiplicity = binomial(d as u64, j as u64)
            .to_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("binom({d},{j}) overflows")))?;
        let labels = (0..j as usize).collect();
        strata.push(Stratum::new(labels, e, normals, multiplicity)?.with_description(g.name()));
    }
    VanishingConfiguration::new(2 * (n - 1), strata)
}

/// The same count as [`lines_direct`], summed over the hyperplane strata.
pub fn lines_residual(n: u32, d: u32) -> Result<CountReport> {
    let config = hyperplane_configuration(n, d)?;
    let strata = residual_terms(&config)?;
    let total = strata
        .iter()
        .fold(crate::graded::rational(0), |acc, t| acc + &t.subtotal);
    Ok(CountReport {
        method: Method::Residual,
        total: expect_integer(&total)?,
        strata,
    })
}

/// Signed contribution `-(-1)^k · multinomial(Σ d_i; d_1, …, d_k)` of a
/// point where `k` components of codimensions `d_i` meet.
pub fn point_contribution(codims: &[u32]) -> BigInt {
    let parts: Vec<u64> = codims.iter().map(|&d| d as u64).collect();
    let m = multinomial(parts.iter().sum(), &parts).expect("parts sum by construction");
    if codims.len() % 2 == 1 {
        m
    } else {
        -m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn direct_counts() {
        assert_eq!(lines_direct(3, 3).unwrap().total, int(27));
        assert_eq!(lines_direct(4, 5).unwrap().total, int(2875));
        assert_eq!(
            lines_direct(3, 5).unwrap_err(),
            Error::DimensionMismatch {
                rank: 6,
                dimension: 4
            }
        );
    }

    #[test]
    fn residual_counts() {
        let cubic = lines_residual(3, 3).unwrap();
        assert_eq!(cubic.total, int(27));
        let parts: Vec<(u64, i32, String)> = cubic
            .strata
            .iter()
            .map(|t| (t.multiplicity, t.sign, t.integral.to_string()))
            .collect();
        assert_eq!(
            parts,
            vec![(3, 1, "15".to_string()), (3, -1, "6".to_string())]
        );

        let quintic = lines_residual(4, 5).unwrap();
        assert_eq!(quintic.total, int(2875));
        let subtotals: Vec<String> = quintic
            .strata
            .iter()
            .map(|t| t.subtotal.to_string())
            .collect();
        assert_eq!(subtotals, ["6375", "-4400", "900"]);
        let names: Vec<&str> = quintic
            .strata
            .iter()
            .map(|t| t.description.as_str())
            .collect();
        assert_eq!(names, ["Grass(4,2)", "Grass(3,2)", "Grass(2,2)"]);
    }

    #[test]
    fn complete_intersections() {
        assert_eq!(
            lines_on_complete_intersection_direct(3, &[3])
                .unwrap()
                .total,
            int(27)
        );
        assert_eq!(
            lines_on_complete_intersection_direct(4, &[2, 2])
                .unwrap()
                .total,
            int(16)
        );
        assert!(matches!(
            lines_on_complete_intersection_direct(3, &[2]),
            Err(Error::DimensionMismatch {
                rank: 3,
                dimension: 4
            })
        ));
    }

    #[test]
    fn point_contributions() {
        assert_eq!(point_contribution(&[2, 2]), int(-6));
        assert_eq!(point_contribution(&[2, 2, 2]), int(90));
        assert_eq!(point_contribution(&[5]), int(1));
    }

    #[test]
    fn report_json_shape() {
        let v = serde_json::to_value(lines_residual(3, 3).unwrap()).unwrap();
        assert_eq!(v["method"], "residual");
        assert_eq!(v["total"], 27);
        assert_eq!(v["strata"][1]["subtotal"], -18);
    }
}
