//! Segre classes of several bundles at once.
//!
//! For bundles `E_1, …, E_k` of ranks `r_i`, the multi-Segre class
//! `s(E_1, …, E_k)` is the pushforward of powers of `c_1(O(1))` from the
//! fibre product of the `P(E_i ⊕ O)`. Two independent routes compute it:
//! [`multi_segre`] sums the closed multinomial formula, and
//! [`multi_segre_pushforward`] expands `(ξ_1 + … + ξ_k)^{r+l}` and pushes
//! each monomial forward factor by factor.

use super::{Bundle, ScratchPoly};
use crate::error::{Error, Result};
use crate::graded::{multinomial, same_ring, GradedClass, Rational};

fn common_ring(bundles: &[Bundle]) -> Result<&std::sync::Arc<crate::graded::ChowRing>> {
    let first = bundles
        .first()
        .ok_or_else(|| Error::InvalidArgument("at least one bundle is required".into()))?;
    for b in &bundles[1..] {
        same_ring(first.ring(), b.ring())?;
    }
    Ok(first.ring())
}

/// `Σ_{l_i ≥ 0} multinomial(Σ(l_i + r_i); l_1 + r_1, …, l_k + r_k) · Π s_{l_i}(E_i)`,
/// keeping total degree `≤ max_degree`.
pub fn multi_segre(bundles: &[Bundle], max_degree: u32) -> Result<GradedClass> {
    let ring = common_ring(bundles)?;
    let max_degree = max_degree.min(ring.dimension());
    let segre: Vec<Vec<GradedClass>> = bundles
        .iter()
        .map(|b| {
            let s = b.segre_total();
            (0..=max_degree).map(|l| s.component(l)).collect()
        })
        .collect();
    let ranks: Vec<u64> = bundles.iter().map(|b| b.rank() as u64).collect();

    let mut acc = GradedClass::zero(ring);
    let mut ls = Vec::with_capacity(bundles.len());
    accumulate(
        &segre,
        &ranks,
        max_degree,
        &mut ls,
        GradedClass::one(ring),
        &mut acc,
    )?;
    Ok(acc)
}

fn accumulate(
    segre: &[Vec<GradedClass>],
    ranks: &[u64],
    budget: u32,
    ls: &mut Vec<u32>,
    partial: GradedClass,
    acc: &mut GradedClass,
) -> Result<()> {
    let i = ls.len();
    if i == segre.len() {
        let parts: Vec<u64> = ls.iter().zip(ranks).map(|(&l, &r)| l as u64 + r).collect();
        let coeff = multinomial(parts.iter().sum(), &parts)?;
        *acc = acc.add(&partial.scale(&Rational::from_integer(coeff)))?;
        return Ok(());
    }
    for l in 0..=budget {
        let s = &segre[i][l as usize];
        if s.is_zero() {
            continue;
        }
        ls.push(l);
        accumulate(segre, ranks, budget - l, ls, partial.mul(s)?, acc)?;
        ls.pop();
    }
    Ok(())
}

/// The same class computed from its definition as a pushforward:
/// `s_l = (-1)^l π_*((ξ_1 + … + ξ_k)^{r+l})` with
/// `π_*(ξ_i^{a}) = (-1)^{a - r_i} s_{a - r_i}(E_i)` (zero for `a < r_i`).
pub fn multi_segre_pushforward(bundles: &[Bundle], max_degree: u32) -> Result<GradedClass> {
    let ring = common_ring(bundles)?;
    let max_degree = max_degree.min(ring.dimension());
    let k = bundles.len();
    let ranks: Vec<u32> = bundles.iter().map(Bundle::rank).collect();
    let relative_dim: u32 = ranks.iter().sum();
    let segre: Vec<GradedClass> = bundles.iter().map(Bundle::segre_total).collect();

    let hyperplane = ScratchPoly::linear(&vec![1; k]);
    let mut power = ScratchPoly::one(k);
    for _ in 0..relative_dim {
        power = power.mul(&hyperplane, None);
    }

    let mut acc = GradedClass::zero(ring);
    for l in 0..=max_degree {
        for (a, coeff) in &power.terms {
            if a.iter().zip(&ranks).any(|(ai, ri)| ai < ri) {
                continue;
            }
            let mut term = GradedClass::constant(ring, Rational::from_integer(coeff.clone()));
            let mut sign = l % 2;
            for i in 0..k {
                let j = a[i] - ranks[i];
                sign += j % 2;
                term = term.mul(&segre[i].component(j))?;
                if term.is_zero() {
                    break;
                }
            }
            if term.is_zero() {
                continue;
            }
            if sign % 2 == 1 {
                term = term.neg();
            }
            acc = acc.add(&term)?;
        }
        power = power.mul(&hyperplane, None);
    }
    Ok(acc)
}
