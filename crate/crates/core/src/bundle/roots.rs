//! Splitting-principle scratch space.
//!
//! Each bundle taking part in a construction gets its own group of formal
//! degree-1 Chern roots. A characteristic class built from the roots is
//! symmetric within every group; it is rewritten in the elementary symmetric
//! polynomials of each group (the descending leading-term algorithm) and
//! then evaluated in the base ring by `e_i(group g) -> c_i(E_g)`.
//!
//! Root polynomials have integer coefficients, so the scratch arithmetic is
//! carried out over `BigInt`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Bundle;
use crate::graded::{GradedClass, Rational};

/// Sparse polynomial in scratch variables; keys are exponent vectors, whose
/// derived ordering is lexicographic with the first variable most significant.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct ScratchPoly {
    pub(crate) terms: BTreeMap<Vec<u32>, BigInt>,
}

impl ScratchPoly {
    pub(crate) fn one(nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nvars], BigInt::one());
        ScratchPoly { terms }
    }

    /// `Σ coeffs[i] * x_i`, without constant term.
    pub(crate) fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut terms = BTreeMap::new();
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut e = vec![0; n];
                e[i] = 1;
                terms.insert(e, BigInt::from(c));
            }
        }
        ScratchPoly { terms }
    }

    fn add_scaled(&mut self, other: &ScratchPoly, c: &BigInt) {
        for (e, x) in &other.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c * x;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    /// Product, dropping terms of total degree above `cap`.
    pub(crate) fn mul(&self, other: &ScratchPoly, cap: Option<u32>) -> ScratchPoly {
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if let Some(cap) = cap {
                    if da + eb.iter().sum::<u32>() > cap {
                        continue;
                    }
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ScratchPoly { terms }
    }
}

pub(crate) struct RootSystem {
    groups: Vec<usize>,
    nvars: usize,
    /// `elementary[v]` is `e_{i+1}` of the group owning scratch index `v`,
    /// where `i` is the index inside that group.
    elementary: Vec<ScratchPoly>,
}

impl RootSystem {
    pub(crate) fn new(groups: Vec<usize>) -> Self {
        let nvars: usize = groups.iter().sum();
        let mut elementary = Vec::with_capacity(nvars);
        let mut offset = 0;
        for &r in &groups {
            // Π (1 + x_j) over the group, split by degree
            let mut prod = ScratchPoly::one(nvars);
            for j in 0..r {
                let mut coeffs = vec![0; nvars];
                coeffs[offset + j] = 1;
                let mut factor = ScratchPoly::linear(&coeffs);
                factor.add_scaled(&ScratchPoly::one(nvars), &BigInt::one());
                prod = prod.mul(&factor, None);
            }
            for i in 1..=r as u32 {
                let terms = prod
                    .terms
                    .iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() == i)
                    .map(|(e, c)| (e.clone(), c.clone()))
                    .collect();
                elementary.push(ScratchPoly { terms });
            }
            offset += r;
        }
        RootSystem {
            groups,
            nvars,
            elementary,
        }
    }

    pub(crate) fn nvars(&self) -> usize {
        self.nvars
    }

    /// `Π (1 + root)` truncated at total degree `cap`; roots are given as
    /// integer combinations of the scratch variables.
    pub(crate) fn total_class<I>(&self, roots: I, cap: u32) -> ScratchPoly
    where
        I: IntoIterator<Item = Vec<i64>>,
    {
        let one = ScratchPoly::one(self.nvars);
        let mut acc = one.clone();
        for root in roots {
            let mut factor = ScratchPoly::linear(&root);
            factor.add_scaled(&one, &BigInt::one());
            acc = acc.mul(&factor, Some(cap));
        }
        acc
    }

    fn elementary_monomial(
        &self,
        e: &[u32],
        memo: &mut HashMap<Vec<u32>, ScratchPoly>,
    ) -> ScratchPoly {
        if let Some(p) = memo.get(e) {
            return p.clone();
        }
        let result = match e.iter().position(|&x| x > 0) {
            None => ScratchPoly::one(self.nvars),
            Some(idx) => {
                let mut smaller = e.to_vec();
                smaller[idx] -= 1;
                self.elementary_monomial(&smaller, memo)
                    .mul(&self.elementary[idx], None)
            }
        };
        memo.insert(e.to_vec(), result.clone());
        result
    }

    /// Rewrites a group-wise symmetric polynomial in elementary symmetric
    /// polynomials. Keys of the result are exponent vectors over
    /// `(e_1, …, e_r)` of each group, concatenated.
    ///
    /// # Panics
    ///
    /// If the input is not symmetric within each group.
    pub(crate) fn to_elementary(&self, poly: &ScratchPoly) -> BTreeMap<Vec<u32>, BigInt> {
        let mut rest = poly.clone();
        let mut memo = HashMap::new();
        let mut out: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        while let Some((lead, c)) = rest
            .terms
            .last_key_value()
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            let mut e = Vec::with_capacity(self.nvars);
            let mut offset = 0;
            for &r in &self.groups {
                let lam = &lead[offset..offset + r];
                assert!(
                    lam.windows(2).all(|w| w[0] >= w[1]),
                    "non-symmetric residue {lead:?} in splitting-principle reduction"
                );
                for i in 0..r {
                    let next = lam.get(i + 1).copied().unwrap_or(0);
                    e.push(lam[i] - next);
                }
                offset += r;
            }
            let expansion = self.elementary_monomial(&e, &mut memo);
            rest.add_scaled(&expansion, &-c.clone());
            debug_assert!(!rest.terms.contains_key(&lead));
            *out.entry(e).or_insert_with(BigInt::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Evaluates an elementary-symmetric expression with `e_i(group g)`
    /// replaced by `c_i(bundles[g])`.
    pub(crate) fn substitute(
        &self,
        elementary: &BTreeMap<Vec<u32>, BigInt>,
        bundles: &[&Bundle],
    ) -> GradedClass {
        assert_eq!(bundles.len(), self.groups.len());
        let ring = bundles[0].ring().clone();
        let mut chern = Vec::with_capacity(self.nvars);
        for (g, &r) in self.groups.iter().enumerate() {
            for i in 1..=r as u32 {
                chern.push(bundles[g].chern_class(i));
            }
        }
        let mut memo: HashMap<Vec<u32>, GradedClass> = HashMap::new();
        let mut acc = GradedClass::zero(&ring);
        for (e, c) in elementary {
            let value = product_memo(e, &chern, &mut memo, &ring);
            acc = acc
                .add(&value.scale(&Rational::from_integer(c.clone())))
                .expect("same ring");
        }
        acc
    }
}

fn product_memo(
    e: &[u32],
    chern: &[GradedClass],
    memo: &mut HashMap<Vec<u32>, GradedClass>,
    ring: &std::sync::Arc<crate::graded::ChowRing>,
) -> GradedClass {
    if let Some(v) = memo.get(e) {
        return v.clone();
    }
    let v = match e.iter().position(|&x| x > 0) {
        None => GradedClass::one(ring),
        Some(idx) => {
            let mut smaller = e.to_vec();
            smaller[idx] -= 1;
            product_memo(&smaller, chern, memo, ring)
                .mul(&chern[idx])
                .expect("same ring")
        }
    };
    memo.insert(e.to_vec(), v.clone());
    v
}
