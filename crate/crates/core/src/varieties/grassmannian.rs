use std::sync::Arc;

use num_bigint::BigInt;

use super::schubert::schubert_integral_oracle;
use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::graded::{expect_integer, ChowRing, Generator, GradedClass, Rational};

/// `Grass(m, k)`: rank-`k` quotients of `C^m`, with tautological sequence
/// `0 -> K -> C^m ⊗ O -> Q -> 0` and `σ_i = c_i(Q)`.
#[derive(Debug, Clone)]
pub struct Grassmannian {
    m: u32,
    k: u32,
    ring: Arc<ChowRing>,
    relations: Vec<GradedClass>,
    quotient: Bundle,
    kernel: Bundle,
}

fn sigma_generators(k: u32) -> Vec<Generator> {
    (1..=k)
        .map(|i| Generator::new(format!("s{i}"), i))
        .collect()
}

impl Grassmannian {
    /// Builds the presentation `Q[σ_1..σ_k] / (s_{m-k+1}(Q), …, s_m(Q))`,
    /// where `s(Q) = c(Q)^{-1}` is expanded in the free polynomial ring.
    /// The integration table is filled by the Pieri oracle.
    pub fn new(m: u32, k: u32) -> Result<Self> {
        if k > m {
            return Err(Error::InvalidArgument(format!(
                "Grass({m},{k}) requires k <= m"
            )));
        }
        let dim = k * (m - k);
        let gens = sigma_generators(k);
        let free = ChowRing::free("free", gens.clone(), m.max(dim))?;
        let mut total = GradedClass::one(&free);
        for g in &gens {
            total = total.add(&GradedClass::generator(&free, &g.name)?)?;
        }
        let inverse = total.invert_unit()?;
        let relations: Vec<GradedClass> = (m - k + 1..=m)
            .map(|d| inverse.component(d))
            .filter(|c| !c.is_zero())
            .collect();

        let mut table = Vec::new();
        for mono in free.monomials_of_degree(dim) {
            let exps = mono.exponents().to_vec();
            let value = schubert_integral_oracle(m, k, &exps)?;
            table.push((exps, value));
        }
        let ring = ChowRing::from_relations(
            format!("Grass({m},{k})"),
            gens.clone(),
            dim,
            &relations,
            table,
        )?;

        let mut c_q = GradedClass::one(&ring);
        for g in &gens {
            c_q = c_q.add(&GradedClass::generator(&ring, &g.name)?)?;
        }
        let c_k = c_q.invert_unit()?.truncate(m - k);
        let quotient = Bundle::new(k, c_q)?;
        let kernel = Bundle::new(m - k, c_k)?;
        Ok(Grassmannian {
            m,
            k,
            ring,
            relations,
            quotient,
            kernel,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dimension(&self) -> u32 {
        self.ring.dimension()
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    pub fn name(&self) -> &str {
        self.ring.name()
    }

    /// The defining relations before completion, as classes in the free
    /// polynomial ring on `σ_1..σ_k`: the degree `m-k+1 … m` parts of `c(Q)^{-1}`.
    pub fn relations(&self) -> &[GradedClass] {
        &self.relations
    }

    /// Universal quotient `Q`.
    pub fn quotient(&self) -> &Bundle {
        &self.quotient
    }

    /// Universal subbundle `K`.
    pub fn kernel(&self) -> &Bundle {
        &self.kernel
    }

    /// `σ_i`; `i` ranges over `1..=k`.
    pub fn sigma(&self, i: u32) -> Result<GradedClass> {
        GradedClass::generator(&self.ring, &format!("s{i}"))
    }

    /// `T = Hom(K, Q) = K^∨ ⊗ Q`.
    pub fn tangent_bundle(&self) -> Result<Bundle> {
        self.kernel.hom(&self.quotient)
    }

    /// `χ = ∫ c_top(T)`.
    pub fn euler_characteristic(&self) -> Result<BigInt> {
        let chi: Rational = self.tangent_bundle()?.top_chern_number()?;
        expect_integer(&chi)
    }
}

pub fn grassmannian(m: u32, k: u32) -> Result<Grassmannian> {
    Grassmannian::new(m, k)
}
