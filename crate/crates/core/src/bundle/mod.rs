//! Vector bundles as (rank, total Chern class) pairs and the operations of
//! Chern class calculus on them.

mod roots;
mod segre;

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{binomial, same_ring, ChowRing, GradedClass, Rational};

pub use segre::{multi_segre, multi_segre_pushforward};

use roots::RootSystem;
pub(crate) use roots::ScratchPoly;

/// Largest rank produced by a splitting-principle construction.
const MAX_SPLIT_RANK: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    rank: u32,
    chern: GradedClass,
}

impl Bundle {
    /// Checks that `chern` starts with 1 and vanishes above the rank.
    pub fn new(rank: u32, chern: GradedClass) -> Result<Self> {
        let c0 = chern.constant_term();
        if !c0.is_one() {
            return Err(Error::InvalidBundle(format!(
                "total Chern class must start with 1, found constant term {c0}"
            )));
        }
        if let Some(d) = chern.max_degree() {
            if d > rank {
                return Err(Error::InvalidBundle(format!(
                    "Chern class of degree {d} exceeds rank {rank}"
                )));
            }
        }
        Ok(Bundle { rank, chern })
    }

    pub fn trivial(ring: &Arc<ChowRing>, rank: u32) -> Self {
        Bundle {
            rank,
            chern: GradedClass::one(ring),
        }
    }

    /// Line bundle with first Chern class `c1` (must be homogeneous of degree 1).
    pub fn line(c1: &GradedClass) -> Result<Self> {
        if c1.terms().any(|(m, _)| m.degree() != 1) {
            return Err(Error::InvalidBundle(format!(
                "`{c1}` is not a degree-1 class"
            )));
        }
        let chern = GradedClass::one(c1.ring()).add(c1)?;
        Bundle::new(1, chern)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn chern(&self) -> &GradedClass {
        &self.chern
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        self.chern.ring()
    }

    /// `c_i(E)`, the degree-`i` component of the total Chern class.
    pub fn chern_class(&self, i: u32) -> GradedClass {
        self.chern.component(i)
    }

    pub fn top_chern(&self) -> GradedClass {
        self.chern_class(self.rank)
    }

    /// `s(E) = c(E)^{-1}`; its degree-`k` component is `s_k(E)`.
    pub fn segre_total(&self) -> GradedClass {
        self.chern.invert_unit().expect("Chern classes are units")
    }

    pub fn segre_class(&self, k: u32) -> GradedClass {
        self.segre_total().component(k)
    }

    /// `c_k(E^∨) = (-1)^k c_k(E)`.
    pub fn dual(&self) -> Bundle {
        let ring = self.ring();
        let mut acc = GradedClass::zero(ring);
        for (m, c) in self.chern.terms() {
            let c = if m.degree() % 2 == 1 {
                -c.clone()
            } else {
                c.clone()
            };
            acc = acc
                .add(&GradedClass::monomial(ring, m.clone(), c))
                .expect("same ring");
        }
        Bundle {
            rank: self.rank,
            chern: acc,
        }
    }

    pub fn whitney_sum(&self, other: &Bundle) -> Result<Bundle> {
        Ok(Bundle {
            rank: self.rank + other.rank,
            chern: self.chern.mul(&other.chern)?,
        })
    }

    /// `Sym^d E` via the splitting principle: its roots are the sums
    /// `a_1 x_1 + … + a_r x_r` over all exponent vectors with `Σ a_i = d`.
    pub fn sym_power(&self, d: u32) -> Result<Bundle> {
        let r = self.rank as usize;
        let rank: u64 = if r == 0 {
            u64::from(d == 0)
        } else {
            u64::try_from(binomial(r as u64 + d as u64 - 1, d as u64)).unwrap_or(u64::MAX)
        };
        if rank > MAX_SPLIT_RANK {
            return Err(Error::InvalidArgument(format!(
                "Sym^{d} of a rank-{} bundle is too large",
                self.rank
            )));
        }
        let ring = self.ring();
        if r == 0 {
            return Ok(Bundle::trivial(ring, rank as u32));
        }
        let system = RootSystem::new(vec![r]);
        let mut roots = Vec::new();
        compositions(d, r, &mut vec![0; r], 0, &mut roots);
        let total = system.total_class(roots, ring.dimension());
        let elem = system.to_elementary(&total);
        let chern = system.substitute(&elem, &[self]);
        Bundle::new(rank as u32, chern)
    }

    /// `E ⊗ F`, whose roots are all sums `x_i + y_j`.
    pub fn tensor(&self, other: &Bundle) -> Result<Bundle> {
        same_ring(self.ring(), other.ring())?;
        let (r, s) = (self.rank as usize, other.rank as usize);
        let rank = r as u64 * s as u64;
        if rank > MAX_SPLIT_RANK {
            return Err(Error::InvalidArgument("tensor product too large".into()));
        }
        if rank == 0 {
            return Ok(Bundle::trivial(self.ring(), 0));
        }
        let system = RootSystem::new(vec![r, s]);
        let n = system.nvars();
        let roots = (0..r).flat_map(|i| {
            (0..s).map(move |j| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                v[r + j] = 1;
                v
            })
        });
        let total = system.total_class(roots, self.ring().dimension());
        let elem = system.to_elementary(&total);
        let chern = system.substitute(&elem, &[self, other]);
        Bundle::new(rank as u32, chern)
    }

    /// `Hom(E, F) = E^∨ ⊗ F`.
    pub fn hom(&self, other: &Bundle) -> Result<Bundle> {
        self.dual().tensor(other)
    }

    /// Integral of the top Chern class.
    pub fn top_chern_number(&self) -> Result<Rational> {
        self.top_chern().integrate()
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} bundle with c = {}", self.rank, self.chern)
    }
}

/// All exponent vectors of length `parts` summing to `total`.
fn compositions(total: u32, parts: usize, cur: &mut Vec<u32>, idx: usize, out: &mut Vec<Vec<i64>>) {
    if idx + 1 == parts {
        cur[idx] = total;
        out.push(cur.iter().map(|&x| x as i64).collect());
        return;
    }
    for a in 0..=total {
        cur[idx] = a;
        compositions(total - a, parts, cur, idx + 1, out);
    }
}

#[cfg(test)]
mod tests;
