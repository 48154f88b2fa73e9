use std::sync::Arc;

use num_traits::One;

use crate::bundle::Bundle;
use crate::error::Result;
use crate::graded::{rational, ChowRing, Generator, GradedClass, Rational, RewriteRule};

/// `P^n` with Chow ring `Q[h]/(h^{n+1})` and `∫ h^n = 1`.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    n: u32,
    ring: Arc<ChowRing>,
}

impl ProjectiveSpace {
    pub fn new(n: u32) -> Self {
        let ring = if n == 0 {
            ChowRing::point()
        } else {
            ChowRing::new(
                format!("P{n}"),
                vec![Generator::new("h", 1)],
                n,
                vec![RewriteRule {
                    lhs: vec![n + 1],
                    rhs: Vec::new(),
                }],
                vec![(vec![n], Rational::one())],
            )
            .expect("projective space ring is well formed")
        };
        ProjectiveSpace { n, ring }
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    /// Hyperplane class `h` (zero on `P^0`).
    pub fn hyperplane(&self) -> GradedClass {
        GradedClass::generator(&self.ring, "h").unwrap_or_else(|_| GradedClass::zero(&self.ring))
    }

    /// `O(d)`, with `c = 1 + d h`.
    pub fn line_bundle(&self, d: i64) -> Bundle {
        Bundle::line(&self.hyperplane().scale(&rational(d))).expect("degree-1 class")
    }

    /// Tangent bundle, `c = (1 + h)^{n+1}`.
    pub fn tangent_bundle(&self) -> Result<Bundle> {
        let one_plus_h = self.line_bundle(1);
        Bundle::new(self.n, one_plus_h.chern().pow(self.n + 1))
    }
}

/// Shorthand for [`ProjectiveSpace::new`].
pub fn projective_space(n: u32) -> ProjectiveSpace {
    ProjectiveSpace::new(n)
}
