use std::cmp::Ordering;

/// A product of ring generators, stored as a dense exponent vector aligned
/// with the generator list of the owning ring.
///
/// The weighted degree is cached so that monomials can be compared without a
/// reference to the ring. Comparison is graded reverse-lexicographic: higher
/// weighted degree first, ties broken by the *smaller* exponent in the last
/// generator where the two differ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub(crate) fn from_parts(exps: Vec<u32>, degree: u32) -> Self {
        Monomial { exps, degree }
    }

    pub(crate) fn with_degrees(exps: Vec<u32>, degrees: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), degrees.len());
        let degree = exps.iter().zip(degrees).map(|(e, d)| e * d).sum();
        Monomial { exps, degree }
    }

    pub(crate) fn unit(ngens: usize) -> Self {
        Monomial {
            exps: vec![0; ngens],
            degree: 0,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub(crate) fn cofactor(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
            degree: other.degree - self.degree,
        }
    }

    pub(crate) fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
