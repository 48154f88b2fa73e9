//! Schubert calculus on `Grass(m, k)` by the Pieri rule.
//!
//! This is an independent oracle for intersection numbers: it works on
//! partitions only and never touches the rewriting machinery of the graded
//! rings. With `Q` the rank-`k` universal quotient, `σ_i = c_i(Q)` is the
//! Schubert class of the column `(1^i)`, and multiplying by it adds a
//! vertical strip of `i` boxes inside the `k × (m-k)` box.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::Rational;

/// Weakly decreasing row lengths, padded with zeros to `k` rows.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "{rows:?} is not weakly decreasing"
            )));
        }
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(Partition(rows))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The full `rows × cols` rectangle.
    pub fn rectangle(rows: u32, cols: u32) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition(vec![cols; rows as usize])
    }

    pub fn rows(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn fits_in(&self, rows: u32, cols: u32) -> bool {
        self.0.len() <= rows as usize && self.0.iter().all(|&r| r <= cols)
    }

    /// Every partition obtained by adding a vertical strip of `size` boxes,
    /// staying inside the `rows × cols` box.
    pub fn add_vertical_strip(&self, size: u32, rows: u32, cols: u32) -> Vec<Partition> {
        let k = rows as usize;
        let mut padded = self.0.clone();
        padded.resize(k, 0);
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        choose_rows(&padded, size as usize, 0, &mut chosen, &mut |rows_hit| {
            let mut next = padded.clone();
            for &r in rows_hit {
                next[r] += 1;
            }
            let is_partition = next.windows(2).all(|w| w[0] >= w[1]);
            if is_partition && next.iter().all(|&x| x <= cols) {
                out.push(Partition::new(next).expect("checked"));
            }
        });
        out
    }
}

fn choose_rows(
    rows: &[u32],
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == size {
        f(chosen);
        return;
    }
    for r in start..rows.len() {
        chosen.push(r);
        choose_rows(rows, size, r + 1, chosen, f);
        chosen.pop();
    }
}

/// Expands `σ_1^{e_1} σ_2^{e_2} … σ_k^{e_k}` in the Schubert basis of `Grass(m, k)`.
pub fn pieri_expand(m: u32, k: u32, exponents: &[u32]) -> Result<BTreeMap<Partition, BigInt>> {
    if k > m {
        return Err(Error::InvalidArgument(format!(
            "Grass({m},{k}) needs k <= m"
        )));
    }
    if exponents.len() > k as usize && exponents[k as usize..].iter().any(|&e| e > 0) {
        return Err(Error::InvalidArgument(format!(
            "sigma_i vanishes for i > {k} on Grass({m},{k})"
        )));
    }
    let cols = m - k;
    let mut state: BTreeMap<Partition, BigInt> = BTreeMap::new();
    state.insert(Partition::empty(), BigInt::one());
    for (i, &e) in exponents.iter().enumerate() {
        let strip = i as u32 + 1;
        for _ in 0..e {
            let mut next: BTreeMap<Partition, BigInt> = BTreeMap::new();
            for (lam, c) in &state {
                for mu in lam.add_vertical_strip(strip, k, cols) {
                    *next.entry(mu).or_insert_with(BigInt::zero) += c;
                }
            }
            state = next;
        }
    }
    Ok(state)
}

/// `∫_{Grass(m,k)} σ_1^{e_1} … σ_k^{e_k}` by iterated Pieri products.
pub fn schubert_integral_oracle(m: u32, k: u32, exponents: &[u32]) -> Result<Rational> {
    let dim = k as u64 * (m.saturating_sub(k)) as u64;
    let degree: u64 = exponents
        .iter()
        .enumerate()
        .map(|(i, &e)| (i as u64 + 1) * e as u64)
        .sum();
    if degree != dim {
        return Err(Error::DegreeMismatch {
            expected: dim,
            found: degree,
        });
    }
    let expansion = pieri_expand(m, k, exponents)?;
    let top = Partition::rectangle(k, m - k);
    Ok(Rational::from_integer(
        expansion.get(&top).cloned().unwrap_or_else(BigInt::zero),
    ))
}
