use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `d! / (parts[0]! * parts[1]! * ...)`, built as a product of binomials.
pub fn multinomial(d: u64, parts: &[u64]) -> Result<BigInt> {
    let sum: u64 = parts.iter().sum();
    if sum != d {
        return Err(Error::PartsMismatch { d, sum });
    }
    let mut running = 0;
    let mut acc = BigInt::one();
    for &p in parts {
        running += p;
        acc *= binomial(running, p);
    }
    Ok(acc)
}
