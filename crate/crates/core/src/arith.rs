//! Small exact integer helpers.

use crate::error::{Error, Result};

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> Result<u128> {
    (1..=u128::from(n)).try_fold(1u128, |acc, x| {
        acc.checked_mul(x)
            .ok_or_else(|| Error::Overflow(format!("{n}!")))
    })
}

/// `base^exp` with overflow reported as an error.
pub fn checked_pow(base: u64, exp: usize) -> Result<u64> {
    let exp32 = u32::try_from(exp).map_err(|_| Error::Overflow(format!("{base}^{exp}")))?;
    base.checked_pow(exp32)
        .ok_or_else(|| Error::Overflow(format!("{base}^{exp}")))
}
