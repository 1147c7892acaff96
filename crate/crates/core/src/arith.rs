//! Small integer helpers shared across modules.

use num_bigint::BigUint;
use num_traits::One;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(max: u64) -> Vec<u64> {
    (2..=max).filter(|&q| is_prime(q)).collect()
}

/// Binomial coefficient `C(n, k)` as an exact big integer (0 when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Write `x + 1 = s * p^m` with `0 < s < p`, if possible.
pub fn andersen_form(x: &num_bigint::BigInt, p: u64) -> Option<(u64, u32)> {
    use num_bigint::BigInt;
    use num_traits::{ToPrimitive, Zero};
    let mut y: BigInt = x + 1;
    if y <= BigInt::zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut m = 0u32;
    while (&y % &pb).is_zero() {
        y /= &pb;
        m += 1;
    }
    let s = y.to_u64()?;
    (s < p).then_some((s, m))
}
