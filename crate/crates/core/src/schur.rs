//! Schur module dimensions and Euler characteristics of line bundles on `G/B`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::weight::{from_l_coordinates, rho, to_l_coordinates, RootSystemA, Weight};

/// `h^0(G/B, mu)` for dominant `mu`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DimValue(pub BigUint);

/// `chi(G/B, mu)` for arbitrary `mu`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EulerValue(pub BigInt);

impl DimValue {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }
}

impl EulerValue {
    pub fn value(&self) -> &BigInt {
        &self.0
    }
}

impl From<u64> for DimValue {
    fn from(v: u64) -> Self {
        DimValue(BigUint::from(v))
    }
}

impl From<DimValue> for EulerValue {
    fn from(d: DimValue) -> Self {
        EulerValue(BigInt::from(d.0))
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for EulerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for DimValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl Serialize for EulerValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// Weyl dimension formula
/// `prod_{i<j} (a_i + ... + a_{j-1} + j - i) / (j - i)`.
///
/// Numerator and denominator are accumulated in full and divided once; the
/// quotient is asserted to be exact.
pub fn weyl_dim(rs: RootSystemA, mu: &Weight) -> Result<DimValue> {
    rs.check(mu)?;
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.to_string()));
    }
    Ok(DimValue(weyl_product(rs, mu)))
}

fn weyl_product(rs: RootSystemA, mu: &Weight) -> BigUint {
    let n = rs.n();
    let a = mu.coeffs();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..n {
        let mut partial = BigInt::zero();
        for j in i + 1..=n {
            partial += &a[j - 2];
            let factor = &partial + BigInt::from(j - i);
            num *= factor.magnitude();
            den *= BigUint::from(j - i);
        }
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "Weyl product not integral for {mu}");
    q
}

/// Euler characteristic via dot-action dominantization.
///
/// Let `b` be the L-coordinates of `mu + rho`. If two entries coincide,
/// `mu + rho` lies on a wall and `chi = 0`. Otherwise sort `b` strictly
/// descending, counting inversions; the result is
/// `(-1)^inv * weyl_dim(sorted - rho)`.
pub fn euler_char(rs: RootSystemA, mu: &Weight) -> Result<EulerValue> {
    rs.check(mu)?;
    let shifted = mu + &rho(rs);
    let mut b = to_l_coordinates(&shifted);
    let inversions = sort_descending_counting(&mut b);
    if b.windows(2).any(|w| w[0] == w[1]) {
        return Ok(EulerValue(BigInt::zero()));
    }
    let dominant = &from_l_coordinates(&b) - &rho(rs);
    let dim = BigInt::from(weyl_product(rs, &dominant));
    let sign = if inversions.is_multiple_of(2) {
        Sign::Plus
    } else {
        Sign::Minus
    };
    Ok(EulerValue(if sign == Sign::Minus { -dim } else { dim }))
}

/// Insertion sort into descending order; returns the number of swaps, whose
/// parity is the sign of the sorting permutation.
fn sort_descending_counting(b: &mut [BigInt]) -> usize {
    let mut swaps = 0;
    for k in 1..b.len() {
        let mut m = k;
        while m > 0 && b[m - 1] < b[m] {
            b.swap(m - 1, m);
            swaps += 1;
            m -= 1;
        }
    }
    swaps
}

/// Number of Gelfand-Tsetlin patterns with top row the partition of `mu`.
///
/// A deliberately naive recursive enumeration, kept only as an independent
/// oracle for [`weyl_dim`].
pub fn gt_pattern_count(rs: RootSystemA, mu: &Weight) -> Result<DimValue> {
    rs.check(mu)?;
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.to_string()));
    }
    let top: Vec<i64> = to_l_coordinates(mu)
        .iter()
        .map(|c| i64::try_from(c.clone()).expect("gt_pattern_count is for small weights"))
        .collect();
    Ok(DimValue(count_below(&top)))
}

fn count_below(row: &[i64]) -> BigUint {
    if row.len() <= 1 {
        return BigUint::one();
    }
    let mut total = BigUint::zero();
    let mut next = vec![0i64; row.len() - 1];
    enumerate_rows(row, 0, &mut next, &mut total);
    total
}

fn enumerate_rows(row: &[i64], k: usize, next: &mut Vec<i64>, total: &mut BigUint) {
    if k == next.len() {
        *total += count_below(next);
        return;
    }
    // row[k] >= next[k] >= row[k + 1]
    for v in row[k + 1]..=row[k] {
        next[k] = v;
        enumerate_rows(row, k + 1, next, total);
    }
}

/// True when `mu + rho` pairs to zero with some positive root.
pub fn is_singular(rs: RootSystemA, mu: &Weight) -> bool {
    let b = to_l_coordinates(&(mu + &rho(rs)));
    for x in 0..b.len() {
        for y in x + 1..b.len() {
            if b[x] == b[y] {
                return true;
            }
        }
    }
    false
}
