//! Weight lattice, roots and (dot-)reflections for `SL(n)`, i.e. type `A_{n-1}`.
//!
//! Weights are stored in the fundamental-weight basis. Positive roots are
//! index pairs `(i, j)` standing for `L_i - L_j`, so supports and coroot
//! pairings never need a search.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RootSystemA {
    n: usize,
}

impl RootSystemA {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn num_positive_roots(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// All positive roots `L_i - L_j`, `i < j`, in lexicographic order.
    pub fn positive_roots(&self) -> impl Iterator<Item = PositiveRoot> + '_ {
        (1..self.n).flat_map(move |i| (i + 1..=self.n).map(move |j| PositiveRoot { i, j }))
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = PositiveRoot> {
        (1..self.n).map(PositiveRoot::simple)
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.rank())
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank(), i)
    }

    /// Build a weight of this rank from small integer coefficients.
    pub fn weight(&self, coeffs: &[i64]) -> Result<Weight> {
        let w = Weight::from_i64s(coeffs);
        self.check(&w)?;
        Ok(w)
    }

    pub fn check(&self, mu: &Weight) -> Result<()> {
        if mu.rank() != self.rank() {
            return Err(Error::RankMismatch {
                weight: mu.rank(),
                roots: self.rank(),
            });
        }
        Ok(())
    }

    pub fn root(&self, i: usize, j: usize) -> Result<PositiveRoot> {
        if i == 0 || i >= j || j > self.n {
            return Err(Error::InvalidRoot {
                i,
                j,
                rank: self.rank(),
            });
        }
        Ok(PositiveRoot { i, j })
    }
}

/// Integer weight `sum a_i omega_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coeffs: Vec<BigInt>,
}

impl Weight {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); rank],
        }
    }

    /// `omega_i`, 1-based.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coeffs[i - 1] = BigInt::from(1);
        w
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `omega_i`, 1-based; `omega_0 = omega_n = 0`.
    pub fn coeff(&self, i: usize) -> BigInt {
        if i == 0 || i > self.rank() {
            BigInt::zero()
        } else {
            self.coeffs[i - 1].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn scale<T: Into<BigInt>>(&self, k: T) -> Weight {
        let k = k.into();
        Weight {
            coeffs: self.coeffs.iter().map(|c| c * &k).collect(),
        }
    }

    fn zip_with(&self, other: &Weight, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Weight {
        assert_eq!(self.rank(), other.rank(), "weight rank mismatch");
        Weight {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Display for Weight {
    /// Prints in the omega basis, e.g. `3w1 + w2`, `-2w1 + w2`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != BigInt::from(1) {
                write!(f, "{mag}")?;
            }
            write!(f, "w{}", idx + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scale(self)
    }
}

/// `L_i - L_j` with `1 <= i < j <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PositiveRoot {
    i: usize,
    j: usize,
}

impl PositiveRoot {
    /// `alpha_i = L_i - L_{i+1}`.
    pub fn simple(i: usize) -> Self {
        assert!(i >= 1, "simple roots are 1-based");
        Self { i, j: i + 1 }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn is_simple(&self) -> bool {
        self.j == self.i + 1
    }

    /// Index of a simple root.
    pub fn simple_index(&self) -> Result<usize> {
        if self.is_simple() {
            Ok(self.i)
        } else {
            Err(Error::NotSimple {
                i: self.i,
                j: self.j,
            })
        }
    }

    /// The root as a weight: `L_i - L_j = w_i - w_{i-1} - w_j + w_{j-1}`.
    pub fn to_weight(&self, rank: usize) -> Weight {
        let mut w = Weight::zero(rank);
        let mut bump = |k: usize, d: i64| {
            if k >= 1 && k <= rank {
                w.coeffs[k - 1] += d;
            }
        };
        bump(self.i, 1);
        bump(self.i - 1, -1);
        bump(self.j, -1);
        bump(self.j - 1, 1);
        w
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if self.j > rank + 1 {
            return Err(Error::RankMismatch {
                weight: rank,
                roots: self.j - 1,
            });
        }
        Ok(())
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_simple() {
            write!(f, "alpha_{}", self.i)
        } else {
            write!(f, "L{} - L{}", self.i, self.j)
        }
    }
}

/// `<mu, beta^vee> = a_i + ... + a_{j-1}`.
pub fn pairing(mu: &Weight, beta: PositiveRoot) -> Result<BigInt> {
    beta.check_rank(mu.rank())?;
    Ok(mu.coeffs[beta.i - 1..beta.j - 1].iter().sum())
}

/// Half the sum of positive roots, which is the sum of fundamental weights.
pub fn rho(rs: RootSystemA) -> Weight {
    Weight {
        coeffs: vec![BigInt::from(1); rs.rank()],
    }
}

/// `s_alpha(mu) = mu - <mu, alpha^vee> alpha`.
pub fn simple_reflection(mu: &Weight, alpha: PositiveRoot) -> Result<Weight> {
    alpha.simple_index()?;
    let c = pairing(mu, alpha)?;
    Ok(mu - &alpha.to_weight(mu.rank()).scale(c))
}

/// `s_alpha . mu = s_alpha(mu + rho) - rho = mu - (<mu, alpha^vee> + 1) alpha`.
pub fn dot_reflection(mu: &Weight, alpha: PositiveRoot) -> Result<Weight> {
    alpha.simple_index()?;
    let c = pairing(mu, alpha)? + 1;
    Ok(mu - &alpha.to_weight(mu.rank()).scale(c))
}

/// Simple-root indices with positive coefficient in `beta`.
pub fn support(beta: PositiveRoot) -> Vec<usize> {
    (beta.i..beta.j).collect()
}

/// Representative `(b_1, ..., b_n)` with `b_i - b_{i+1} = a_i` and `b_n = 0`.
pub fn to_l_coordinates(mu: &Weight) -> Vec<BigInt> {
    let n = mu.rank() + 1;
    let mut b = vec![BigInt::zero(); n];
    for k in (0..n - 1).rev() {
        b[k] = &b[k + 1] + &mu.coeffs[k];
    }
    b
}

/// Inverse of [`to_l_coordinates`]; any representative is accepted.
pub fn from_l_coordinates(b: &[BigInt]) -> Weight {
    Weight {
        coeffs: b.windows(2).map(|w| &w[0] - &w[1]).collect(),
    }
}
