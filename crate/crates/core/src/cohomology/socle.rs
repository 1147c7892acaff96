use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::schur::DimValue;
use crate::weight::{PositiveRoot, RootSystemA, Weight};

use super::profile::{gb_profile, Rule, RuleFiring};

/// `L(p w_a + w_b) = L(w_a)^[1] (x) L(w_b) = Lambda^a(V)^[1] (x) Lambda^b(V)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SteinbergDatum {
    pub a: usize,
    pub b: usize,
    pub n: usize,
}

impl SteinbergDatum {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        if a == b {
            return Err(Error::UnsupportedShape(format!(
                "p*w{a} + w{b}: the two indices coincide"
            )));
        }
        if a == 0 || b == 0 || a >= n || b >= n {
            return Err(Error::UnsupportedShape(format!(
                "indices {a}, {b} out of range for SL({n})"
            )));
        }
        Ok(SteinbergDatum { a, b, n })
    }

    /// Recognise `lambda = p w_a + w_b`.
    pub fn from_weight(rs: RootSystemA, p: u64, lambda: &Weight) -> Result<Self> {
        rs.check(lambda)?;
        let pb = BigInt::from(p);
        let mut a = None;
        let mut b = None;
        for i in 1..=rs.rank() {
            let c = lambda.coeff(i);
            if c.is_zero() {
                continue;
            }
            if c == pb && a.is_none() {
                a = Some(i);
            } else if c.is_one() && b.is_none() {
                b = Some(i);
            } else {
                return Err(Error::UnsupportedShape(format!(
                    "{lambda} is not p*w_a + w_b"
                )));
            }
        }
        match (a, b) {
            (Some(a), Some(b)) => SteinbergDatum::new(a, b, rs.n()),
            _ => Err(Error::UnsupportedShape(format!(
                "{lambda} is not p*w_a + w_b with a != b"
            ))),
        }
    }
}

pub fn steinberg_dim(d: SteinbergDatum) -> DimValue {
    DimValue(binomial(d.n as u64, d.a as u64) * binomial(d.n as u64, d.b as u64))
}

/// Lower bound on how much of `H^0(lambda)` the connecting map kills.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelWitness {
    /// The simple socle `L(lambda)` maps to zero.
    Steinberg {
        datum: SteinbergDatum,
        #[serde(serialize_with = "crate::ser::big_uint")]
        dim: BigUint,
    },
    /// The `lambda` weight line does not occur in `H^0(lambda - alpha)`.
    HighestWeight,
    /// `H^0(lambda) = 0`.
    EmptySource,
}

impl KernelWitness {
    pub fn killed(&self) -> BigUint {
        match self {
            KernelWitness::Steinberg { dim, .. } => dim.clone(),
            KernelWitness::HighestWeight => BigUint::one(),
            KernelWitness::EmptySource => BigUint::zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SocleBound {
    #[serde(serialize_with = "crate::ser::big_int")]
    pub bound: BigInt,
    #[serde(serialize_with = "crate::ser::big_uint")]
    pub h0_source: BigUint,
    #[serde(serialize_with = "crate::ser::big_uint")]
    pub h1_target: BigUint,
    pub witness: KernelWitness,
    pub certificate: RuleFiring,
}

impl SocleBound {
    pub fn is_positive(&self) -> bool {
        self.bound.is_positive()
    }
}

/// `h^1(G/P, L) >= h^1(lambda - p alpha) - rank(phi)` where
/// `phi: H^0(lambda) -> H^1(lambda - p alpha) = H^0(lambda - alpha)` and
/// `rank(phi) <= h^0(lambda) - (dimension of something phi kills)`.
///
/// `lambda` must be of the form `p w_a + w_b`, another dominant weight
/// (only the highest weight line is then known to die), or a weight with
/// `H^0 = 0`.
pub fn socle_h1_bound(
    rs: RootSystemA,
    p: u64,
    lambda: &Weight,
    alpha: PositiveRoot,
) -> Result<SocleBound> {
    alpha.simple_index()?;
    let low = lambda - &alpha.to_weight(rs.rank()).scale(p);
    let src = gb_profile(rs, p, lambda);
    let tgt = gb_profile(rs, p, &low);
    if !src.is_exact() || !tgt.is_exact() {
        return Err(Error::UnsupportedShape(format!(
            "cohomology of {lambda} or {low} is not determined"
        )));
    }
    if src.support().iter().any(|&i| i != 0) || tgt.support().iter().any(|&i| i != 1) {
        return Err(Error::UnsupportedShape(format!(
            "H({lambda}) not in degree 0 or H({low}) not in degree 1"
        )));
    }
    let h0 = src.entry(0).lower();
    let h1 = tgt.entry(1).lower();
    let (witness, rule) = if h0.is_zero() {
        (KernelWitness::EmptySource, Rule::LongExactSequence)
    } else {
        match SteinbergDatum::from_weight(rs, p, lambda) {
            Ok(datum) => {
                let dim = steinberg_dim(datum).0;
                (
                    KernelWitness::Steinberg { datum, dim },
                    Rule::SteinbergSocle,
                )
            }
            Err(_) if lambda.is_dominant() => {
                (KernelWitness::HighestWeight, Rule::HighestWeightOccurrence)
            }
            Err(e) => return Err(e),
        }
    };
    let killed = witness.killed();
    if killed > h0 {
        return Err(Error::Inconsistent(format!("kills {killed} > h0 = {h0}")));
    }
    let rank_cap = &h0 - &killed;
    let bound = BigInt::from(h1.clone()) - BigInt::from(rank_cap.clone());
    let certificate = RuleFiring::new(rule, format!("h1 >= {h1} - ({h0} - {killed}) = {bound}"));
    Ok(SocleBound {
        bound,
        h0_source: h0,
        h1_target: h1,
        witness,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(n: usize) -> RootSystemA {
        RootSystemA::new(n).unwrap()
    }

    #[test]
    fn steinberg_dims() {
        let r = rs(5);
        let lambda = r.weight(&[3, 1, 0, 0]).unwrap();
        let d = SteinbergDatum::from_weight(r, 3, &lambda).unwrap();
        assert_eq!((d.a, d.b, d.n), (1, 2, 5));
        assert_eq!(steinberg_dim(d).0, BigUint::from(50u32));
        let d4 = SteinbergDatum::from_weight(rs(4), 7, &Weight::from_i64s(&[7, 1, 0])).unwrap();
        assert_eq!(steinberg_dim(d4).0, BigUint::from(24u32));
        let d7 = SteinbergDatum::new(1, 2, 7).unwrap();
        assert_eq!(steinberg_dim(d7).0, BigUint::from(147u32));
    }

    #[test]
    fn steinberg_rejects_equal_indices() {
        // (p + 1) w1
        let r = rs(5);
        assert!(SteinbergDatum::from_weight(r, 3, &r.weight(&[4, 0, 0, 0]).unwrap()).is_err());
        assert!(SteinbergDatum::new(2, 2, 5).is_err());
        assert!(SteinbergDatum::from_weight(r, 3, &r.weight(&[3, 0, 0, 0]).unwrap()).is_err());
    }

    #[test]
    fn socle_bound_p3() {
        let r = rs(5);
        let b = socle_h1_bound(
            r,
            3,
            &r.weight(&[3, 1, 0, 0]).unwrap(),
            PositiveRoot::simple(1),
        )
        .unwrap();
        assert_eq!(b.h0_source, BigUint::from(224u32));
        assert_eq!(b.h1_target, BigUint::from(175u32));
        assert_eq!(b.bound, BigInt::from(1));
        assert_eq!(b.certificate.rule, Rule::SteinbergSocle);
    }

    #[test]
    fn socle_bound_p5_weaker_than_euler() {
        let r = rs(7);
        let b = socle_h1_bound(
            r,
            5,
            &r.weight(&[5, 1, 0, 0, 0, 0]).unwrap(),
            PositiveRoot::simple(1),
        )
        .unwrap();
        assert_eq!(b.bound, BigInt::from(1863));
    }

    #[test]
    fn occurrence_variant() {
        let r = rs(4);
        let b = socle_h1_bound(
            r,
            3,
            &r.weight(&[3, 0, 0]).unwrap(),
            PositiveRoot::simple(1),
        )
        .unwrap();
        assert_eq!(b.witness, KernelWitness::HighestWeight);
        assert_eq!(b.h0_source, BigUint::from(20u32));
        assert_eq!(b.h1_target, BigUint::from(20u32));
        assert_eq!(b.bound, BigInt::from(1));
    }

    #[test]
    fn empty_source_at_p2() {
        let r = rs(4);
        let b = socle_h1_bound(
            r,
            2,
            &r.weight(&[2, -1, 0]).unwrap(),
            PositiveRoot::simple(1),
        )
        .unwrap();
        assert_eq!(b.witness, KernelWitness::EmptySource);
        assert_eq!(b.bound, BigInt::from(1));
    }
}
