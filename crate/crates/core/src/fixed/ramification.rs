use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

use super::chart::ChartAction;
use super::poly::PolyFp;
use super::rational::RatFp;

/// Order of vanishing; `Infinite` for the zero function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, o: Valuation) -> Valuation {
        match (self, o) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `ord_t(num) - ord_t(den)`, with `t` the `t`-th coordinate.
pub fn divisor_valuation(f: &RatFp, t: usize) -> Valuation {
    if f.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(f.num().ord(t) as i64 - f.den().ord(t) as i64)
}

fn coord_minus_sigma(c: &ChartAction, i: usize) -> RatFp {
    let x = RatFp::from_poly(PolyFp::var(c.p(), c.nvars(), i));
    c.sigma()[i].sub(&x)
}

/// `i(sigma) = min over coordinates x of v_t(sigma(x) - x)`.
pub fn artin_number(c: &ChartAction, t: &str) -> Result<Valuation> {
    let ti = c.index_of(t)?;
    Ok((0..c.nvars())
        .map(|i| divisor_valuation(&coord_minus_sigma(c, i), ti))
        .min()
        .unwrap())
}

/// `u = min over coordinates x of v_t(sigma(x)/x - 1)`, an upper bound for
/// the Swan number.
pub fn swan_bound(c: &ChartAction, t: &str) -> Result<Valuation> {
    let ti = c.index_of(t)?;
    let mut best = Valuation::Infinite;
    for i in 0..c.nvars() {
        let x = RatFp::from_poly(PolyFp::var(c.p(), c.nvars(), i));
        let v = divisor_valuation(&coord_minus_sigma(c, i).div(&x)?, ti);
        best = best.min(v);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RamificationType {
    /// `i = s`, `e = 1`, inseparable residue extension of degree `p`.
    Fierce { i: i64, s: i64, e: u64, f: u64 },
    /// `i = s + 1`, `e = p`.
    Wild { i: i64, s: i64, e: u64, f: u64 },
    /// The bound `u >= i` leaves both cases open.
    Ambiguous { i: i64, u: Valuation },
}

impl RamificationType {
    pub fn ramification_index(&self) -> Option<u64> {
        match self {
            RamificationType::Fierce { e, .. } | RamificationType::Wild { e, .. } => Some(*e),
            RamificationType::Ambiguous { .. } => None,
        }
    }

    pub fn artin(&self) -> i64 {
        match self {
            RamificationType::Fierce { i, .. }
            | RamificationType::Wild { i, .. }
            | RamificationType::Ambiguous { i, .. } => *i,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            RamificationType::Fierce { .. } => "fierce",
            RamificationType::Wild { .. } => "wild",
            RamificationType::Ambiguous { .. } => "ambiguous",
        }
    }
}

/// Decide from the Artin number `i` and a Swan upper bound `u`, using
/// `s > 0`, `s <= u` and `s in {i - 1, i}`.
pub fn classify_from_bounds(p: u64, i: i64, u: Valuation) -> Result<RamificationType> {
    if i < 1 {
        return Err(Error::DivisorNotFixed(i.to_string()));
    }
    if i == 1 {
        return Ok(RamificationType::Fierce {
            i,
            s: 1,
            e: 1,
            f: p,
        });
    }
    match u {
        Valuation::Finite(u) if u == i - 1 => Ok(RamificationType::Wild {
            i,
            s: i - 1,
            e: p,
            f: 1,
        }),
        Valuation::Finite(u) if u < i - 1 => Err(Error::Ramification(format!(
            "Swan bound {u} below i - 1 = {}",
            i - 1
        ))),
        u => Ok(RamificationType::Ambiguous { i, u }),
    }
}

pub fn swan_classify(c: &ChartAction, t: &str, i: Valuation) -> Result<RamificationType> {
    let i = match i {
        Valuation::Finite(i) => i,
        Valuation::Infinite => {
            return Err(Error::DivisorNotFixed(
                "inf (sigma is trivial along the divisor)".into(),
            ))
        }
    };
    if i < 1 {
        return Err(Error::DivisorNotFixed(i.to_string()));
    }
    let u = if i == 1 {
        Valuation::Infinite
    } else {
        swan_bound(c, t)?
    };
    classify_from_bounds(c.p(), i, u)
}

/// Coefficient `(p - 1) i` of the divisor in the different.
pub fn different_coefficient(p: u64, i: i64) -> Result<i64> {
    if i < 1 {
        return Err(Error::DivisorNotFixed(i.to_string()));
    }
    Ok((p as i64 - 1) * i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const NAMES: [&str; 3] = ["y1", "v2", "v3"];

    fn r(n: &str, d: &str) -> RatFp {
        RatFp::parse(2, &NAMES, n, d).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(
            divisor_valuation(&r("y1^2", "y1 + 1"), 0),
            Valuation::Finite(2)
        );
        assert_eq!(
            divisor_valuation(&r("y1", "y1 + 1"), 0),
            Valuation::Finite(1)
        );
        assert_eq!(
            divisor_valuation(&r("y1 + 1", "1"), 1),
            Valuation::Finite(0)
        );
        assert_eq!(divisor_valuation(&r("0", "1"), 0), Valuation::Infinite);
    }

    fn chart_v1() -> ChartAction {
        ChartAction::parse(
            2,
            &NAMES,
            &[
                ("y1", "y1 + 1"),
                ("v2*y1^2 + v2", "y1^2*v2 + 1"),
                ("v3*y1^2 + v3", "y1^2*v3 + 1"),
            ],
            &["y1 + 1", "y1^2*v2 + 1", "y1^2*v3 + 1"],
        )
        .unwrap()
    }

    #[test]
    fn wild_along_second_exceptional() {
        let c = chart_v1();
        let i = artin_number(&c, "y1").unwrap();
        assert_eq!(i, Valuation::Finite(2));
        assert_eq!(swan_bound(&c, "y1").unwrap(), Valuation::Finite(1));
        let t = swan_classify(&c, "y1", i).unwrap();
        assert_eq!(
            t,
            RamificationType::Wild {
                i: 2,
                s: 1,
                e: 2,
                f: 1
            }
        );
    }

    #[test]
    fn formal_rules() {
        assert_eq!(
            classify_from_bounds(2, 3, Valuation::Finite(2)).unwrap(),
            RamificationType::Wild {
                i: 3,
                s: 2,
                e: 2,
                f: 1
            }
        );
        assert_eq!(
            classify_from_bounds(2, 1, Valuation::Infinite).unwrap(),
            RamificationType::Fierce {
                i: 1,
                s: 1,
                e: 1,
                f: 2
            }
        );
        assert!(classify_from_bounds(2, 4, Valuation::Finite(1)).is_err());
        assert!(classify_from_bounds(2, 0, Valuation::Finite(1)).is_err());
    }

    #[test]
    fn ambiguous_is_surfaced() {
        // 1/t -> 1/t + u^3, trivial on u: along u = 0, i = 3 and every
        // coordinate gives u >= 3
        let c = ChartAction::parse(
            2,
            &["t", "u"],
            &[("t", "u^3*t + 1"), ("u", "1")],
            &["u^3*t + 1"],
        )
        .unwrap();
        let i = artin_number(&c, "u").unwrap();
        assert_eq!(i, Valuation::Finite(3));
        assert!(matches!(
            swan_classify(&c, "u", i).unwrap(),
            RamificationType::Ambiguous { i: 3, .. }
        ));
    }

    #[test]
    fn identity_has_infinite_artin_number() {
        let c = ChartAction::identity(2, &["a", "b"]).unwrap();
        assert_eq!(artin_number(&c, "a").unwrap(), Valuation::Infinite);
        assert!(swan_classify(&c, "a", Valuation::Infinite).is_err());
        assert!(artin_number(&c, "z").is_err());
    }

    #[test]
    fn differents() {
        assert_eq!(different_coefficient(2, 1).unwrap(), 1);
        assert_eq!(different_coefficient(2, 2).unwrap(), 2);
        assert_eq!(different_coefficient(5, 3).unwrap(), 12);
        assert!(different_coefficient(3, 0).is_err());
    }

    fn arb_factor() -> impl Strategy<Value = RatFp> {
        (0u32..4, 0u32..3, prop::bool::ANY).prop_map(|(a, b, unit)| {
            let mono = format!("y1^{a}*v2^{b}");
            let num = if unit {
                format!("{mono} + y1^{}*v3", a + 1)
            } else {
                mono
            };
            r(&num, "y1*v2 + 1")
        })
    }

    proptest! {
        #[test]
        fn valuation_additive(f in arb_factor(), g in arb_factor(), t in 0usize..3) {
            let prod = f.mul(&g);
            prop_assert_eq!(divisor_valuation(&prod, t), divisor_valuation(&f, t) + divisor_valuation(&g, t));
        }
    }
}
