use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixed::RamificationType;

use super::divisor::DivisorExpression;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RamKind {
    Wild,
    Fierce,
}

/// Ramification of `Z/p` along one upstairs divisor, with `e` and the
/// different derived from `(i, kind, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationDatum {
    pub divisor: String,
    pub image: String,
    pub i: i64,
    pub kind: RamKind,
    pub p: u64,
    pub e: i64,
    pub different: i64,
}

impl RamificationDatum {
    pub fn new(divisor: &str, image: &str, i: i64, kind: RamKind, p: u64) -> Result<Self> {
        if i < 1 {
            return Err(Error::DivisorNotFixed(format!("{divisor}: i = {i}")));
        }
        let (e, different) = derive(i, kind, p);
        Ok(RamificationDatum {
            divisor: divisor.to_string(),
            image: image.to_string(),
            i,
            kind,
            p,
            e,
            different,
        })
    }

    pub fn from_type(divisor: &str, image: &str, t: &RamificationType, p: u64) -> Result<Self> {
        let kind = match t {
            RamificationType::Wild { .. } => RamKind::Wild,
            RamificationType::Fierce { .. } => RamKind::Fierce,
            RamificationType::Ambiguous { i, u } => {
                return Err(Error::Ramification(format!(
                    "{divisor}: cannot tell wild from fierce (i = {i}, swan bound {u})"
                )))
            }
        };
        let d = RamificationDatum::new(divisor, image, t.artin(), kind, p)?;
        if t.ramification_index() != Some(d.e as u64) {
            return Err(Error::Ramification(format!(
                "{divisor}: index disagrees with kind"
            )));
        }
        Ok(d)
    }

    fn check(&self) -> Result<()> {
        let (e, d) = derive(self.i, self.kind, self.p);
        if (e, d) != (self.e, self.different) {
            return Err(Error::Ramification(format!(
                "{}: stored (e, d) = ({}, {}) but (i, kind, p) give ({e}, {d})",
                self.divisor, self.e, self.different
            )));
        }
        Ok(())
    }
}

fn derive(i: i64, kind: RamKind, p: u64) -> (i64, i64) {
    let e = match kind {
        RamKind::Wild => p as i64,
        RamKind::Fierce => 1,
    };
    (e, (p as i64 - 1) * i)
}

fn datum_for<'a>(ram: &'a [RamificationDatum], name: &str) -> Result<&'a RamificationDatum> {
    ram.iter()
        .find(|r| r.divisor == name)
        .ok_or_else(|| Error::Ledger(format!("no ramification datum for {name}")))
}

/// Downstairs coefficients `a = (b - d) / e`, placed on the image divisors
/// over the base `base_down`.
pub fn quotient_descend(
    k_up: &DivisorExpression,
    ram: &[RamificationDatum],
    base_down: &str,
) -> Result<DivisorExpression> {
    let mut out = DivisorExpression::new(Some(base_down));
    for (name, b) in k_up.terms() {
        let r = datum_for(ram, name)?;
        r.check()?;
        let num = b - r.different;
        if num % r.e != 0 {
            return Err(Error::Ledger(format!(
                "{name}: ({b} - {}) / {} is not an integer",
                r.different, r.e
            )));
        }
        out.add_term(&r.image, num / r.e);
    }
    Ok(out)
}

/// `f*` of a downstairs class, using `f*F = e E`.
pub fn pullback_quotient(
    k_down: &DivisorExpression,
    ram: &[RamificationDatum],
    base_up: &str,
) -> Result<DivisorExpression> {
    let mut out = DivisorExpression::new(Some(base_up));
    for (image, a) in k_down.terms() {
        let r = ram
            .iter()
            .find(|r| r.image == image)
            .ok_or_else(|| Error::Ledger(format!("no ramification datum over {image}")))?;
        out.add_term(&r.divisor, a * r.e);
    }
    Ok(out)
}

pub fn different_divisor(ram: &[RamificationDatum]) -> DivisorExpression {
    let mut out = DivisorExpression::new(None);
    for r in ram {
        out.add_term(&r.divisor, r.different);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityClass {
    None,
    Klt,
    Canonical,
    Terminal,
}

impl SingularityClass {
    pub fn label(&self) -> &'static str {
        match self {
            SingularityClass::None => "none",
            SingularityClass::Klt => "klt",
            SingularityClass::Canonical => "canonical",
            SingularityClass::Terminal => "terminal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: SingularityClass,
    pub min_discrepancy: Option<i64>,
    pub warning: Option<String>,
}

/// Thresholds `> 0`, `>= 0`, `> -1`. On integer coefficients the last two
/// agree, so `Klt` is unreachable here but kept for callers comparing classes.
pub fn classify_singularity(k_down: &DivisorExpression) -> Classification {
    let min = k_down.terms().map(|(_, a)| a).min();
    let (class, warning) = match min {
        None => (
            SingularityClass::Terminal,
            Some("no exceptional divisors: terminal vacuously".to_string()),
        ),
        Some(a) if a > 0 => (SingularityClass::Terminal, None),
        Some(a) if a >= 0 => (SingularityClass::Canonical, None),
        Some(a) if a > -1 => (SingularityClass::Klt, None),
        Some(_) => (SingularityClass::None, None),
    };
    Classification {
        class,
        min_discrepancy: min,
        warning,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn star_up() -> DivisorExpression {
        let mut k = DivisorExpression::new(Some("pi*K_Y0")).with("E0", 2);
        for j in 1..=7 {
            k.add_term(&format!("E{j}"), 4);
        }
        k
    }

    fn star_ram() -> Vec<RamificationDatum> {
        let mut ram = vec![RamificationDatum::new("E0", "F0", 1, RamKind::Fierce, 2).unwrap()];
        for j in 1..=7 {
            ram.push(
                RamificationDatum::new(&format!("E{j}"), &format!("F{j}"), 2, RamKind::Wild, 2)
                    .unwrap(),
            );
        }
        ram
    }

    #[test]
    fn descends_to_all_ones() {
        let down = quotient_descend(&star_up(), &star_ram(), "pi*K_X").unwrap();
        assert_eq!(
            down.to_string(),
            "pi*K_X + F0 + F1 + F2 + F3 + F4 + F5 + F6 + F7"
        );
        let c = classify_singularity(&down);
        assert_eq!(c.class, SingularityClass::Terminal);
        assert_eq!(c.min_discrepancy, Some(1));
    }

    #[test]
    fn round_trip() {
        let ram = star_ram();
        let down = quotient_descend(&star_up(), &ram, "pi*K_X").unwrap();
        let back = pullback_quotient(&down, &ram, "pi*K_Y0")
            .unwrap()
            .plus(&different_divisor(&ram));
        assert_eq!(back, star_up());
    }

    #[test]
    fn non_integral_rejected() {
        let k = DivisorExpression::new(Some("K")).with("E", 3);
        let ram = [RamificationDatum::new("E", "F", 2, RamKind::Wild, 2).unwrap()];
        assert!(quotient_descend(&k, &ram, "K'").is_err());
    }

    #[test]
    fn tampered_datum_rejected() {
        let k = DivisorExpression::new(Some("K")).with("E", 4);
        let mut r = RamificationDatum::new("E", "F", 2, RamKind::Wild, 2).unwrap();
        r.e = 1;
        assert!(quotient_descend(&k, &[r], "K'").is_err());
        assert!(quotient_descend(&k, &[], "K'").is_err());
    }

    #[test]
    fn trivial_quotient() {
        let k = DivisorExpression::new(Some("K")).with("E", 3).with("G", -2);
        let ram = [
            RamificationDatum::new("E", "E", 1, RamKind::Fierce, 1).unwrap(),
            RamificationDatum::new("G", "G", 5, RamKind::Wild, 1).unwrap(),
        ];
        assert_eq!(quotient_descend(&k, &ram, "K").unwrap(), k);
    }

    #[test]
    fn thresholds() {
        let canon = DivisorExpression::new(None).with("F0", 1).with("F1", 0);
        assert_eq!(
            classify_singularity(&canon).class,
            SingularityClass::Canonical
        );
        let ones = DivisorExpression::new(None).with("F0", 1).with("F1", 2);
        assert_eq!(
            classify_singularity(&ones).class,
            SingularityClass::Terminal
        );
        let neg = DivisorExpression::new(None).with("F0", 1).with("F1", -1);
        assert_eq!(classify_singularity(&neg).class, SingularityClass::None);
        let empty = classify_singularity(&DivisorExpression::new(Some("K")));
        assert_eq!(empty.class, SingularityClass::Terminal);
        assert!(empty.warning.is_some());
    }

    fn arb_down() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-3i64..4, 1..6)
    }

    proptest! {
        #[test]
        fn monotone(coeffs in arb_down(), pick in 0usize..6, bump in 1i64..4) {
            let build = |cs: &[i64]| {
                let mut d = DivisorExpression::new(None);
                for (j, &c) in cs.iter().enumerate() {
                    d.add_term(&format!("F{j}"), c);
                }
                d
            };
            let before = classify_singularity(&build(&coeffs));
            let mut up = coeffs.clone();
            let j = pick % up.len();
            up[j] += bump;
            let after = classify_singularity(&build(&up));
            prop_assert!(after.class >= before.class);
        }

        #[test]
        fn descend_round_trips(a in prop::collection::vec(-3i64..5, 1..5), p in prop::sample::select(vec![2u64, 3, 5]),
                               kinds in prop::collection::vec((1i64..4, prop::bool::ANY), 5)) {
            let mut ram = Vec::new();
            let mut down = DivisorExpression::new(Some("K_X"));
            for (j, &aj) in a.iter().enumerate() {
                let (i, wild) = kinds[j];
                let kind = if wild { RamKind::Wild } else { RamKind::Fierce };
                ram.push(RamificationDatum::new(&format!("E{j}"), &format!("F{j}"), i, kind, p).unwrap());
                down.add_term(&format!("F{j}"), aj);
            }
            let up = pullback_quotient(&down, &ram, "K_Y").unwrap().plus(&different_divisor(&ram));
            let again = quotient_descend(&up, &ram, "K_X").unwrap();
            prop_assert_eq!(again, down);
        }
    }
}
