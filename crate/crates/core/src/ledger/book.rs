use serde::Serialize;

use crate::error::{Error, Result};

use super::divisor::DivisorExpression;

/// One blown-up center and the exceptional divisor it produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupCenter {
    pub codim: u32,
    pub new: String,
    /// Existing divisors containing the center (each smooth there).
    pub lies_on: Vec<String>,
}

impl BlowupCenter {
    pub fn point(dim: u32, new: &str, lies_on: &[&str]) -> Self {
        BlowupCenter {
            codim: dim,
            new: new.to_string(),
            lies_on: lies_on.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// `old` is renamed to `new` after a blow-up (strict transform).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rename {
    pub old: String,
    pub new: String,
}

/// `K + (codim - 1) new`, after rewriting existing terms by the pullback
/// relations `pi*D = expr`.
pub fn blowup_canonical(
    k: &DivisorExpression,
    codim: u32,
    new: &str,
    relations: &[(String, DivisorExpression)],
) -> Result<DivisorExpression> {
    if codim < 2 {
        return Err(Error::Ledger(format!(
            "blow-up center of codimension {codim} < 2"
        )));
    }
    let mut out = k.clone();
    for (d, expr) in relations {
        out = out.substitute(d, expr);
    }
    out.add_term(new, codim as i64 - 1);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorRecord {
    pub name: String,
    pub round: usize,
    /// Divisors (current names) that contained the center producing it.
    pub parents: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackRelation {
    pub round: usize,
    pub divisor: String,
    pub pullback: DivisorExpression,
}

/// The canonical class of a tower of blow-ups of a smooth variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ledger {
    base: String,
    canonical: DivisorExpression,
    divisors: Vec<DivisorRecord>,
    relations: Vec<PullbackRelation>,
    history: Vec<DivisorExpression>,
    rounds: usize,
}

impl Ledger {
    /// Start from `K_base`, written `pi*K_base` after any blow-up.
    pub fn new(base: &str) -> Self {
        let canonical = DivisorExpression::new(Some(&format!("pi*{base}")));
        Ledger {
            base: base.to_string(),
            canonical: canonical.clone(),
            divisors: Vec::new(),
            relations: Vec::new(),
            history: vec![canonical],
            rounds: 0,
        }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn canonical(&self) -> &DivisorExpression {
        &self.canonical
    }

    pub fn history(&self) -> &[DivisorExpression] {
        &self.history
    }

    pub fn divisors(&self) -> &[DivisorRecord] {
        &self.divisors
    }

    pub fn relations(&self) -> &[PullbackRelation] {
        &self.relations
    }

    pub fn exceptional_names(&self) -> Vec<String> {
        self.divisors.iter().map(|d| d.name.clone()).collect()
    }

    /// Blow up disjoint centers simultaneously and apply strict-transform
    /// renames. Returns the new canonical class.
    pub fn blowup(
        &mut self,
        centers: &[BlowupCenter],
        renames: &[Rename],
    ) -> Result<DivisorExpression> {
        let known = self.exceptional_names();
        for c in centers {
            if known.contains(&c.new) || centers.iter().filter(|d| d.new == c.new).count() > 1 {
                return Err(Error::Ledger(format!("divisor {} already exists", c.new)));
            }
            if let Some(missing) = c.lies_on.iter().find(|d| !known.contains(d)) {
                return Err(Error::Ledger(format!(
                    "center of {} lies on unknown {missing}",
                    c.new
                )));
            }
        }
        for r in renames {
            if !known.contains(&r.old) {
                return Err(Error::Ledger(format!(
                    "cannot rename unknown divisor {}",
                    r.old
                )));
            }
        }
        self.rounds += 1;
        let rename_of = |name: &str| -> String {
            renames
                .iter()
                .find(|r| r.old == name)
                .map_or(name.to_string(), |r| r.new.clone())
        };
        // pi*D = D' + sum of new divisors over centers on D
        let mut rels = Vec::new();
        for d in &known {
            let mut expr = DivisorExpression::divisor(&rename_of(d));
            for c in centers.iter().filter(|c| c.lies_on.contains(d)) {
                expr.add_term(&c.new, 1);
            }
            rels.push((d.clone(), expr));
        }
        let mut k = self.canonical.clone();
        for (i, c) in centers.iter().enumerate() {
            let r: &[(String, DivisorExpression)] = if i == 0 { &rels } else { &[] };
            k = blowup_canonical(&k, c.codim, &c.new, r)?;
        }
        if centers.is_empty() {
            for (d, expr) in &rels {
                k = k.substitute(d, expr);
            }
        }
        for (d, expr) in rels {
            if expr != DivisorExpression::divisor(&d) {
                self.relations.push(PullbackRelation {
                    round: self.rounds,
                    divisor: d,
                    pullback: expr,
                });
            }
        }
        for rec in &mut self.divisors {
            rec.name = rename_of(&rec.name);
            for p in &mut rec.parents {
                *p = rename_of(p);
            }
        }
        for c in centers {
            self.divisors.push(DivisorRecord {
                name: c.new.clone(),
                round: self.rounds,
                parents: c.lies_on.iter().map(|p| rename_of(p)).collect(),
            });
        }
        self.canonical = k.clone();
        self.history.push(k.clone());
        Ok(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star_ledger() -> Ledger {
        let mut l = Ledger::new("K_Y0");
        l.blowup(&[BlowupCenter::point(3, "E", &[])], &[]).unwrap();
        let centers: Vec<BlowupCenter> = (1..=7)
            .map(|j| BlowupCenter::point(3, &format!("E{j}"), &["E"]))
            .collect();
        l.blowup(
            &centers,
            &[Rename {
                old: "E".into(),
                new: "E0".into(),
            }],
        )
        .unwrap();
        l
    }

    #[test]
    fn point_blowup_in_threefold() {
        let mut l = Ledger::new("K_Y0");
        let k = l.blowup(&[BlowupCenter::point(3, "E", &[])], &[]).unwrap();
        assert_eq!(k.to_string(), "pi*K_Y0 + 2E");
    }

    #[test]
    fn seven_points_on_e() {
        let l = star_ledger();
        assert_eq!(
            l.canonical().to_string(),
            "pi*K_Y0 + 2E0 + 4E1 + 4E2 + 4E3 + 4E4 + 4E5 + 4E6 + 4E7"
        );
        let rel = &l.relations()[0];
        assert_eq!(rel.divisor, "E");
        assert_eq!(
            rel.pullback.to_string(),
            "E0 + E1 + E2 + E3 + E4 + E5 + E6 + E7"
        );
    }

    #[test]
    fn codim_two_and_errors() {
        let k = DivisorExpression::new(Some("pi*K"));
        assert_eq!(
            blowup_canonical(&k, 2, "E", &[]).unwrap().to_string(),
            "pi*K + E"
        );
        assert!(blowup_canonical(&k, 1, "E", &[]).is_err());
        let mut l = Ledger::new("K");
        assert!(l
            .blowup(&[BlowupCenter::point(3, "E", &["Z"])], &[])
            .is_err());
    }

    #[test]
    fn substitution_is_confluent() {
        let k = DivisorExpression::new(Some("pi*K"))
            .with("A", 2)
            .with("B", 3);
        let ra = (
            "A".to_string(),
            DivisorExpression::divisor("A0").with("C1", 1),
        );
        let rb = (
            "B".to_string(),
            DivisorExpression::divisor("B0").with("C1", 1).with("C2", 1),
        );
        let one = blowup_canonical(&k, 3, "N", &[ra.clone(), rb.clone()]).unwrap();
        let two = blowup_canonical(&k, 3, "N", &[rb, ra]).unwrap();
        assert_eq!(one, two);
        assert_eq!(one.coefficient("C1"), 5);
    }
}
