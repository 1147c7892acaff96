//! Verification reports: named facts with pass flags, rule certificates,
//! and markdown / JSON / DOT renderers.

mod render;
mod sweep;
mod tools;
mod verify;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::cohomology::RuleFiring;

pub use render::{render, render_sweep, Format};
pub use sweep::{sweep, SweepRow, SweepTable};
pub use tools::{euler_tool, gp_info, parse_f, parse_weight, weyl_dim_tool, GpInfo};
pub use verify::{verify, Target, VerifyOptions};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fact {
    pub name: String,
    pub value: Value,
    pub anchor: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub construction: String,
    pub inputs: BTreeMap<String, Value>,
    pub facts: Vec<Fact>,
    pub verdict: Verdict,
    pub certificates: Vec<RuleFiring>,
    pub notes: Vec<String>,
    pub tool_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(skip)]
    pub graph_dot: Option<String>,
    /// The full underlying computation.
    pub details: Value,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn fact(&self, name: &str) -> Option<&Fact> {
        self.facts.iter().find(|f| f.name == name)
    }
}

/// Collects facts; the verdict is the conjunction of their pass flags.
#[derive(Debug, Default)]
pub(crate) struct FactSheet {
    facts: Vec<Fact>,
}

impl FactSheet {
    pub(crate) fn add(&mut self, name: &str, value: impl Into<Value>, anchor: &str, pass: bool) {
        self.facts.push(Fact {
            name: name.to_string(),
            value: value.into(),
            anchor: anchor.to_string(),
            pass,
        });
    }

    pub(crate) fn finish(self) -> (Vec<Fact>, Verdict) {
        let v = if self.facts.iter().all(|f| f.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        (self.facts, v)
    }
}

/// Same encoding as the serialized reports: a number if it fits in `i64`.
pub(crate) fn int_value(n: impl Into<BigInt>) -> Value {
    let n: BigInt = n.into();
    match i64::try_from(&n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}
