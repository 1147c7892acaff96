use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// `base + sum c_D D` with integer coefficients; `base` is a pulled-back
/// class such as `pi*K_Y0`.
/// Zero coefficients are kept, since a divisor with discrepancy 0 still
/// matters for classification; equality ignores them.
#[derive(Debug, Clone, Default, Serialize)]
pub struct DivisorExpression {
    pub base: Option<String>,
    coeffs: BTreeMap<String, i64>,
}

impl DivisorExpression {
    pub fn new(base: Option<&str>) -> Self {
        DivisorExpression {
            base: base.map(str::to_string),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn divisor(name: &str) -> Self {
        let mut d = DivisorExpression::new(None);
        d.add_term(name, 1);
        d
    }

    pub fn with(mut self, name: &str, c: i64) -> Self {
        self.add_term(name, c);
        self
    }

    pub fn add_term(&mut self, name: &str, c: i64) {
        *self.coeffs.entry(name.to_string()).or_insert(0) += c;
    }

    fn nonzero(&self) -> impl Iterator<Item = (&String, &i64)> {
        self.coeffs.iter().filter(|(_, &v)| v != 0)
    }

    pub fn coefficient(&self, name: &str) -> i64 {
        self.coeffs.get(name).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, i64)> {
        self.coeffs.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn names(&self) -> Vec<String> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.nonzero().next().is_none()
    }

    /// Sum of the exceptional parts; the base of `self` is kept.
    pub fn plus(&self, other: &DivisorExpression) -> DivisorExpression {
        let mut out = self.clone();
        for (k, v) in other.terms() {
            out.add_term(k, v);
        }
        out
    }

    pub fn scaled(&self, k: i64) -> DivisorExpression {
        let mut out = DivisorExpression::new(self.base.as_deref());
        for (n, v) in self.terms() {
            out.add_term(n, v * k);
        }
        out
    }

    /// Replace every occurrence of `name` by `expr`.
    pub fn substitute(&self, name: &str, expr: &DivisorExpression) -> DivisorExpression {
        let c = self.coefficient(name);
        if c == 0 {
            return self.clone();
        }
        let mut out = self.clone();
        out.coeffs.remove(name);
        out.plus(&expr.scaled(c))
    }

    pub fn rename(&self, from: &str, to: &str) -> DivisorExpression {
        self.substitute(from, &DivisorExpression::divisor(to))
    }

    pub fn with_base(&self, base: Option<&str>) -> DivisorExpression {
        DivisorExpression {
            base: base.map(str::to_string),
            coeffs: self.coeffs.clone(),
        }
    }
}

impl PartialEq for DivisorExpression {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.nonzero().eq(other.nonzero())
    }
}

impl Eq for DivisorExpression {}

/// Names sort as `E0 < E1 < ... < E10` rather than lexicographically.
fn natural_key(s: &str) -> (String, u64) {
    let split = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (head, tail) = s.split_at(split);
    (head.to_string(), tail.parse().unwrap_or(0))
}

impl fmt::Display for DivisorExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if let Some(b) = &self.base {
            parts.push(b.clone());
        }
        let mut terms: Vec<(&str, i64)> = self.terms().filter(|t| t.1 != 0).collect();
        terms.sort_by_key(|(n, _)| natural_key(n));
        for (n, c) in terms {
            let body = match c.abs() {
                1 => n.to_string(),
                a => format!("{a}{n}"),
            };
            if parts.is_empty() {
                parts.push(if c < 0 { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if c < 0 { "-" } else { "+" }));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" "))
    }
}
