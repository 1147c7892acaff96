use std::fmt::Write;

use serde::Serialize;

use super::book::Ledger;

/// Vertices are exceptional divisors, edges come from blow-up parentage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl DualGraph {
    /// `relabel` maps ledger names to the names shown (e.g. `E0 -> F0`).
    pub fn from_ledger(ledger: &Ledger, relabel: impl Fn(&str) -> String) -> Self {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for d in ledger.divisors() {
            vertices.push(relabel(&d.name));
            for p in &d.parents {
                edges.push((relabel(p), relabel(&d.name)));
            }
        }
        DualGraph { vertices, edges }
    }

    pub fn degree(&self, v: &str) -> usize {
        self.edges.iter().filter(|(a, b)| a == v || b == v).count()
    }

    /// The center if the graph is a star with at least two leaves.
    pub fn star_center(&self) -> Option<&str> {
        let n = self.vertices.len();
        if n < 3 || self.edges.len() != n - 1 {
            return None;
        }
        self.vertices
            .iter()
            .find(|v| self.degree(v) == n - 1)
            .map(String::as_str)
    }

    pub fn is_path(&self) -> bool {
        let n = self.vertices.len();
        n >= 1 && self.edges.len() + 1 == n && self.vertices.iter().all(|v| self.degree(v) <= 2)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in &self.vertices {
            let _ = writeln!(s, "  {v};");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  {a} -- {b};");
        }
        s.push_str("}\n");
        s
    }
}
