use std::fmt::Write;
use std::str::FromStr;

use serde_json::Value;

use crate::error::{Error, Result};

use super::{SweepTable, VerificationReport};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Md,
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" | "markdown" => Ok(Format::Md),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            _ => Err(Error::Usage(format!("unknown format `{s}`"))),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Usage(e.to_string()))
}

pub fn render(r: &VerificationReport, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => json(r),
        Format::Dot => r
            .graph_dot
            .clone()
            .ok_or_else(|| Error::Usage(format!("{} has no graph to emit", r.construction))),
        Format::Md => Ok(markdown(r)),
    }
}

fn markdown(r: &VerificationReport) -> String {
    let mut s = format!("# {}\n\n", r.construction);
    let inputs: Vec<String> = r
        .inputs
        .iter()
        .map(|(k, v)| format!("{k} = {}", cell(v)))
        .collect();
    let _ = writeln!(s, "inputs: {}\n", inputs.join(", "));
    s.push_str("| fact | value | anchor | pass |\n|---|---|---|---|\n");
    for f in &r.facts {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} |",
            f.name,
            cell(&f.value),
            f.anchor,
            if f.pass { "yes" } else { "NO" }
        );
    }
    let _ = writeln!(
        s,
        "\n**verdict: {}**",
        if r.passed() { "PASS" } else { "FAIL" }
    );
    if !r.certificates.is_empty() {
        s.push_str("\n## certificates\n\n");
        for c in &r.certificates {
            let _ = writeln!(s, "- `{}` {}", c.anchor, c.detail);
        }
    }
    if !r.notes.is_empty() {
        s.push_str("\n## notes\n\n");
        for n in &r.notes {
            let _ = writeln!(s, "- {n}");
        }
    }
    if let Some(dot) = &r.graph_dot {
        let _ = write!(s, "\n## dual graph\n\n```dot\n{dot}```\n");
    }
    let _ = write!(s, "\nfva {}", r.tool_version);
    if let Some(t) = r.timing_ms {
        let _ = write!(s, ", {t:.1} ms");
    }
    s.push('\n');
    s
}

pub fn render_sweep(t: &SweepTable, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => json(t),
        Format::Dot => Err(Error::Usage("sweep has no graph to emit".into())),
        Format::Md => {
            let mut s = format!("# sweep, p <= {}\n\n", t.max_p);
            s.push_str("| p | theorem | dim X | chi | h1 | pass |\n|---|---|---|---|---|---|\n");
            for r in &t.rows {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} |",
                    r.p,
                    r.theorem,
                    r.dim,
                    cell(&r.chi),
                    r.h1,
                    if r.pass { "yes" } else { "NO" }
                );
            }
            for n in &t.notes {
                let _ = writeln!(s, "\n{n}");
            }
            Ok(s)
        }
    }
}
