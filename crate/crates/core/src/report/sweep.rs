use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::arith::primes_up_to;
use crate::cohomology::{verify_thm_2_1, verify_thm_3_1};
use crate::error::{Error, Result};

use super::int_value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: u64,
    pub theorem: &'static str,
    pub dim: usize,
    pub chi: Value,
    pub h1: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub max_p: u64,
    pub rows: Vec<SweepRow>,
    pub notes: Vec<String>,
}

impl SweepTable {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn rows_for(p: u64) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(2);
    if p >= 3 {
        let r = verify_thm_2_1(p)?;
        rows.push(SweepRow {
            p,
            theorem: "thm21",
            dim: r.dim,
            chi: int_value(r.chi.clone()),
            h1: r.profile.entry(1).to_string(),
            pass: r.passed(),
        });
    }
    let r = verify_thm_3_1(p)?;
    rows.push(SweepRow {
        p,
        theorem: "thm31",
        dim: r.dim,
        chi: int_value(r.chi.clone()),
        h1: r.profile.entry(1).to_string(),
        pass: r.passed(),
    });
    Ok(rows)
}

/// Both families for every prime up to `max_p`, in parallel, sorted by `p`.
pub fn sweep(max_p: u64) -> Result<SweepTable> {
    if max_p < 2 {
        return Err(Error::Usage(format!("max_p = {max_p} < 2")));
    }
    let primes = primes_up_to(max_p);
    let chunks: Vec<Vec<SweepRow>> = primes
        .par_iter()
        .map(|&p| rows_for(p))
        .collect::<Result<_>>()?;
    let mut rows: Vec<SweepRow> = chunks.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.p, r.theorem));
    let notes = vec!["thm21 skipped at p = 2 (needs p >= 3)".to_string()];
    Ok(SweepTable { max_p, rows, notes })
}
