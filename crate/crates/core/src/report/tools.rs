use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::cohomology::{gb_profile, CohomologyProfile};
use crate::error::{Error, Result};
use crate::homogeneous::{
    anticanonical, divisibility, gp_dimension, is_fano, FValue, ParabolicFunction,
};
use crate::schur::{euler_char, weyl_dim};
use crate::weight::RootSystemA;

/// `"3,1,0,0"` in the omega basis.
pub fn parse_weight(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>()
                .map_err(|_| Error::Usage(format!("bad weight coefficient `{t}`")))
        })
        .collect()
}

/// `"1,0,inf"`, one value per simple root.
pub fn parse_f(s: &str) -> Result<Vec<FValue>> {
    s.split(',').map(str::parse).collect()
}

pub fn weyl_dim_tool(n: usize, weight: &[i64]) -> Result<BigUint> {
    let rs = RootSystemA::new(n)?;
    Ok(weyl_dim(rs, &rs.weight(weight)?)?.0)
}

/// `chi(G/B, mu)` and the characteristic-`p` cohomology profile.
pub fn euler_tool(n: usize, p: u64, weight: &[i64]) -> Result<(BigInt, CohomologyProfile)> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let rs = RootSystemA::new(n)?;
    let mu = rs.weight(weight)?;
    Ok((euler_char(rs, &mu)?.0, gb_profile(rs, p, &mu)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GpInfo {
    pub n: usize,
    pub p: u64,
    pub f: Vec<FValue>,
    pub dim: usize,
    pub picard_basis: Vec<String>,
    pub anticanonical: String,
    pub fano: bool,
    #[serde(serialize_with = "crate::ser::big_int")]
    pub divisibility: BigInt,
}

pub fn gp_info(n: usize, p: u64, f: Vec<FValue>) -> Result<GpInfo> {
    let pf = ParabolicFunction::new(n, p, f.clone())?;
    let k = anticanonical(&pf)?;
    Ok(GpInfo {
        n,
        p,
        f,
        dim: gp_dimension(&pf),
        picard_basis: pf
            .picard_basis()
            .iter()
            .map(|(_, w)| w.to_string())
            .collect(),
        anticanonical: k.weight().to_string(),
        fano: is_fano(&pf),
        divisibility: divisibility(&k)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tools() {
        assert_eq!(
            weyl_dim_tool(5, &parse_weight("3,1,0,0").unwrap()).unwrap(),
            BigUint::from(224u32)
        );
        let (chi, prof) = euler_tool(4, 2, &parse_weight("-2, 1, 0").unwrap()).unwrap();
        assert_eq!(chi, BigInt::from(-1));
        assert_eq!(prof.alternating_sum(), Some(BigInt::from(-1)));
        let g = gp_info(7, 5, parse_f("1,0,inf,inf,inf,inf").unwrap()).unwrap();
        assert!(g.fano);
        assert_eq!(g.anticanonical, "10w1 + 2w2");
        assert!(parse_weight("1,x").is_err());
        assert!(parse_f("1,-1").is_err());
        assert!(euler_tool(4, 4, &[0, 0, 0]).is_err());
    }
}
