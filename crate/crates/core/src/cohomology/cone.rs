use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homogeneous::{anticanonical, gp_dimension, is_ample, proportionality, GPLineBundle};

use super::profile::{CohomologyProfile, Rule, RuleFiring};

/// Verdicts for the affine cone over `(X, A)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub cone_dimension: usize,
    /// `A = a (-K_X)` in `Pic(X) (x) Q`.
    #[serde(serialize_with = "crate::ser::opt_rational")]
    pub a: Option<BigRational>,
    pub is_terminal: bool,
    pub is_canonical: bool,
    /// `Some(false)` when a cohomology group `H^i(X, mA)` with `0 < i < dim X`
    /// is certified nonzero; `None` otherwise.
    pub is_cm: Option<bool>,
    pub witness_degree: Option<usize>,
    pub no_lift: bool,
    pub notes: Vec<String>,
    pub certificate: Vec<RuleFiring>,
}

/// `profile` is the cohomology of `bundle`, which must be a multiple of `a`
/// for the Cohen-Macaulay verdict to be drawn from it.
pub fn cone_report(
    a: &GPLineBundle,
    bundle: &GPLineBundle,
    profile: &CohomologyProfile,
) -> Result<ConeReport> {
    if !is_ample(a) {
        return Err(Error::NotAmple);
    }
    let f = a.parent();
    let dim = gp_dimension(f);
    let k = anticanonical(f)?;
    let ratio = proportionality(a.weight(), k.weight());
    let zero = BigRational::zero();
    let one = BigRational::one();
    let is_terminal = ratio.as_ref().is_some_and(|t| *t > zero && *t < one);
    let is_canonical = ratio.as_ref().is_some_and(|t| *t > zero && *t <= one);
    let mut notes = Vec::new();
    let mut certificate = Vec::new();
    match &ratio {
        Some(t) if *t == one => {
            notes.push("A = -K_X: the cone is canonical but not terminal".to_string())
        }
        Some(t) if *t > one => notes.push(format!("A = {t} (-K_X): the cone is not log canonical")),
        None => notes.push("A is not a rational multiple of -K_X".to_string()),
        _ => {}
    }
    if let Some(t) = &ratio {
        certificate.push(RuleFiring::new(
            Rule::ConeCriterion,
            format!("A = {t} (-K_X), terminal iff 0 < {t} < 1"),
        ));
    }

    let multiple = integer_multiple(bundle, a);
    let mut witness_degree = None;
    if multiple.is_some() {
        witness_degree = (1..dim).find(|&i| profile.entry(i as i64).is_certified_nonzero());
    } else {
        notes.push(format!(
            "{bundle} is not an integer multiple of {a}; CM verdict skipped"
        ));
    }
    let is_cm = witness_degree.map(|_| false);
    if let (Some(m), Some(i)) = (&multiple, witness_degree) {
        certificate.push(RuleFiring::new(
            Rule::ConeCriterion,
            format!("H^{i}(X, {m}A) != 0 with 0 < {i} < {dim}: cone not Cohen-Macaulay"),
        ));
    }
    let no_lift = profile.euler.as_ref().is_some_and(|c| c.is_negative());
    if no_lift {
        notes.push(format!(
            "chi(X, {bundle}) < 0: the pair (X, {bundle}) does not lift to characteristic zero"
        ));
    }
    Ok(ConeReport {
        cone_dimension: dim + 1,
        a: ratio,
        is_terminal,
        is_canonical,
        is_cm,
        witness_degree,
        no_lift,
        notes,
        certificate,
    })
}

fn integer_multiple(bundle: &GPLineBundle, a: &GPLineBundle) -> Option<num_bigint::BigInt> {
    let t = proportionality(bundle.weight(), a.weight())?;
    t.is_integer().then(|| t.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::gp_profile;
    use crate::homogeneous::ParabolicFunction;
    use crate::weight::PositiveRoot;
    use num_bigint::BigInt;

    fn data(p: u64) -> (GPLineBundle, CohomologyProfile) {
        let f = ParabolicFunction::fl12(p, p as usize + 2).unwrap();
        let r = f.root_system();
        let a = GPLineBundle::new(&f, &r.fundamental(1).scale(p) + &r.fundamental(2)).unwrap();
        let prof = gp_profile(&a, PositiveRoot::simple(1)).unwrap();
        (a, prof)
    }

    #[test]
    fn half_anticanonical_is_terminal() {
        for p in [3u64, 5, 7] {
            let (a, prof) = data(p);
            let c = cone_report(&a, &a, &prof).unwrap();
            assert_eq!(c.cone_dimension, 2 * p as usize + 2);
            assert_eq!(
                c.a,
                Some(BigRational::new(BigInt::from(1), BigInt::from(2)))
            );
            assert!(c.is_terminal);
        }
    }

    #[test]
    fn p5_not_cm_and_no_lift() {
        let (a, prof) = data(5);
        let c = cone_report(&a, &a, &prof).unwrap();
        assert_eq!(c.is_cm, Some(false));
        assert_eq!(c.witness_degree, Some(1));
        assert!(c.no_lift);
    }

    #[test]
    fn anticanonical_boundary() {
        let (a, prof) = data(3);
        let k = anticanonical(a.parent()).unwrap();
        let c = cone_report(&k, &a, &prof).unwrap();
        assert_eq!(c.a, Some(BigRational::one()));
        assert!(!c.is_terminal);
        assert!(c.is_canonical);
    }

    #[test]
    fn rejects_non_ample() {
        let (a, prof) = data(3);
        let r = a.parent().root_system();
        let bad = GPLineBundle::new(a.parent(), r.fundamental(1).scale(3)).unwrap();
        assert_eq!(cone_report(&bad, &a, &prof), Err(Error::NotAmple));
    }
}
