use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::cohomology::{
    verify_thm_2_1, verify_thm_3_1, CohEntry, CohomologyProfile, H1Witness, Thm21Report,
    Thm31Branch, Thm31Report,
};
use crate::error::{Error, Result};
use crate::fixed::{CartierVerdict, Valuation};
use crate::homogeneous::ParabolicFunction;
use crate::ledger::{yasuda_classify, SingularityClass};
use crate::schur::weyl_dim;
use crate::torus::{run_dim3, Dim3Options, Dim3Report};
use crate::TOOL_VERSION;

use super::{int_value, FactSheet, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Thm21,
    Thm31,
    Dim3,
    Yasuda,
}

impl Target {
    pub fn label(&self) -> &'static str {
        match self {
            Target::Thm21 => "thm21",
            Target::Thm31 => "thm31",
            Target::Dim3 => "dim3",
            Target::Yasuda => "yasuda",
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm21" => Ok(Target::Thm21),
            "thm31" => Ok(Target::Thm31),
            "dim3" => Ok(Target::Dim3),
            "yasuda" => Ok(Target::Yasuda),
            _ => Err(Error::Usage(format!("unknown target `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub p: Option<u64>,
    pub n: Option<u32>,
    pub all_charts: bool,
    /// Omit timing so the report is byte-identical across runs.
    pub seedless: bool,
}

/// Run a verification from its primitive inputs.
pub fn verify(target: Target, opts: VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = match target {
        Target::Thm21 => {
            reject_n(target, opts)?;
            thm21(&verify_thm_2_1(opts.p.unwrap_or(3))?)
        }
        Target::Thm31 => {
            reject_n(target, opts)?;
            thm31(&verify_thm_3_1(opts.p.unwrap_or(3))?)
        }
        Target::Dim3 => {
            reject_n(target, opts)?;
            if let Some(p) = opts.p.filter(|&p| p != 2) {
                return Err(Error::Usage(format!("dim3 is fixed to p = 2, got p = {p}")));
            }
            dim3(&run_dim3(Dim3Options {
                all_charts: opts.all_charts,
            })?)
        }
        Target::Yasuda => yasuda(opts.p.unwrap_or(7), opts.n.unwrap_or(5))?,
    };
    if !opts.seedless {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(report)
}

fn reject_n(target: Target, opts: VerifyOptions) -> Result<()> {
    match opts.n {
        Some(n) => Err(Error::Usage(format!(
            "{} does not take --n (got {n})",
            target.label()
        ))),
        None => Ok(()),
    }
}

fn base(
    construction: String,
    inputs: BTreeMap<String, Value>,
    sheet: FactSheet,
) -> VerificationReport {
    let (facts, verdict) = sheet.finish();
    VerificationReport {
        construction,
        inputs,
        facts,
        verdict,
        certificates: Vec::new(),
        notes: Vec::new(),
        tool_version: TOOL_VERSION,
        timing_ms: None,
        graph_dot: None,
        details: Value::Null,
    }
}

fn homogeneous_inputs(p: u64, n: usize) -> Result<BTreeMap<String, Value>> {
    let f = ParabolicFunction::fl12(p, n)?;
    let f_str: Vec<String> = f.values().iter().map(|v| v.to_string()).collect();
    Ok(BTreeMap::from([
        ("p".to_string(), Value::from(p)),
        ("n".to_string(), Value::from(n)),
        ("f".to_string(), Value::from(f_str.join(","))),
    ]))
}

fn witness_anchor(w: H1Witness) -> &'static str {
    match w {
        H1Witness::EulerNegativity => "euler-negativity",
        H1Witness::SteinbergSocle => "steinberg-tensor-product",
        H1Witness::HighestWeightOccurrence => "highest-weight-occurrence",
        H1Witness::ExactSequence => "pushforward-long-exact-sequence",
        H1Witness::None => "none",
    }
}

fn vanishes_outside(profile: &CohomologyProfile, keep: &[i64]) -> bool {
    (0..=profile.dim as i64)
        .filter(|i| !keep.contains(i))
        .all(|i| profile.entry(i) == CohEntry::Zero)
}

fn thm21(r: &Thm21Report) -> VerificationReport {
    let p = r.p;
    let mut s = FactSheet::default();
    s.add(
        "dim X",
        r.dim,
        "parabolic-dimension",
        r.dim == 2 * p as usize + 1,
    );
    s.add(
        "picard number",
        r.picard_number,
        "picard-lattice",
        r.picard_number == 2,
    );
    s.add("X is Fano", r.is_fano, "anticanonical-class", r.is_fano);
    s.add(
        "-K_X",
        r.anticanonical.clone(),
        "anticanonical-class",
        r.divisibility == BigInt::from(2),
    );
    s.add(
        "A = -K_X / 2",
        r.a.clone(),
        "anticanonical-class",
        r.a_matches,
    );
    s.add(
        "fiber degree of A",
        int_value(r.fiber_degree.clone()),
        "fiber-degree",
        r.fiber_degree.is_one(),
    );
    s.add(
        "h0(G/B, lambda)",
        int_value(r.h0_lambda.clone()),
        "weyl-dimension",
        r.closed_forms_match,
    );
    s.add(
        "h0(G/B, lambda - alpha)",
        int_value(r.h0_lambda_minus_alpha.clone()),
        "weyl-dimension",
        r.closed_forms_match,
    );
    s.add(
        "dimension ratio",
        r.ratio.to_string(),
        "ratio-identity",
        r.ratio_matches,
    );
    s.add(
        "chi(X, A)",
        int_value(r.chi.clone()),
        "euler-additivity",
        p < 5 || r.chi.is_negative(),
    );
    let d = r.steinberg;
    let oracle = weyl_factor(d.n, d.a) * weyl_factor(d.n, d.b);
    s.add(
        "dim L(lambda)",
        int_value(r.steinberg_dim.clone()),
        "steinberg-tensor-product",
        oracle == r.steinberg_dim,
    );
    s.add(
        "socle bound on h1",
        int_value(r.socle.bound.clone()),
        "steinberg-tensor-product",
        r.socle.is_positive(),
    );
    s.add(
        "h1(X, A)",
        r.profile.entry(1).to_string(),
        witness_anchor(r.h1_witness),
        r.h1_positive,
    );
    s.add(
        "h^i(X, A) = 0 for i >= 2",
        vanishes_outside(&r.profile, &[0, 1]),
        "pushforward-long-exact-sequence",
        vanishes_outside(&r.profile, &[0, 1]),
    );
    let c = &r.cone;
    s.add(
        "cone dimension",
        c.cone_dimension,
        "cone-criterion",
        c.cone_dimension == 2 * p as usize + 2,
    );
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    s.add(
        "cone discrepancy",
        c.a.as_ref().map_or("none".to_string(), |a| a.to_string()),
        "cone-criterion",
        c.a.as_ref() == Some(&half) && c.is_terminal,
    );
    s.add(
        "cone is CM",
        c.is_cm.map_or(Value::Null, Value::from),
        "cone-criterion",
        c.is_cm == Some(false),
    );
    let mut rep = base(
        format!("thm21 p={p}"),
        homogeneous_inputs(p, r.n).unwrap_or_default(),
        s,
    );
    rep.certificates = r.profile.certificate.clone();
    rep.certificates.push(r.socle.certificate.clone());
    rep.certificates.extend(r.cone.certificate.iter().cloned());
    rep.notes = r.cone.notes.clone();
    if r.cone.no_lift {
        rep.notes
            .push("X with A admits no lift to W_2(k)".to_string());
    }
    rep.details = serde_json::to_value(r).unwrap_or(Value::Null);
    rep
}

/// `dim L(w_k) = C(n, k)`, by the Weyl formula.
fn weyl_factor(n: usize, k: usize) -> num_bigint::BigUint {
    let rs = crate::weight::RootSystemA::new(n).expect("n >= 2");
    weyl_dim(rs, &rs.fundamental(k))
        .map(|d| d.0)
        .unwrap_or_default()
}

fn thm31(r: &Thm31Report) -> VerificationReport {
    let p = r.p;
    let mut s = FactSheet::default();
    let expected_dim = if p == 2 { 5 } else { 2 * p as usize - 1 };
    s.add("dim X", r.dim, "parabolic-dimension", r.dim == expected_dim);
    s.add(
        "picard number",
        r.picard_number,
        "picard-lattice",
        r.picard_number == 2,
    );
    s.add("X is Fano", r.is_fano, "anticanonical-class", r.is_fano);
    s.add(
        "-K_X",
        r.anticanonical.clone(),
        "anticanonical-class",
        r.is_fano,
    );
    s.add("A ample", r.a.clone(), "ampleness", r.a_ample);
    s.add(
        "mu = K_X + A",
        r.mu.clone(),
        "anticanonical-class",
        r.mu_is_k_plus_a,
    );
    match &r.branch {
        Thm31Branch::Odd {
            h0_mu,
            h0_mu_minus_alpha,
            closed_forms_match,
            ratio,
            ratio_matches,
            socle,
        } => {
            s.add(
                "h0(G/B, mu)",
                int_value(h0_mu.clone()),
                "weyl-dimension",
                *closed_forms_match,
            );
            s.add(
                "h0(G/B, mu - alpha)",
                int_value(h0_mu_minus_alpha.clone()),
                "weyl-dimension",
                *closed_forms_match,
            );
            s.add(
                "dimension ratio",
                ratio.to_string(),
                "ratio-identity",
                *ratio_matches,
            );
            let anchor = socle.certificate.anchor;
            s.add(
                "socle bound on h1",
                int_value(socle.bound.clone()),
                anchor,
                socle.is_positive(),
            );
        }
        Thm31Branch::Two {
            mu_side_zero,
            chi_mu,
            chi_mu_minus_p_alpha,
            ..
        } => {
            s.add(
                "H*(G/B, mu) = 0",
                *mu_side_zero,
                "wall-vanishing",
                *mu_side_zero,
            );
            s.add(
                "chi(G/B, mu)",
                int_value(chi_mu.clone()),
                "euler-additivity",
                chi_mu.is_zero(),
            );
            s.add(
                "chi(G/B, mu - p alpha)",
                int_value(chi_mu_minus_p_alpha.clone()),
                "euler-additivity",
                *chi_mu_minus_p_alpha == BigInt::from(-1),
            );
        }
    }
    s.add(
        "chi(X, K_X + A)",
        int_value(r.chi.clone()),
        "euler-additivity",
        p == 3 || r.chi.is_negative(),
    );
    s.add(
        "h1(X, K_X + A)",
        r.profile.entry(1).to_string(),
        witness_anchor(r.h1_witness),
        r.h1_positive,
    );
    if p == 2 {
        s.add(
            "h1(X, K_X + A) exact",
            r.h1_exact.clone().map_or(Value::Null, int_value),
            "pushforward-long-exact-sequence",
            r.h1_exact == Some(BigInt::one()),
        );
        let others = vanishes_outside(&r.profile, &[1]);
        s.add(
            "h^i(X, K_X + A) = 0 for i != 1",
            others,
            "pushforward-long-exact-sequence",
            others,
        );
    }
    let mut rep = base(
        format!("thm31 p={p}"),
        homogeneous_inputs(p, r.n).unwrap_or_default(),
        s,
    );
    rep.certificates = r.profile.certificate.clone();
    match &r.branch {
        Thm31Branch::Odd { socle, .. } | Thm31Branch::Two { socle, .. } => {
            rep.certificates.push(socle.certificate.clone())
        }
    }
    rep.details = serde_json::to_value(r).unwrap_or(Value::Null);
    rep
}

fn chart<'a>(r: &'a Dim3Report, name: &str) -> Option<&'a crate::torus::ChartRecord> {
    r.charts.iter().find(|c| c.name == name)
}

fn dim3(r: &Dim3Report) -> VerificationReport {
    let mut s = FactSheet::default();
    let pts: Vec<Value> = r
        .torus_fixed_points
        .iter()
        .map(|p| Value::from(p.clone()))
        .collect();
    s.add(
        "torus fixed points",
        pts,
        "fixed-scheme",
        r.torus_fixed_points == vec![vec![1, 1, 1]],
    );
    s.add(
        "fixed locus codimension",
        r.fixed_locus_codim,
        "fixed-scheme",
        r.fixed_locus_codim == 3,
    );

    let u1 = chart(r, "U1");
    let u1_gens = u1.map(|c| c.generators.clone()).unwrap_or_default();
    let expect = ["y1^2", "y1*w2^2 + y1*w2", "y1*w3^2 + y1*w3"];
    s.add(
        "U1 fixed ideal",
        u1_gens.clone(),
        "fixed-scheme",
        u1_gens == expect,
    );
    s.add(
        "U1 fixed scheme Cartier",
        u1.is_some_and(|c| c.cartier.is_principal()),
        "cartier-test",
        u1.is_some_and(|c| !c.cartier.is_principal()),
    );
    let bad: Vec<Value> = r
        .bad_points
        .iter()
        .map(|p| Value::from(p.clone()))
        .collect();
    s.add(
        "non-Cartier points on E",
        bad,
        "cartier-test",
        r.bad_points.len() == 7,
    );

    let v1 = chart(r, "Y2 v1=1");
    let v1_gen = v1.and_then(|c| match &c.cartier {
        CartierVerdict::Principal { generator, .. } => Some(generator.clone()),
        _ => None,
    });
    s.add(
        "chart v1=1 fixed ideal",
        v1_gen.clone().map_or(Value::Null, Value::from),
        "cartier-test",
        v1_gen.as_deref() == Some("y1^2"),
    );
    let v2 = chart(r, "Y2 v2=1");
    let v2_mult = v2.and_then(|c| match &c.cartier {
        CartierVerdict::Principal { multiplicities, .. } => Some(multiplicities.clone()),
        _ => None,
    });
    let shown = v2_mult.as_ref().map_or("not principal".to_string(), |m| {
        m.iter()
            .map(|(c, e)| {
                if *e == 1 {
                    c.clone()
                } else {
                    format!("{c}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    });
    s.add(
        "chart v2=1 fixed ideal",
        shown.clone(),
        "cartier-test",
        shown == "v1*w2^2",
    );

    let artin: Vec<i64> = r.ramification.iter().map(|d| d.i).collect();
    let kinds: Vec<String> = r
        .ramification
        .iter()
        .map(|d| format!("{:?}", d.kind).to_lowercase())
        .collect();
    let diffs: Vec<i64> = r.ramification.iter().map(|d| d.different).collect();
    let ones_then = |first: i64, rest: i64, v: &[i64]| {
        v.len() == 8 && v[0] == first && v[1..].iter().all(|&x| x == rest)
    };
    s.add(
        "artin numbers",
        artin.clone(),
        "artin-number",
        ones_then(1, 2, &artin),
    );
    s.add(
        "ramification types",
        kinds.clone(),
        "swan-bound",
        kinds.len() == 8 && kinds[0] == "fierce" && kinds[1..].iter().all(|k| k == "wild"),
    );
    s.add(
        "differents",
        diffs.clone(),
        "different",
        ones_then(1, 2, &diffs),
    );
    let mult_ok = r.charts.iter().all(|c| {
        c.ramification.iter().all(|d| {
            d.cartier_multiplicity
                .is_none_or(|m| d.artin == Valuation::Finite(m as i64))
        })
    });
    s.add(
        "artin number = Cartier multiplicity",
        mult_ok,
        "artin-number",
        mult_ok,
    );
    s.add(
        "fixed divisor on Y2",
        r.fixed_divisor.to_string(),
        "fixed-scheme",
        r.fixed_divisor.to_string() == "E0 + 2E1 + 2E2 + 2E3 + 2E4 + 2E5 + 2E6 + 2E7",
    );
    let inv = r.charts.iter().all(|c| c.involution);
    let stable = r.charts.iter().all(|c| c.sigma_stable);
    s.add("sigma^2 = id on all charts", inv, "chart-involution", inv);
    s.add("fixed ideals sigma-stable", stable, "fixed-scheme", stable);

    s.add(
        "K_Y1",
        r.canonical_y1.to_string(),
        "blowup-canonical",
        r.canonical_y1.to_string() == "pi*K_Y0 + 2E",
    );
    s.add(
        "K_Y2",
        r.canonical_y2.to_string(),
        "blowup-canonical",
        r.canonical_y2.to_string() == "pi*K_Y0 + 2E0 + 4E1 + 4E2 + 4E3 + 4E4 + 4E5 + 4E6 + 4E7",
    );
    s.add(
        "K_Y2/G",
        r.canonical_quotient.to_string(),
        "discrepancy-descent",
        r.round_trip,
    );
    let disc: Vec<i64> = r.discrepancies.iter().map(|(_, a)| *a).collect();
    s.add(
        "discrepancies",
        disc.clone(),
        "discrepancy-descent",
        disc.len() == 8 && disc.iter().all(|&a| a == 1),
    );
    s.add(
        "singularity class",
        r.classification.class.label(),
        "discrepancy-descent",
        r.classification.class == SingularityClass::Terminal,
    );
    s.add(
        "Cohen-Macaulay",
        if r.cm.is_not_cm() {
            "no"
        } else {
            "inconclusive"
        },
        "fogarty-fixed-locus",
        r.cm.is_not_cm(),
    );
    let center = r.dual_graph.star_center().map(str::to_string);
    s.add(
        "dual graph",
        format!(
            "{} vertices, {} edges",
            r.dual_graph.vertices.len(),
            r.dual_graph.edges.len()
        ),
        "dual-graph",
        center.as_deref() == Some("F0") && r.dual_graph.vertices.len() == 8,
    );

    let inputs = BTreeMap::from([
        ("p".to_string(), Value::from(2)),
        (
            "all_charts".to_string(),
            Value::from(matches!(
                r.coverage,
                crate::torus::PointCoverage::Recomputed { .. }
            )),
        ),
    ]);
    let mut rep = base("dim3 p=2".to_string(), inputs, s);
    rep.notes.push(match &r.coverage {
        crate::torus::PointCoverage::Symmetry { computed } => format!(
            "second blow-up computed at {computed:?}; the other six points follow by the transitive GL(3, F_2) action"
        ),
        crate::torus::PointCoverage::Recomputed { charts } => {
            format!("second blow-up recomputed at all {charts} points")
        }
    });
    rep.graph_dot = Some(r.dual_graph.to_dot("dual"));
    rep.details = serde_json::to_value(r).unwrap_or(Value::Null);
    rep
}

fn yasuda(p: u64, n: u32) -> Result<VerificationReport> {
    let v = yasuda_classify(p, n)?;
    let hypotheses = v.age > p && p >= n as u64 && n >= 4;
    let mut s = FactSheet::default();
    s.add("age n(n-1)/2", v.age, "age-criterion", true);
    s.add("klt", v.klt, "age-criterion", true);
    s.add(
        "terminal (sufficient test)",
        v.terminal,
        "age-criterion",
        true,
    );
    s.add(
        "Cohen-Macaulay",
        if v.cm.is_not_cm() {
            "no"
        } else {
            "inconclusive"
        },
        "fogarty-fixed-locus",
        true,
    );
    s.add("p >= n >= 4", v.in_window, "age-criterion", true);
    if hypotheses {
        s.add(
            "terminal and not CM",
            v.terminal && v.cm.is_not_cm(),
            "age-criterion",
            v.terminal && v.cm.is_not_cm(),
        );
    }
    let inputs = BTreeMap::from([
        ("p".to_string(), Value::from(p)),
        ("n".to_string(), Value::from(n)),
    ]);
    let mut rep = base(format!("yasuda p={p} n={n}"), inputs, s);
    if !hypotheses {
        rep.notes
            .push("hypotheses n(n-1)/2 > p >= n >= 4 fail; values are informational".to_string());
    }
    rep.notes
        .push("the age test is only known to be sufficient for terminality".to_string());
    rep.details = serde_json::to_value(&v).unwrap_or(Value::Null);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(t: Target, p: Option<u64>) -> VerificationReport {
        verify(
            t,
            VerifyOptions {
                p,
                seedless: true,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn thm21_p3_facts() {
        let r = run(Target::Thm21, Some(3));
        assert!(r.passed(), "{:#?}", r.facts);
        assert_eq!(r.fact("h0(G/B, lambda)").unwrap().value, Value::from(224));
        assert_eq!(
            r.fact("h0(G/B, lambda - alpha)").unwrap().value,
            Value::from(175)
        );
        assert_eq!(r.fact("dim L(lambda)").unwrap().value, Value::from(50));
        assert_eq!(r.fact("socle bound on h1").unwrap().value, Value::from(1));
        assert!(r.timing_ms.is_none());
    }

    #[test]
    fn thm31_and_dim3_pass() {
        for p in [2, 3, 5] {
            assert!(run(Target::Thm31, Some(p)).passed(), "p = {p}");
        }
        let d = run(Target::Dim3, None);
        assert!(d.passed(), "{:#?}", d.facts);
        assert_eq!(
            d.fact("discrepancies").unwrap().value,
            Value::from(vec![1; 8])
        );
    }

    #[test]
    fn usage_errors() {
        assert!(verify(
            Target::Thm21,
            VerifyOptions {
                p: Some(2),
                ..Default::default()
            }
        )
        .is_err());
        assert!(verify(
            Target::Dim3,
            VerifyOptions {
                p: Some(3),
                ..Default::default()
            }
        )
        .is_err());
        assert!(verify(
            Target::Thm21,
            VerifyOptions {
                n: Some(4),
                ..Default::default()
            }
        )
        .is_err());
        assert!("thm99".parse::<Target>().is_err());
    }

    #[test]
    fn yasuda_reports() {
        let r = verify(
            Target::Yasuda,
            VerifyOptions {
                p: Some(7),
                n: Some(5),
                seedless: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(r.passed());
        assert!(r.fact("terminal and not CM").is_some());
        let r = verify(
            Target::Yasuda,
            VerifyOptions {
                p: Some(7),
                n: Some(4),
                seedless: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.fact("klt").unwrap().value, Value::from(false));
        assert!(r.fact("terminal and not CM").is_none());
    }
}
