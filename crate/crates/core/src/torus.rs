//! The involution `x -> 1/x` on `(G_m)^3` over `F_2`, replayed chart by
//! chart through two blow-ups, then pushed through the divisor ledger.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixed::{
    artin_number, blowup_chart, cartier_test, different_coefficient, fixed_scheme_generators,
    is_sigma_stable, swan_classify, translate_chart, CartierVerdict, ChartAction, PolyFp,
    RamificationType, Valuation,
};
use crate::ledger::{
    classify_singularity, different_divisor, fogarty_cm_test, pullback_quotient, quotient_descend,
    BlowupCenter, Classification, CmVerdict, DivisorExpression, DualGraph, Ledger,
    RamificationDatum, Rename,
};

const P: u64 = 2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Dim3Options {
    /// Recompute the second blow-up at all seven points instead of at one
    /// point plus the `GL(3, F_2)` symmetry.
    pub all_charts: bool,
}

/// Ramification of `sigma` along one coordinate divisor of a chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorRamification {
    pub coordinate: String,
    /// Ledger name of the divisor `{coordinate = 0}`.
    pub divisor: String,
    pub artin: Valuation,
    pub kind: RamificationType,
    pub different: i64,
    /// Multiplicity in the fixed scheme, when that scheme is principal.
    pub cartier_multiplicity: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartRecord {
    pub name: String,
    pub chart: ChartAction,
    pub generators: Vec<String>,
    pub involution: bool,
    pub sigma_stable: bool,
    pub cartier: CartierVerdict,
    pub ramification: Vec<DivisorRamification>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum PointCoverage {
    /// One point computed; the rest follow from the transitive action of
    /// `GL(3, F_2)` on the seven points.
    Symmetry { computed: Vec<u64> },
    /// Every point computed.
    Recomputed { charts: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dim3Report {
    pub p: u64,
    pub torus_fixed_points: Vec<Vec<u64>>,
    pub fixed_locus_codim: u32,
    pub charts: Vec<ChartRecord>,
    /// `F_2`-points of `E = P^2` where the fixed scheme of `Y_1` fails to be
    /// Cartier, as homogeneous coordinates.
    pub bad_points: Vec<Vec<u64>>,
    pub coverage: PointCoverage,
    pub fixed_divisor: DivisorExpression,
    pub canonical_y1: DivisorExpression,
    pub canonical_y2: DivisorExpression,
    pub ramification: Vec<RamificationDatum>,
    pub canonical_quotient: DivisorExpression,
    pub discrepancies: Vec<(String, i64)>,
    pub classification: Classification,
    pub round_trip: bool,
    pub cm: CmVerdict,
    pub dual_graph: DualGraph,
}

impl Dim3Report {
    /// Every chart check holds, all discrepancies are positive and the
    /// quotient is not CM.
    pub fn passed(&self) -> bool {
        let charts_ok = self.charts.iter().all(|c| {
            c.involution
                && c.sigma_stable
                && c.ramification.iter().all(|r| {
                    r.cartier_multiplicity
                        .is_none_or(|m| Valuation::Finite(m as i64) == r.artin)
                })
        });
        charts_ok
            && self.bad_points.len() == 7
            && self.round_trip
            && self.classification.class == crate::ledger::SingularityClass::Terminal
            && self.cm.is_not_cm()
            && self.dual_graph.star_center().is_some()
    }
}

fn torus() -> Result<ChartAction> {
    ChartAction::parse(
        P,
        &["x1", "x2", "x3"],
        &[("1", "x1"), ("1", "x2"), ("1", "x3")],
        &["x1", "x2", "x3"],
    )
}

fn record(name: &str, c: ChartAction, along: &[(&str, &str)]) -> Result<ChartRecord> {
    let gens = fixed_scheme_generators(&c);
    let sigma_stable = is_sigma_stable(&c, &gens);
    let coords: Vec<&str> = along.iter().map(|(x, _)| *x).collect();
    let cartier = cartier_test(&c, &gens, &coords)?;
    let mut ramification = Vec::new();
    for (coord, divisor) in along {
        let artin = artin_number(&c, coord)?;
        let kind = swan_classify(&c, coord, artin)?;
        ramification.push(DivisorRamification {
            coordinate: coord.to_string(),
            divisor: divisor.to_string(),
            artin,
            kind,
            different: different_coefficient(P, kind.artin())?,
            cartier_multiplicity: cartier.multiplicity(coord),
        });
    }
    Ok(ChartRecord {
        name: name.to_string(),
        generators: gens.iter().map(|g| c.show(g)).collect(),
        involution: c.check_involution().is_ok(),
        sigma_stable,
        chart: c,
        cartier,
        ramification,
    })
}

/// Points of `F_2^3` where every generator vanishes and every unit does not.
fn fixed_points(c: &ChartAction, gens: &[PolyFp]) -> Vec<Vec<u64>> {
    (0..8u64)
        .map(|k| vec![(k >> 2) & 1, (k >> 1) & 1, k & 1])
        .filter(|pt| gens.iter().all(|g| g.eval(pt) == 0))
        .filter(|pt| c.units().iter().all(|u| u.eval(pt) != 0))
        .collect()
}

/// `n` when generator `i` is a nonconstant polynomial in `x_i` alone, so
/// the common zero set over the algebraic closure is finite.
fn finite_locus_codim(gens: &[PolyFp]) -> Option<u32> {
    let n = gens.len();
    let ok = gens
        .iter()
        .enumerate()
        .all(|(i, g)| g.max_exponent(i) > 0 && (0..n).all(|j| j == i || g.max_exponent(j) == 0));
    ok.then_some(n as u32)
}

/// The seven points of `P^2(F_2)`, `[1:0:0]`, `[0:1:0]`, `[0:0:1]` first.
fn projective_points() -> Vec<Vec<u64>> {
    let mut pts: Vec<Vec<u64>> = (1..8u64)
        .map(|k| vec![(k >> 2) & 1, (k >> 1) & 1, k & 1])
        .collect();
    pts.sort_by_key(|v| (v.iter().sum::<u64>(), std::cmp::Reverse(v.clone())));
    pts
}

fn first_blowup(y0: &ChartAction, pivot: usize) -> Result<ChartAction> {
    let y = ["y1", "y2", "y3"];
    let w = ["w1", "w2", "w3"];
    let rename: Vec<(&str, &str)> = (0..3)
        .filter(|&j| j != pivot)
        .map(|j| (y[j], w[j]))
        .collect();
    blowup_chart(y0, &y, y[pivot], &rename, &[])
}

/// Second blow-up at the point `pt` of `E`, in the chart where the new
/// exceptional divisor is `{y_k = 0}`, `k` the first nonzero coordinate.
fn second_blowup_at(y0: &ChartAction, pt: &[u64], divisor: &str) -> Result<ChartRecord> {
    let k = pt
        .iter()
        .position(|&c| c == 1)
        .ok_or_else(|| Error::Usage("zero point".into()))?;
    let u = first_blowup(y0, k)?;
    let shifted: Vec<String> = u
        .coords()
        .iter()
        .enumerate()
        .map(|(j, c)| if j == k { c.clone() } else { format!("{c}s") })
        .collect();
    let names: Vec<&str> = shifted.iter().map(String::as_str).collect();
    let mut shift = pt.to_vec();
    shift[k] = 0;
    let local = translate_chart(&u, &shift, &names)?;
    let v = ["v1", "v2", "v3"];
    let rename: Vec<(&str, &str)> = (0..3)
        .filter(|&j| j != k)
        .map(|j| (names[j], v[j]))
        .collect();
    let c = blowup_chart(&local, &names, names[k], &rename, &[])?;
    let label = format!("Y2 at [{}:{}:{}], v{}=1", pt[0], pt[1], pt[2], k + 1);
    record(&label, c, &[(names[k], divisor)])
}

pub fn run_dim3(opts: Dim3Options) -> Result<Dim3Report> {
    let x = torus()?;
    let x_gens = fixed_scheme_generators(&x);
    let torus_fixed_points = fixed_points(&x, &x_gens);
    let fixed_locus_codim = finite_locus_codim(&x_gens)
        .ok_or_else(|| Error::Inconsistent("fixed locus of the torus is not finite".into()))?;
    let mut charts = vec![record("X", x, &[])?];

    let y0 = translate_chart(&charts[0].chart, &[1, 1, 1], &["y1", "y2", "y3"])?;
    charts.push(record("Y0", y0.clone(), &[])?);

    // Y_1: E is {y_k = 0} in chart U_k
    let mut bad_points: Vec<Vec<u64>> = Vec::new();
    for k in 0..3 {
        let u = first_blowup(&y0, k)?;
        let t = u.coords()[k].clone();
        let rec = record(&format!("U{}", k + 1), u, &[(&t, "E")])?;
        if let CartierVerdict::NotPrincipal { loci } = &rec.cartier {
            for pt in &loci[0].points {
                // chart point (w, with y_k = 0) is [w_1 : ... : 1 : ... : w_3]
                let mut h = pt.clone();
                h[k] = 1;
                if !bad_points.contains(&h) {
                    bad_points.push(h);
                }
            }
        }
        charts.push(rec);
    }
    let order = projective_points();
    bad_points.sort_by_key(|h| order.iter().position(|q| q == h));

    // Y_2 over [1:0:0]: pivot y1 sees E1, pivots w2 and w3 see E0 and E1
    let u1 = charts[2].chart.clone();
    let c = blowup_chart(
        &u1,
        &["y1", "w2", "w3"],
        "y1",
        &[("w2", "v2"), ("w3", "v3")],
        &[],
    )?;
    charts.push(record("Y2 v1=1", c, &[("y1", "E1")])?);
    let c = blowup_chart(
        &u1,
        &["y1", "w2", "w3"],
        "w2",
        &[("y1", "v1"), ("w3", "v3")],
        &["w2 + 1"],
    )?;
    charts.push(record("Y2 v2=1", c, &[("v1", "E0"), ("w2", "E1")])?);
    let c = blowup_chart(
        &u1,
        &["y1", "w2", "w3"],
        "w3",
        &[("y1", "v1"), ("w2", "v2")],
        &["w3 + 1"],
    )?;
    charts.push(record("Y2 v3=1", c, &[("v1", "E0"), ("w3", "E1")])?);

    let coverage = if opts.all_charts {
        for (j, pt) in bad_points.iter().enumerate() {
            charts.push(second_blowup_at(&y0, pt, &format!("E{}", j + 1))?);
        }
        PointCoverage::Recomputed {
            charts: bad_points.len(),
        }
    } else {
        PointCoverage::Symmetry {
            computed: bad_points.first().cloned().unwrap_or_default(),
        }
    };

    // collect one ramification type per divisor name
    let mut exceptional_e0 = None;
    let mut exceptional_e1 = None;
    let mut per_point: Vec<(String, RamificationType)> = Vec::new();
    for rec in &charts {
        for r in &rec.ramification {
            match r.divisor.as_str() {
                "E0" => exceptional_e0 = exceptional_e0.or(Some(r.clone())),
                "E1" if rec.name.starts_with("Y2 v") => {
                    exceptional_e1 = exceptional_e1.or(Some(r.clone()))
                }
                d if rec.name.starts_with("Y2 at") => per_point.push((d.to_string(), r.kind)),
                _ => {}
            }
        }
    }
    let e0 = exceptional_e0.ok_or_else(|| Error::Ledger("no chart sees E0".into()))?;
    let e1 = exceptional_e1.ok_or_else(|| Error::Ledger("no chart sees E1".into()))?;

    let mut ledger = Ledger::new("K_Y0");
    let canonical_y1 = ledger.blowup(&[BlowupCenter::point(3, "E", &[])], &[])?;
    let centers: Vec<BlowupCenter> = (1..=bad_points.len())
        .map(|j| BlowupCenter::point(3, &format!("E{j}"), &["E"]))
        .collect();
    let canonical_y2 = ledger.blowup(
        &centers,
        &[Rename {
            old: "E".into(),
            new: "E0".into(),
        }],
    )?;

    let mut ramification = vec![RamificationDatum::from_type("E0", "F0", &e0.kind, P)?];
    let mut fixed_divisor = DivisorExpression::new(None);
    fixed_divisor.add_term("E0", e0.artin.finite().unwrap_or(0));
    for j in 1..=bad_points.len() {
        let name = format!("E{j}");
        let kind = per_point
            .iter()
            .find(|(d, _)| *d == name)
            .map_or(e1.kind, |(_, k)| *k);
        ramification.push(RamificationDatum::from_type(
            &name,
            &format!("F{j}"),
            &kind,
            P,
        )?);
        fixed_divisor.add_term(&name, kind.artin());
    }

    let canonical_quotient = quotient_descend(&canonical_y2, &ramification, "pi*K_Y0/G")?;
    let back = pullback_quotient(&canonical_quotient, &ramification, "pi*K_Y0")?
        .plus(&different_divisor(&ramification));
    let round_trip = back == canonical_y2;
    let mut discrepancies: Vec<(String, i64)> = canonical_quotient
        .terms()
        .map(|(n, a)| (n.to_string(), a))
        .collect();
    discrepancies.sort_by_key(|(n, _)| n[1..].parse::<u32>().unwrap_or(0));
    let classification = classify_singularity(&canonical_quotient);
    let dual_graph = DualGraph::from_ledger(&ledger, |s| s.replacen('E', "F", 1));

    Ok(Dim3Report {
        p: P,
        torus_fixed_points,
        fixed_locus_codim,
        charts,
        bad_points,
        coverage,
        fixed_divisor,
        canonical_y1,
        canonical_y2,
        ramification,
        canonical_quotient,
        discrepancies,
        classification,
        round_trip,
        cm: fogarty_cm_test(fixed_locus_codim),
        dual_graph,
    })
}
