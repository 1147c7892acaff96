use serde::{Serialize, Serializer};

use crate::arith::is_prime;
use crate::error::{Error, Result};

use super::poly::PolyFp;
use super::rational::RatFp;

/// An involution `sigma` of an affine chart, given by its pullback on each
/// coordinate, with the polynomials declared invertible on the chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartAction {
    p: u64,
    coords: Vec<String>,
    sigma: Vec<RatFp>,
    units: Vec<PolyFp>,
}

impl ChartAction {
    /// Checks that every denominator is a product of units and that
    /// `sigma` is an involution.
    pub fn new(p: u64, coords: Vec<String>, sigma: Vec<RatFp>, units: Vec<PolyFp>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = coords.len();
        if sigma.len() != n {
            return Err(Error::PolyMismatch(format!(
                "{} coordinates, {} images",
                n,
                sigma.len()
            )));
        }
        for f in sigma
            .iter()
            .map(RatFp::num)
            .chain(sigma.iter().map(RatFp::den))
            .chain(&units)
        {
            if f.p() != p || f.nvars() != n {
                return Err(Error::PolyMismatch(format!(
                    "expected F_{p} in {n} variables"
                )));
            }
        }
        let units: Vec<PolyFp> = units
            .into_iter()
            .filter(|u| u.constant_value().is_none())
            .map(|u| u.monic())
            .collect();
        let c = ChartAction {
            p,
            coords,
            sigma,
            units,
        };
        for (i, s) in c.sigma.iter().enumerate() {
            if !c.is_unit_product(s.den()) {
                return Err(Error::NonUnitDenominator(format!(
                    "{} in sigma({})",
                    s.den().display(&c.coords),
                    c.coords[i]
                )));
            }
        }
        c.check_involution()?;
        Ok(c)
    }

    /// Build from strings, e.g. `("y1", "y1 + 1")` for `y1 / (y1 + 1)`.
    pub fn parse(p: u64, coords: &[&str], sigma: &[(&str, &str)], units: &[&str]) -> Result<Self> {
        let sigma = sigma
            .iter()
            .map(|(n, d)| RatFp::parse(p, coords, n, d))
            .collect::<Result<Vec<_>>>()?;
        let units = units
            .iter()
            .map(|u| PolyFp::parse(p, coords, u))
            .collect::<Result<Vec<_>>>()?;
        ChartAction::new(
            p,
            coords.iter().map(|s| s.to_string()).collect(),
            sigma,
            units,
        )
    }

    pub fn identity(p: u64, coords: &[&str]) -> Result<Self> {
        let n = coords.len();
        let sigma = (0..n)
            .map(|i| RatFp::from_poly(PolyFp::var(p, n, i)))
            .collect();
        ChartAction::new(
            p,
            coords.iter().map(|s| s.to_string()).collect(),
            sigma,
            Vec::new(),
        )
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    pub fn sigma(&self) -> &[RatFp] {
        &self.sigma
    }

    pub fn sigma_of(&self, name: &str) -> Result<&RatFp> {
        Ok(&self.sigma[self.index_of(name)?])
    }

    pub fn units(&self) -> &[PolyFp] {
        &self.units
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.coords
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::UnknownCoordinate(name.to_string()))
    }

    pub fn var(&self, name: &str) -> Result<PolyFp> {
        Ok(PolyFp::var(self.p, self.nvars(), self.index_of(name)?))
    }

    pub fn poly(&self, s: &str) -> Result<PolyFp> {
        let names: Vec<&str> = self.coords.iter().map(String::as_str).collect();
        PolyFp::parse(self.p, &names, s)
    }

    /// `sigma^*(f) = f o sigma`.
    pub fn apply(&self, f: &RatFp) -> RatFp {
        f.compose(&self.sigma)
    }

    pub fn apply_poly(&self, f: &PolyFp) -> RatFp {
        self.apply(&RatFp::from_poly(f.clone()))
    }

    /// Divide out declared unit factors as often as possible.
    pub fn strip_units(&self, f: &PolyFp) -> PolyFp {
        let mut g = f.clone();
        if g.is_zero() {
            return g;
        }
        for u in &self.units {
            while let Some(q) = g.div_exact(u) {
                g = q;
            }
        }
        g
    }

    pub fn is_unit_product(&self, f: &PolyFp) -> bool {
        matches!(self.strip_units(f).constant_value(), Some(c) if c != 0)
    }

    pub fn check_involution(&self) -> Result<()> {
        for (i, s) in self.sigma.iter().enumerate() {
            let back = self.apply(s);
            let x = RatFp::from_poly(PolyFp::var(self.p, self.nvars(), i));
            if back != x {
                return Err(Error::NotInvolution(self.coords[i].clone()));
            }
        }
        Ok(())
    }

    pub fn simplify(&self, f: &RatFp) -> RatFp {
        f.simplify(&self.units)
    }

    pub fn show(&self, f: &PolyFp) -> String {
        f.display(&self.coords)
    }

    pub fn show_rat(&self, f: &RatFp) -> String {
        self.simplify(f).display(&self.coords)
    }

    /// `(coordinate, sigma(coordinate))` pairs, simplified.
    pub fn sigma_strings(&self) -> Vec<(String, String)> {
        self.coords
            .iter()
            .cloned()
            .zip(self.sigma.iter().map(|s| self.show_rat(s)))
            .collect()
    }
}

impl Serialize for ChartAction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let sigma: std::collections::BTreeMap<String, String> =
            self.sigma_strings().into_iter().collect();
        let units: Vec<String> = self.units.iter().map(|u| self.show(u)).collect();
        let mut st = s.serialize_struct("ChartAction", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("coords", &self.coords)?;
        st.serialize_field("sigma", &sigma)?;
        st.serialize_field("units", &units)?;
        st.end()
    }
}

/// For each coordinate `x`, the numerator of `sigma(x) - x` with unit
/// factors removed, made monic. Zero polynomials are kept so the list is
/// indexed like the coordinates.
pub fn fixed_scheme_generators(c: &ChartAction) -> Vec<PolyFp> {
    let n = c.nvars();
    (0..n)
        .map(|i| {
            let s = &c.sigma[i];
            let x = PolyFp::var(c.p, n, i);
            let g = s.num() - &(&x * s.den());
            c.strip_units(&g).monic()
        })
        .collect()
}

/// Every `sigma(g)` lies in the ideal of `gens`: its numerator, with units
/// removed, is divisible by one generator or reduces to zero against all.
pub fn is_sigma_stable(c: &ChartAction, gens: &[PolyFp]) -> bool {
    let nonzero: Vec<PolyFp> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    gens.iter().filter(|g| !g.is_zero()).all(|g| {
        let h = c.strip_units(c.apply_poly(g).num());
        nonzero.iter().any(|d| d.divides(&h)) || h.reduce(&nonzero).1.is_zero()
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureLocus {
    pub divisor: String,
    /// Minimal order of vanishing along the divisor over all generators.
    pub multiplicity: u32,
    /// Generators divided by `t^multiplicity`.
    pub cofactors: Vec<String>,
    /// `F_p`-points of `{t = 0}` where all cofactors vanish and all units
    /// are nonzero, in chart coordinates.
    pub points: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CartierVerdict {
    Principal {
        generator: String,
        /// Coordinate powers in the generator.
        multiplicities: Vec<(String, u32)>,
        residual: String,
    },
    NotPrincipal {
        loci: Vec<FailureLocus>,
    },
}

impl CartierVerdict {
    pub fn is_principal(&self) -> bool {
        matches!(self, CartierVerdict::Principal { .. })
    }

    pub fn multiplicity(&self, coord: &str) -> Option<u32> {
        match self {
            CartierVerdict::Principal { multiplicities, .. } => Some(
                multiplicities
                    .iter()
                    .find(|(c, _)| c == coord)
                    .map_or(0, |(_, m)| *m),
            ),
            CartierVerdict::NotPrincipal { .. } => None,
        }
    }
}

/// Whether `(gens)` is principal, by testing whether a generator of least
/// degree divides all others.
pub fn cartier_test(c: &ChartAction, gens: &[PolyFp], divisors: &[&str]) -> Result<CartierVerdict> {
    let gens: Vec<PolyFp> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| c.strip_units(g).monic())
        .collect();
    if gens.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    let g = gens
        .iter()
        .min_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.leading().cmp(&b.leading()))
        })
        .unwrap();
    if gens.iter().all(|h| g.divides(h)) {
        let content = g.monomial_content();
        let multiplicities = content
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (c.coords[i].clone(), e))
            .collect();
        let residual = g.div_monomial(&content);
        return Ok(CartierVerdict::Principal {
            generator: c.show(g),
            multiplicities,
            residual: c.show(&residual),
        });
    }
    let mut loci = Vec::new();
    for name in divisors {
        let t = c.index_of(name)?;
        let m = gens.iter().map(|h| h.ord(t)).min().unwrap();
        let mut shift = super::poly::Monomial::one(c.nvars());
        shift.0[t] = m;
        let cofactors: Vec<PolyFp> = gens.iter().map(|h| h.div_monomial(&shift)).collect();
        let on_divisor: Vec<PolyFp> = cofactors.iter().map(|h| h.restrict(t, 0)).collect();
        let units: Vec<PolyFp> = c.units.iter().map(|u| u.restrict(t, 0)).collect();
        let points = fp_points(c.p, c.nvars(), t)
            .filter(|pt| on_divisor.iter().all(|h| h.eval(pt) == 0))
            .filter(|pt| units.iter().all(|u| u.eval(pt) != 0))
            .collect();
        loci.push(FailureLocus {
            divisor: name.to_string(),
            multiplicity: m,
            cofactors: cofactors.iter().map(|h| c.show(h)).collect(),
            points,
        });
    }
    Ok(CartierVerdict::NotPrincipal { loci })
}

/// All points of `F_p^n` with coordinate `t` equal to 0, in lexicographic
/// order.
fn fp_points(p: u64, n: usize, t: usize) -> impl Iterator<Item = Vec<u64>> {
    let free = n - 1;
    let total = p.pow(free as u32);
    (0..total).map(move |mut k| {
        let mut digits = vec![0u64; free];
        for d in digits.iter_mut().rev() {
            *d = k % p;
            k /= p;
        }
        let mut pt = Vec::with_capacity(n);
        let mut it = digits.into_iter();
        for i in 0..n {
            pt.push(if i == t { 0 } else { it.next().unwrap() });
        }
        pt
    })
}

/// Conjugate by the translation `x = y + point`.
pub fn translate_chart(c: &ChartAction, point: &[u64], names: &[&str]) -> Result<ChartAction> {
    let n = c.nvars();
    if point.len() != n || names.len() != n {
        return Err(Error::Usage(format!(
            "translation needs {n} coordinates and names"
        )));
    }
    let p = c.p;
    let shift: Vec<PolyFp> = (0..n)
        .map(|i| &PolyFp::var(p, n, i) + &PolyFp::constant(p, n, point[i] as i64))
        .collect();
    let subs: Vec<RatFp> = shift.iter().cloned().map(RatFp::from_poly).collect();
    let units: Vec<PolyFp> = c.units.iter().map(|u| u.compose(&shift)).collect();
    let sigma: Vec<RatFp> = (0..n)
        .map(|i| {
            let moved = c.sigma[i].compose(&subs);
            let back = moved.sub(&RatFp::from_poly(PolyFp::constant(p, n, point[i] as i64)));
            back.simplify(&units)
        })
        .collect();
    ChartAction::new(
        p,
        names.iter().map(|s| s.to_string()).collect(),
        sigma,
        units,
    )
}

/// The chart of the blow-up along `{x = 0 : x in center}` where `pivot`
/// generates the exceptional ideal. Every other center coordinate `x` is
/// replaced by `x / pivot`, renamed according to `rename`; `extra_units`
/// are parsed in the new coordinates and added to the unit list.
pub fn blowup_chart(
    c: &ChartAction,
    center: &[&str],
    pivot: &str,
    rename: &[(&str, &str)],
    extra_units: &[&str],
) -> Result<ChartAction> {
    let n = c.nvars();
    let p = c.p;
    let center_idx: Vec<usize> = center
        .iter()
        .map(|x| c.index_of(x))
        .collect::<Result<_>>()?;
    let pv = c.index_of(pivot)?;
    if !center_idx.contains(&pv) {
        return Err(Error::Usage(format!("pivot {pivot} is not in the center")));
    }
    for &i in &center_idx {
        let s = &c.sigma[i];
        let mut num = s.num().clone();
        let mut den = s.den().clone();
        for &j in &center_idx {
            num = num.restrict(j, 0);
            den = den.restrict(j, 0);
        }
        if !num.is_zero() || den.is_zero() {
            return Err(Error::CenterNotFixed(format!(
                "sigma({}) = {} does not vanish on the center",
                c.coords[i],
                c.show_rat(s)
            )));
        }
    }
    let mut names = c.coords.clone();
    for &i in &center_idx {
        if i == pv {
            continue;
        }
        let old = &c.coords[i];
        names[i] = rename
            .iter()
            .find(|(from, _)| from == old)
            .map(|(_, to)| to.to_string())
            .unwrap_or_else(|| format!("{old}_{pivot}"));
    }
    let pivot_var = PolyFp::var(p, n, pv);
    let phi: Vec<PolyFp> = (0..n)
        .map(|i| {
            let v = PolyFp::var(p, n, i);
            if i != pv && center_idx.contains(&i) {
                &pivot_var * &v
            } else {
                v
            }
        })
        .collect();
    let phi_rat: Vec<RatFp> = phi.iter().cloned().map(RatFp::from_poly).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut units: Vec<PolyFp> = c.units.iter().map(|u| u.compose(&phi)).collect();
    for u in extra_units {
        units.push(PolyFp::parse(p, &name_refs, u)?);
    }
    let sp = c.sigma[pv].compose(&phi_rat);
    let mut sigma = Vec::with_capacity(n);
    for i in 0..n {
        let moved = c.sigma[i].compose(&phi_rat);
        let s = if i != pv && center_idx.contains(&i) {
            moved.div(&sp)?
        } else {
            moved
        };
        sigma.push(s.simplify(&units));
    }
    ChartAction::new(p, names, sigma, units)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> ChartAction {
        ChartAction::parse(
            2,
            &["x1", "x2", "x3"],
            &[("1", "x1"), ("1", "x2"), ("1", "x3")],
            &["x1", "x2", "x3"],
        )
        .unwrap()
    }

    fn y0() -> ChartAction {
        translate_chart(&torus(), &[1, 1, 1], &["y1", "y2", "y3"]).unwrap()
    }

    fn u1() -> ChartAction {
        blowup_chart(
            &y0(),
            &["y1", "y2", "y3"],
            "y1",
            &[("y2", "w2"), ("y3", "w3")],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn translation_gives_y_over_1_plus_y() {
        let c = y0();
        assert_eq!(c.show_rat(&c.sigma()[0]), "y1/(y1 + 1)");
        assert_eq!(c.units().len(), 3);
        let again = translate_chart(&c, &[1, 1, 1], &["x1", "x2", "x3"]).unwrap();
        assert_eq!(again, torus());
        let same = translate_chart(&c, &[0, 0, 0], &["y1", "y2", "y3"]).unwrap();
        assert_eq!(same, c);
    }

    #[test]
    fn first_blowup_chart() {
        let c = u1();
        assert_eq!(c.coords(), ["y1", "w2", "w3"]);
        assert_eq!(
            *c.sigma_of("w2").unwrap(),
            RatFp::parse(2, &["y1", "w2", "w3"], "w2*y1 + w2", "y1*w2 + 1").unwrap()
        );
        let gens = fixed_scheme_generators(&c);
        let show: Vec<String> = gens.iter().map(|g| c.show(g)).collect();
        assert_eq!(show, ["y1^2", "y1*w2^2 + y1*w2", "y1*w3^2 + y1*w3"]);
        assert!(is_sigma_stable(&c, &gens));
        match cartier_test(&c, &gens, &["y1"]).unwrap() {
            CartierVerdict::NotPrincipal { loci } => {
                assert_eq!(loci[0].multiplicity, 1);
                assert_eq!(
                    loci[0].points,
                    vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1]]
                );
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn second_blowup_chart_v2() {
        let c = blowup_chart(
            &u1(),
            &["y1", "w2", "w3"],
            "y1",
            &[("w2", "v2"), ("w3", "v3")],
            &[],
        )
        .unwrap();
        let expect = RatFp::parse(2, &["y1", "v2", "v3"], "v2*y1^2 + v2", "y1^2*v2 + 1").unwrap();
        assert_eq!(*c.sigma_of("v2").unwrap(), expect);
        let gens = fixed_scheme_generators(&c);
        let v = cartier_test(&c, &gens, &["y1"]).unwrap();
        assert_eq!(v.multiplicity("y1"), Some(2));
    }

    #[test]
    fn identity_action() {
        let c = ChartAction::identity(2, &["a", "b"]).unwrap();
        assert!(fixed_scheme_generators(&c).iter().all(PolyFp::is_zero));
        assert_eq!(
            cartier_test(&c, &fixed_scheme_generators(&c), &["a"]),
            Err(Error::ZeroIdeal)
        );
        let b = blowup_chart(&c, &["a", "b"], "a", &[("b", "t")], &[]).unwrap();
        assert_eq!(b, ChartAction::identity(2, &["a", "t"]).unwrap());
    }

    #[test]
    fn single_generator_square() {
        let c = ChartAction::identity(2, &["t", "u"]).unwrap();
        let v = cartier_test(&c, &[c.poly("t^2").unwrap()], &["t"]).unwrap();
        assert_eq!(v.multiplicity("t"), Some(2));
    }

    #[test]
    fn validation_errors() {
        let bad = ChartAction::parse(2, &["x"], &[("1", "x")], &[]);
        assert!(matches!(bad, Err(Error::NonUnitDenominator(_))));
        let not_inv = ChartAction::parse(3, &["x"], &[("x", "x + 1")], &["x + 1"]);
        assert!(matches!(not_inv, Err(Error::NotInvolution(_))));
        let moved = blowup_chart(&torus(), &["x1", "x2", "x3"], "x1", &[], &[]);
        assert!(matches!(moved, Err(Error::CenterNotFixed(_))));
        assert!(matches!(
            blowup_chart(&y0(), &["y1", "y2"], "y3", &[], &[]),
            Err(Error::Usage(_))
        ));
    }
}
