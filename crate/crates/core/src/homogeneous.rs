//! Homogeneous spaces `G/P` for `G = SL(n)` and a possibly non-reduced
//! parabolic subgroup scheme `P` described by a function
//! `f: {simple roots} -> N ∪ {∞}`.
//!
//! Only numerical data is modelled: dimension, Picard lattice, the
//! anticanonical class and ampleness. `Pic(G/P)` is identified with the
//! sublattice of the weight lattice spanned by `p^{f(i)} w_i` for `f(i)`
//! finite.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::weight::{pairing, support, PositiveRoot, RootSystemA, Weight};

/// A value of the parabolic function. `Finite < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FValue {
    Finite(u32),
    Infinite,
}

impl FValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, FValue::Finite(_))
    }
}

impl fmt::Display for FValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FValue::Finite(r) => write!(f, "{r}"),
            FValue::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for FValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for FValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(FValue::Infinite);
        }
        t.parse::<u32>().map(FValue::Finite).map_err(|_| {
            Error::Usage(format!(
                "bad parabolic value `{t}` (expected integer or inf)"
            ))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ParabolicFunction {
    #[serde(skip)]
    rs: RootSystemA,
    n: usize,
    p: u64,
    values: Vec<FValue>,
}

impl ParabolicFunction {
    pub fn new(n: usize, p: u64, values: Vec<FValue>) -> Result<Self> {
        let rs = RootSystemA::new(n)?;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if values.len() != rs.rank() {
            return Err(Error::ParabolicArity {
                got: values.len(),
                expected: rs.rank(),
            });
        }
        Ok(Self { rs, n, p, values })
    }

    /// `f(1) = 1`, `f(2) = 0`, `f(i) = ∞` for `i >= 3`; `G/P_red = Fl(1, 2, n)`.
    pub fn fl12(p: u64, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Precondition(format!(
                "Fl(1,2,n) needs n >= 3, got {n}"
            )));
        }
        let mut values = vec![FValue::Infinite; n - 1];
        values[0] = FValue::Finite(1);
        values[1] = FValue::Finite(0);
        Self::new(n, p, values)
    }

    /// Constant function `f ≡ r`.
    pub fn constant(p: u64, n: usize, r: u32) -> Result<Self> {
        Self::new(n, p, vec![FValue::Finite(r); n.saturating_sub(1)])
    }

    pub fn root_system(&self) -> RootSystemA {
        self.rs
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn values(&self) -> &[FValue] {
        &self.values
    }

    /// `f(alpha_i)`, 1-based.
    pub fn at(&self, i: usize) -> FValue {
        self.values[i - 1]
    }

    fn has_finite(&self) -> bool {
        self.values.iter().any(FValue::is_finite)
    }

    /// `p^{f(i)}` for finite `f(i)`.
    fn lattice_step(&self, i: usize) -> Option<BigInt> {
        match self.at(i) {
            FValue::Finite(r) => Some(BigInt::from(self.p).pow(r)),
            FValue::Infinite => None,
        }
    }

    /// Generators `p^{f(i)} w_i` of `Pic(G/P)`, with their indices.
    pub fn picard_basis(&self) -> Vec<(usize, Weight)> {
        (1..=self.rs.rank())
            .filter_map(|i| {
                self.lattice_step(i)
                    .map(|step| (i, self.rs.fundamental(i).scale(step)))
            })
            .collect()
    }

    pub fn picard_number(&self) -> usize {
        self.picard_basis().len()
    }

    /// Why `mu` fails to lie in `Pic(G/P)`, if it does.
    pub fn lattice_violation(&self, mu: &Weight) -> Option<String> {
        if mu.rank() != self.rs.rank() {
            return Some(format!("rank {} != {}", mu.rank(), self.rs.rank()));
        }
        for i in 1..=self.rs.rank() {
            let c = mu.coeff(i);
            match self.lattice_step(i) {
                None if !c.is_zero() => {
                    return Some(format!(
                        "coefficient of w{i} must vanish since f({i}) = inf"
                    ))
                }
                Some(step) if !(&c % &step).is_zero() => {
                    return Some(format!("coefficient of w{i} is not divisible by {step}"))
                }
                _ => {}
            }
        }
        None
    }
}

impl fmt::Display for ParabolicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(
            f,
            "f = ({}) on SL({}), p = {}",
            vals.join(","),
            self.n,
            self.p
        )
    }
}

/// A line bundle on `G/P`, identified with its weight in `Pic(G/P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPLineBundle {
    weight: Weight,
    parent: ParabolicFunction,
}

impl GPLineBundle {
    pub fn new(parent: &ParabolicFunction, weight: Weight) -> Result<Self> {
        if let Some(reason) = parent.lattice_violation(&weight) {
            return Err(Error::NotInPicard {
                weight: weight.to_string(),
                reason,
            });
        }
        Ok(Self {
            weight,
            parent: parent.clone(),
        })
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn parent(&self) -> &ParabolicFunction {
        &self.parent
    }

    pub fn scale(&self, k: i64) -> GPLineBundle {
        GPLineBundle {
            weight: self.weight.scale(k),
            parent: self.parent.clone(),
        }
    }

    /// `self / d`, if still in the lattice.
    pub fn divide(&self, d: &BigInt) -> Result<GPLineBundle> {
        let mut coeffs = Vec::with_capacity(self.weight.rank());
        for c in self.weight.coeffs() {
            if !(c % d).is_zero() {
                return Err(Error::NotInPicard {
                    weight: format!("({}) / {d}", self.weight),
                    reason: "not an integral weight".into(),
                });
            }
            coeffs.push(c / d);
        }
        GPLineBundle::new(&self.parent, Weight::new(coeffs))
    }

    /// Coordinates of the bundle in the Picard basis `p^{f(i)} w_i`.
    pub fn picard_coordinates(&self) -> Vec<(usize, BigInt)> {
        self.parent
            .picard_basis()
            .into_iter()
            .map(|(i, _)| {
                let step = self.parent.lattice_step(i).expect("basis index is finite");
                (i, self.weight.coeff(i) / step)
            })
            .collect()
    }
}

impl fmt::Display for GPLineBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.weight.fmt(f)
    }
}

/// `f(beta) = min over supp(beta) of f(alpha)`.
pub fn extend_f(f: &ParabolicFunction, beta: PositiveRoot) -> FValue {
    support(beta)
        .into_iter()
        .map(|k| f.at(k))
        .min()
        .unwrap_or(FValue::Infinite)
}

/// Number of positive roots with finite extended `f`.
pub fn gp_dimension(f: &ParabolicFunction) -> usize {
    f.rs.positive_roots()
        .filter(|&b| extend_f(f, b).is_finite())
        .count()
}

/// `-K_X = sum over beta with f(beta) < ∞ of p^{f(beta)} beta`.
pub fn anticanonical(f: &ParabolicFunction) -> Result<GPLineBundle> {
    if !f.has_finite() {
        return Err(Error::AllInfinite);
    }
    let rank = f.rs.rank();
    let mut acc = Weight::zero(rank);
    for beta in f.rs.positive_roots() {
        if let FValue::Finite(r) = extend_f(f, beta) {
            let coeff = BigInt::from(f.p).pow(r);
            acc = &acc + &beta.to_weight(rank).scale(coeff);
        }
    }
    GPLineBundle::new(f, acc)
}

/// Positive coefficient of `w_i` for every `i` with `f(i)` finite.
///
/// On `G/P` ample line bundles are automatically very ample.
pub fn is_ample(l: &GPLineBundle) -> bool {
    let f = &l.parent;
    let mut any = false;
    for i in 1..=f.rs.rank() {
        if f.at(i).is_finite() {
            any = true;
            if !l.weight.coeff(i).is_positive() {
                return false;
            }
        }
    }
    any
}

/// `-K_X` ample. A function that is infinite everywhere gives a point and
/// is reported as not Fano.
pub fn is_fano(f: &ParabolicFunction) -> bool {
    anticanonical(f).map(|k| is_ample(&k)).unwrap_or(false)
}

/// Largest `d` with `L / d` still in `Pic(G/P)`.
pub fn divisibility(l: &GPLineBundle) -> Result<BigInt> {
    if l.weight.is_zero() {
        return Err(Error::ZeroBundle);
    }
    Ok(l.picard_coordinates()
        .into_iter()
        .fold(BigInt::zero(), |g, (_, c)| g.gcd(&c)))
}

/// Degree on the `P^1` fibers of `G/P -> G/Q`: `<lambda, alpha^vee> / p`,
/// for a simple root with `f(alpha) = 1`.
pub fn fiber_degree(l: &GPLineBundle, alpha: PositiveRoot) -> Result<BigInt> {
    let k = alpha.simple_index()?;
    let f = &l.parent;
    if k > f.rs.rank() {
        return Err(Error::InvalidRoot {
            i: alpha.i(),
            j: alpha.j(),
            rank: f.rs.rank(),
        });
    }
    if f.at(k) != FValue::Finite(1) {
        return Err(Error::FiberDegree {
            alpha: k,
            reason: format!("f({k}) = {} != 1", f.at(k)),
        });
    }
    let c = pairing(&l.weight, alpha)?;
    let p = BigInt::from(f.p);
    if !(&c % &p).is_zero() {
        return Err(Error::FiberDegree {
            alpha: k,
            reason: format!("pairing {c} is not a multiple of p = {p}"),
        });
    }
    Ok(c / p)
}

/// Whether `a` is `A = t * (-K_X)` for a rational `t`, and `t` if so.
pub fn proportionality(a: &Weight, k: &Weight) -> Option<num_rational::BigRational> {
    use num_rational::BigRational;
    let mut ratio: Option<BigRational> = None;
    for (x, y) in a.coeffs().iter().zip(k.coeffs()) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (false, true) | (true, false) => return None,
            (false, false) => {
                let r = BigRational::new(x.clone(), y.clone());
                match &ratio {
                    Some(prev) if *prev != r => return None,
                    _ => ratio = Some(r),
                }
            }
        }
    }
    ratio
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use crate::weight::rho;
    use num_traits::One;
    use proptest::prelude::*;

    fn w(c: &[i64]) -> Weight {
        Weight::from_i64s(c)
    }

    #[test]
    fn extend_f_examples() {
        let f = ParabolicFunction::fl12(3, 5).unwrap();
        let rs = f.root_system();
        assert_eq!(extend_f(&f, rs.root(1, 2).unwrap()), FValue::Finite(1));
        assert_eq!(extend_f(&f, rs.root(1, 3).unwrap()), FValue::Finite(0));
        assert_eq!(extend_f(&f, rs.root(3, 4).unwrap()), FValue::Infinite);
    }

    #[test]
    fn dimensions() {
        for p in primes_up_to(13) {
            let n = p as usize + 2;
            let f = ParabolicFunction::fl12(p, n).unwrap();
            assert_eq!(gp_dimension(&f), 2 * n - 3);
            assert_eq!(f.picard_number(), 2);
        }
        let full = ParabolicFunction::constant(3, 5, 0).unwrap();
        assert_eq!(gp_dimension(&full), 10);
        let gr = ParabolicFunction::new(
            4,
            2,
            vec![FValue::Infinite, FValue::Finite(0), FValue::Infinite],
        )
        .unwrap();
        assert_eq!(gp_dimension(&gr), 4);
    }

    #[test]
    fn anticanonical_examples() {
        for p in primes_up_to(23) {
            let n = p as usize + 2;
            let f = ParabolicFunction::fl12(p, n).unwrap();
            let mut expect = vec![0i64; n - 1];
            expect[0] = 2 * p as i64;
            expect[1] = 2;
            assert_eq!(anticanonical(&f).unwrap().weight(), &w(&expect));

            let f = ParabolicFunction::fl12(p, n - 1).unwrap();
            let mut expect = vec![0i64; n - 2];
            expect[0] = 2 * p as i64;
            expect[1] = 1;
            assert_eq!(anticanonical(&f).unwrap().weight(), &w(&expect));
        }
        let full = ParabolicFunction::constant(5, 6, 0).unwrap();
        assert_eq!(
            anticanonical(&full).unwrap().weight(),
            &rho(full.root_system()).scale(2)
        );
        let point = ParabolicFunction::new(3, 2, vec![FValue::Infinite; 2]).unwrap();
        assert_eq!(anticanonical(&point), Err(Error::AllInfinite));
        assert!(!is_fano(&point));
    }

    #[test]
    fn ampleness() {
        let f = ParabolicFunction::fl12(5, 7).unwrap();
        assert!(is_ample(&anticanonical(&f).unwrap()));
        let f = ParabolicFunction::fl12(5, 5).unwrap();
        assert!(!is_ample(&anticanonical(&f).unwrap()));
        let f = ParabolicFunction::fl12(7, 4).unwrap();
        assert!(!is_ample(&anticanonical(&f).unwrap()));
        let zero = GPLineBundle::new(&f, Weight::zero(3)).unwrap();
        assert!(!is_ample(&zero));
    }

    #[test]
    fn fano_examples() {
        assert!(is_fano(&ParabolicFunction::fl12(3, 5).unwrap()));
        assert!(!is_fano(&ParabolicFunction::fl12(5, 5).unwrap()));
        assert!(is_fano(&ParabolicFunction::constant(7, 4, 0).unwrap()));
    }

    #[test]
    fn fano_iff_p_less_than_n() {
        for p in primes_up_to(50) {
            for n in 3..=55 {
                let f = ParabolicFunction::fl12(p, n).unwrap();
                assert_eq!(is_fano(&f), (p as usize) < n, "p = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn divisibility_examples() {
        for p in primes_up_to(31).into_iter().filter(|&p| p >= 3) {
            let n = p as usize + 2;
            let f = ParabolicFunction::fl12(p, n).unwrap();
            let k = anticanonical(&f).unwrap();
            let d = divisibility(&k).unwrap();
            assert_eq!(d, BigInt::from(2));
            let a = k.divide(&d).unwrap();
            let mut expect = vec![0i64; n - 1];
            expect[0] = p as i64;
            expect[1] = 1;
            assert_eq!(a.weight(), &w(&expect));
            assert_eq!(divisibility(&a.scale(6)).unwrap(), BigInt::from(6));

            let f = ParabolicFunction::fl12(p, n - 1).unwrap();
            assert_eq!(
                divisibility(&anticanonical(&f).unwrap()).unwrap(),
                BigInt::one()
            );
        }
        let f = ParabolicFunction::fl12(3, 5).unwrap();
        let zero = GPLineBundle::new(&f, Weight::zero(4)).unwrap();
        assert_eq!(divisibility(&zero), Err(Error::ZeroBundle));
    }

    #[test]
    fn lattice_membership() {
        let f = ParabolicFunction::fl12(3, 5).unwrap();
        assert!(GPLineBundle::new(&f, w(&[3, 1, 0, 0])).is_ok());
        assert!(matches!(
            GPLineBundle::new(&f, w(&[2, 1, 0, 0])),
            Err(Error::NotInPicard { .. })
        ));
        assert!(matches!(
            GPLineBundle::new(&f, w(&[3, 1, 1, 0])),
            Err(Error::NotInPicard { .. })
        ));
    }

    #[test]
    fn fiber_degrees() {
        let a1 = PositiveRoot::simple(1);
        let f = ParabolicFunction::fl12(3, 5).unwrap();
        let a = GPLineBundle::new(&f, w(&[3, 1, 0, 0])).unwrap();
        assert_eq!(fiber_degree(&a, a1).unwrap(), BigInt::one());
        let pulled = GPLineBundle::new(&f, w(&[0, 5, 0, 0])).unwrap();
        assert_eq!(fiber_degree(&pulled, a1).unwrap(), BigInt::zero());
        assert!(matches!(
            fiber_degree(&a, PositiveRoot::simple(2)),
            Err(Error::FiberDegree { .. })
        ));

        let f = ParabolicFunction::fl12(2, 4).unwrap();
        let mu = GPLineBundle::new(&f, w(&[2, -1, 0])).unwrap();
        assert_eq!(fiber_degree(&mu, a1).unwrap(), BigInt::one());
    }

    #[test]
    fn proportional_bundles() {
        use num_rational::BigRational;
        let k = w(&[6, 2, 0, 0]);
        assert_eq!(
            proportionality(&w(&[3, 1, 0, 0]), &k),
            Some(BigRational::new(1.into(), 2.into()))
        );
        assert_eq!(proportionality(&w(&[3, 2, 0, 0]), &k), None);
        assert_eq!(proportionality(&w(&[0, 1, 0, 0]), &k), None);
    }

    fn finite_f() -> impl Strategy<Value = (usize, u64, Vec<FValue>)> {
        (3usize..=6, prop::sample::select(vec![2u64, 3, 5, 7])).prop_flat_map(|(n, p)| {
            let v = prop::collection::vec(
                prop_oneof![3 => (0u32..3).prop_map(FValue::Finite), 1 => Just(FValue::Infinite)],
                n - 1,
            );
            (Just(n), Just(p), v)
        })
    }

    proptest! {
        #[test]
        fn anticanonical_in_lattice((n, p, values) in finite_f()) {
            let f = ParabolicFunction::new(n, p, values).unwrap();
            match anticanonical(&f) {
                Ok(k) => prop_assert!(f.lattice_violation(k.weight()).is_none()),
                Err(e) => prop_assert_eq!(e, Error::AllInfinite),
            }
        }

        #[test]
        fn constant_f(n in 3usize..=7, p in prop::sample::select(vec![2u64, 3, 5]), r in 0u32..3) {
            let f = ParabolicFunction::constant(p, n, r).unwrap();
            let k = anticanonical(&f).unwrap();
            let step = BigInt::from(p).pow(r);
            prop_assert_eq!(k.weight(), &rho(f.root_system()).scale(step * 2));
            prop_assert_eq!(gp_dimension(&f), n * (n - 1) / 2);
        }

        #[test]
        fn divisibility_of_multiples((n, p, values) in finite_f(), d in 1i64..8) {
            let f = ParabolicFunction::new(n, p, values).unwrap();
            if let Ok(k) = anticanonical(&f) {
                if !k.weight().is_zero() {
                    let got = divisibility(&k.scale(d)).unwrap();
                    prop_assert!((got % BigInt::from(d)).is_zero());
                }
            }
        }
    }
}
