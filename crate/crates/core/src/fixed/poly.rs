use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Sparse polynomial in `nvars` variables over `F_p`; no zero coefficients
/// are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyFp {
    p: u64,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl PolyFp {
    pub fn zero(p: u64, nvars: usize) -> Self {
        PolyFp {
            p,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u64, nvars: usize, c: i64) -> Self {
        let mut out = PolyFp::zero(p, nvars);
        out.add_term(Monomial::one(nvars), c.rem_euclid(p as i64) as u64);
        out
    }

    pub fn one(p: u64, nvars: usize) -> Self {
        PolyFp::constant(p, nvars, 1)
    }

    pub fn var(p: u64, nvars: usize, i: usize) -> Self {
        PolyFp::monomial(p, Monomial::var(nvars, i), 1)
    }

    pub fn monomial(p: u64, m: Monomial, c: u64) -> Self {
        let mut out = PolyFp::zero(p, m.0.len());
        out.add_term(m, c);
        out
    }

    /// Parse `"y1^2 + y1*w2 + 1"` over the given variable names.
    pub fn parse(p: u64, names: &[&str], s: &str) -> Result<Self> {
        let n = names.len();
        let mut out = PolyFp::zero(p, n);
        let normalized = s.replace('-', "+-");
        for raw in normalized.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                continue;
            }
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, term),
            };
            let mut coeff: i64 = if neg { -1 } else { 1 };
            let mut exps = vec![0u32; n];
            for factor in body.split('*') {
                let factor = factor.trim();
                let (base, e) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b.trim(),
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Usage(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                if let Ok(c) = base.parse::<i64>() {
                    coeff = coeff * c.pow(e) % p as i64;
                } else {
                    let i = names
                        .iter()
                        .position(|&x| x == base)
                        .ok_or_else(|| Error::UnknownCoordinate(base.to_string()))?;
                    exps[i] += e;
                }
            }
            out = out + PolyFp::monomial(p, Monomial(exps), coeff.rem_euclid(p as i64) as u64);
        }
        Ok(out)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial is constant (including 0).
    pub fn constant_value(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (m, &c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then_some(c)
            }
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn leading(&self) -> Option<(&Monomial, u64)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let p = self.p;
        let slot = self.terms.entry(m.clone()).or_insert(0);
        *slot = (*slot + c) % p;
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    fn check(&self, other: &PolyFp) {
        assert!(
            self.p == other.p && self.nvars == other.nvars,
            "polynomials over F_{}[{} vars] and F_{}[{} vars]",
            self.p,
            self.nvars,
            other.p,
            other.nvars
        );
    }

    pub fn scale(&self, c: u64) -> PolyFp {
        let mut out = PolyFp::zero(self.p, self.nvars);
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), a * (c % self.p));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> PolyFp {
        let mut out = PolyFp::zero(self.p, self.nvars);
        for (k, &a) in &self.terms {
            out.add_term(k.mul(m), a);
        }
        out
    }

    pub fn pow(&self, e: u32) -> PolyFp {
        let mut acc = PolyFp::one(self.p, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Leading coefficient scaled to 1.
    pub fn monic(&self) -> PolyFp {
        match self.leading() {
            Some((_, c)) if c != 1 => self.scale(inv_mod(c, self.p)),
            _ => self.clone(),
        }
    }

    /// Minimum exponent of variable `i` over all terms (0 for the zero
    /// polynomial).
    pub fn ord(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut out = Monomial::one(self.nvars);
        for i in 0..self.nvars {
            out.0[i] = self.ord(i);
        }
        out
    }

    /// Exact division by a monomial dividing every term.
    pub fn div_monomial(&self, m: &Monomial) -> PolyFp {
        let mut out = PolyFp::zero(self.p, self.nvars);
        for (k, &a) in &self.terms {
            assert!(m.divides(k), "monomial does not divide term");
            out.add_term(k.div(m), a);
        }
        out
    }

    /// Multivariate division by a list of divisors (grlex leading terms).
    /// Returns quotients and remainder.
    pub fn reduce(&self, divisors: &[PolyFp]) -> (Vec<PolyFp>, PolyFp) {
        let mut qs = vec![PolyFp::zero(self.p, self.nvars); divisors.len()];
        let mut rem = PolyFp::zero(self.p, self.nvars);
        let mut cur = self.clone();
        while let Some((lm, lc)) = cur.leading().map(|(m, c)| (m.clone(), c)) {
            let mut divided = false;
            for (k, d) in divisors.iter().enumerate() {
                self.check(d);
                let Some((dm, dc)) = d.leading() else {
                    continue;
                };
                if dm.divides(&lm) {
                    let c = lc * inv_mod(dc, self.p) % self.p;
                    let t = lm.div(dm);
                    let step = PolyFp::monomial(self.p, t, c);
                    cur = &cur - &(&step * d);
                    qs[k] = &qs[k] + &step;
                    divided = true;
                    break;
                }
            }
            if !divided {
                rem.add_term(lm.clone(), lc);
                cur.terms.remove(&lm);
            }
        }
        (qs, rem)
    }

    /// `self / d` when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &PolyFp) -> Option<PolyFp> {
        if d.is_zero() {
            return None;
        }
        let (mut q, r) = self.reduce(std::slice::from_ref(d));
        r.is_zero().then(|| q.pop().unwrap())
    }

    pub fn divides(&self, other: &PolyFp) -> bool {
        other.div_exact(self).is_some()
    }

    /// Value at a point of `F_p^nvars`.
    pub fn eval(&self, point: &[u64]) -> u64 {
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (e, &x) in m.0.iter().zip(point) {
                t = t * pow_mod(x, *e as u64, self.p) % self.p;
            }
            acc = (acc + t) % self.p;
        }
        acc
    }

    /// Substitute the constant `c` for variable `i`.
    pub fn restrict(&self, i: usize, c: u64) -> PolyFp {
        let mut out = PolyFp::zero(self.p, self.nvars);
        for (m, &a) in &self.terms {
            let mut k = m.clone();
            let e = k.0[i];
            k.0[i] = 0;
            out.add_term(k, a * pow_mod(c, e as u64, self.p));
        }
        out
    }

    /// Replace every variable by a polynomial in a (possibly different) ring.
    pub fn compose(&self, subs: &[PolyFp]) -> PolyFp {
        assert_eq!(subs.len(), self.nvars);
        let (p, n) = (self.p, subs[0].nvars);
        let mut out = PolyFp::zero(p, n);
        let mut cache: Vec<Vec<PolyFp>> = subs
            .iter()
            .map(|s| vec![PolyFp::one(p, n), s.clone()])
            .collect();
        for (m, &c) in &self.terms {
            let mut t = PolyFp::constant(p, n, c as i64);
            for (i, &e) in m.0.iter().enumerate() {
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &subs[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Largest exponent of variable `i`.
    pub fn max_exponent(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Print with variable names, largest monomial first.
    pub fn display(&self, names: &[impl AsRef<str>]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, &c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if c != 1 || m.degree() == 0 {
                factors.push(c.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].as_ref().to_string()),
                    _ => factors.push(format!("{}^{e}", names[i].as_ref())),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

impl Add for &PolyFp {
    type Output = PolyFp;
    fn add(self, rhs: &PolyFp) -> PolyFp {
        self.check(rhs);
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Add for PolyFp {
    type Output = PolyFp;
    fn add(self, rhs: PolyFp) -> PolyFp {
        &self + &rhs
    }
}

impl Neg for &PolyFp {
    type Output = PolyFp;
    fn neg(self) -> PolyFp {
        self.scale(self.p - 1)
    }
}

impl Sub for &PolyFp {
    type Output = PolyFp;
    fn sub(self, rhs: &PolyFp) -> PolyFp {
        self + &(-rhs)
    }
}

impl Sub for PolyFp {
    type Output = PolyFp;
    fn sub(self, rhs: PolyFp) -> PolyFp {
        &self - &rhs
    }
}

impl Mul for &PolyFp {
    type Output = PolyFp;
    fn mul(self, rhs: &PolyFp) -> PolyFp {
        self.check(rhs);
        let mut out = PolyFp::zero(self.p, self.nvars);
        for (a, &x) in &self.terms {
            for (b, &y) in &rhs.terms {
                out.add_term(a.mul(b), x * y % self.p);
            }
        }
        out
    }
}

impl Mul for PolyFp {
    type Output = PolyFp;
    fn mul(self, rhs: PolyFp) -> PolyFp {
        &self * &rhs
    }
}
