use crate::error::{Error, Result};

use super::poly::PolyFp;

/// `num / den`, kept unreduced. Equality is by cross-multiplication.
#[derive(Debug, Clone)]
pub struct RatFp {
    num: PolyFp,
    den: PolyFp,
}

impl PartialEq for RatFp {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFp {}

impl RatFp {
    pub fn new(num: PolyFp, den: PolyFp) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::PolyMismatch("zero denominator".into()));
        }
        if num.p() != den.p() || num.nvars() != den.nvars() {
            return Err(Error::PolyMismatch(
                "numerator and denominator rings differ".into(),
            ));
        }
        Ok(RatFp { num, den })
    }

    pub fn from_poly(f: PolyFp) -> Self {
        let one = PolyFp::one(f.p(), f.nvars());
        RatFp { num: f, den: one }
    }

    pub fn parse(p: u64, names: &[&str], num: &str, den: &str) -> Result<Self> {
        RatFp::new(PolyFp::parse(p, names, num)?, PolyFp::parse(p, names, den)?)
    }

    pub fn num(&self) -> &PolyFp {
        &self.num
    }

    pub fn den(&self) -> &PolyFp {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFp) -> RatFp {
        RatFp {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    pub fn sub(&self, o: &RatFp) -> RatFp {
        RatFp {
            num: &(&self.num * &o.den) - &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    pub fn mul(&self, o: &RatFp) -> RatFp {
        RatFp {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }

    pub fn div(&self, o: &RatFp) -> Result<RatFp> {
        if o.is_zero() {
            return Err(Error::PolyMismatch("division by zero".into()));
        }
        Ok(RatFp {
            num: &self.num * &o.den,
            den: &self.den * &o.num,
        })
    }

    /// Substitute rational functions for the variables.
    pub fn compose(&self, subs: &[RatFp]) -> RatFp {
        let (n1, d1) = compose_poly(&self.num, subs);
        let (n2, d2) = compose_poly(&self.den, subs);
        RatFp {
            num: &n1 * &d2,
            den: &d1 * &n2,
        }
    }

    /// Cancel the common monomial factor, then common factors among `units`,
    /// and make the denominator monic.
    pub fn simplify(&self, units: &[PolyFp]) -> RatFp {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        if num.is_zero() {
            return RatFp::from_poly(num);
        }
        let cn = num.monomial_content();
        let cd = den.monomial_content();
        let common =
            super::poly::Monomial(cn.0.iter().zip(&cd.0).map(|(a, b)| *a.min(b)).collect());
        num = num.div_monomial(&common);
        den = den.div_monomial(&common);
        for u in units {
            if u.constant_value().is_some() {
                continue;
            }
            while let (Some(a), Some(b)) = (num.div_exact(u), den.div_exact(u)) {
                num = a;
                den = b;
            }
        }
        if let Some((_, c)) = den.leading() {
            let inv = super::poly::inv_mod(c, den.p());
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RatFp { num, den }
    }

    pub fn display(&self, names: &[impl AsRef<str>]) -> String {
        let n = self.num.display(names);
        if self.den.constant_value() == Some(1) {
            return n;
        }
        let wrap = |s: String, terms: usize| if terms > 1 { format!("({s})") } else { s };
        format!(
            "{}/{}",
            wrap(n, self.num.num_terms()),
            wrap(self.den.display(names), self.den.num_terms())
        )
    }
}

/// `f(subs)` as `(numerator, common denominator)`.
fn compose_poly(f: &PolyFp, subs: &[RatFp]) -> (PolyFp, PolyFp) {
    let (p, n) = (f.p(), subs[0].num.nvars());
    let maxe: Vec<u32> = (0..f.nvars()).map(|i| f.max_exponent(i)).collect();
    let mut den = PolyFp::one(p, n);
    for (i, s) in subs.iter().enumerate() {
        den = &den * &s.den.pow(maxe[i]);
    }
    let mut num = PolyFp::zero(p, n);
    for (m, c) in f.terms() {
        let mut t = PolyFp::constant(p, n, c as i64);
        for (i, &e) in m.0.iter().enumerate() {
            if maxe[i] == 0 {
                continue;
            }
            t = &t * &subs[i].num.pow(e);
            t = &t * &subs[i].den.pow(maxe[i] - e);
        }
        num = &num + &t;
    }
    (num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAMES: [&str; 2] = ["y", "w"];

    fn r(num: &str, den: &str) -> RatFp {
        RatFp::parse(2, &NAMES, num, den).unwrap()
    }

    #[test]
    fn cross_multiplied_equality() {
        assert_eq!(r("y^2 + y", "y*w + w"), r("y", "w"));
        assert_ne!(r("y", "y + 1"), r("y", "1"));
    }

    #[test]
    fn simplify_cancels_monomials_and_units() {
        let units = [PolyFp::parse(2, &NAMES, "y + 1").unwrap()];
        let s = r("y^2*w + y*w", "y^2 + y").simplify(&units);
        assert_eq!(s.display(&NAMES), "w");
        let t = r("y*w*y + y*w", "y*y*w + y").simplify(&units);
        assert_eq!(t.display(&NAMES), "(y*w + w)/(y*w + 1)");
    }

    #[test]
    fn compose_involution() {
        // y -> y / (y + 1) squared is the identity in char 2
        let s = r("y", "y + 1");
        let back = s.compose(&[s.clone(), r("w", "1")]);
        assert_eq!(back, r("y", "1"));
        let unit = PolyFp::parse(2, &NAMES, "y + 1").unwrap();
        assert_eq!(back.simplify(&[unit]).display(&NAMES), "y");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFp::parse(2, &NAMES, "y", "y + y").is_err());
    }
}
