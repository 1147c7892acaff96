use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CmVerdict {
    NotCm,
    /// The fixed-locus test says nothing.
    Inconclusive,
}

impl CmVerdict {
    pub fn is_not_cm(&self) -> bool {
        *self == CmVerdict::NotCm
    }
}

/// A nonempty fixed locus of codimension at least 3 forces the quotient by
/// `Z/p` to fail Cohen-Macaulayness.
pub fn fogarty_cm_test(fixed_locus_codim: u32) -> CmVerdict {
    if fixed_locus_codim >= 3 {
        CmVerdict::NotCm
    } else {
        CmVerdict::Inconclusive
    }
}

/// `V / (Z/p)` for an indecomposable `n`-dimensional representation in
/// characteristic `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YasudaVerdict {
    pub p: u64,
    pub n: u32,
    pub age: u64,
    pub klt: bool,
    pub terminal: bool,
    pub cm: CmVerdict,
    /// `p >= n >= 4`, where all three verdicts are proved together.
    pub in_window: bool,
    /// Only "terminal if" is proved; "only if" is not known.
    pub terminal_converse_known: bool,
}

pub fn yasuda_classify(p: u64, n: u32) -> Result<YasudaVerdict> {
    if n < 2 {
        return Err(Error::Precondition(format!("n = {n} < 2")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let age = n as u64 * (n as u64 - 1) / 2;
    Ok(YasudaVerdict {
        p,
        n,
        age,
        klt: age >= p,
        terminal: age > p,
        cm: fogarty_cm_test(n - 1),
        in_window: p >= n as u64 && n >= 4,
        terminal_converse_known: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fogarty() {
        assert!(fogarty_cm_test(3).is_not_cm());
        assert!(fogarty_cm_test(4).is_not_cm());
        assert_eq!(fogarty_cm_test(2), CmVerdict::Inconclusive);
        assert_eq!(fogarty_cm_test(0), CmVerdict::Inconclusive);
    }

    #[test]
    fn yasuda_examples() {
        let v = yasuda_classify(7, 5).unwrap();
        assert!(v.terminal && v.klt && v.cm.is_not_cm() && v.in_window);
        let v = yasuda_classify(7, 4).unwrap();
        assert!(!v.terminal && !v.klt);
        assert!(v.in_window);
        // age 3 = p: the boundary
        let v = yasuda_classify(3, 3).unwrap();
        assert!(v.klt && !v.terminal && !v.in_window);
        assert_eq!(v.cm, CmVerdict::Inconclusive);
        assert!(yasuda_classify(7, 1).is_err());
        assert!(yasuda_classify(9, 5).is_err());
    }
}
