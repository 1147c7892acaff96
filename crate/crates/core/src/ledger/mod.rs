//! Formal divisor bookkeeping for blow-ups and `Z/p` quotients: canonical
//! classes, discrepancies, singularity classes and dual graphs.
//!
//! Divisors are names. A blow-up records which existing divisors contain
//! its center, which is all the pullback formula needs.

mod book;
mod criteria;
mod descent;
mod divisor;
mod graph;

pub use book::{blowup_canonical, BlowupCenter, Ledger, Rename};
pub use criteria::{fogarty_cm_test, yasuda_classify, CmVerdict, YasudaVerdict};
pub use descent::{
    classify_singularity, different_divisor, pullback_quotient, quotient_descend, Classification,
    RamKind, RamificationDatum, SingularityClass,
};
pub use divisor::DivisorExpression;
pub use graph::DualGraph;
