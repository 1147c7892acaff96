//! Polynomials and rational functions over `F_p`, `Z/p`-actions on affine
//! charts, equivariant blow-ups at a point, fixed-point schemes and the
//! Artin and Swan numbers of an action along a divisor.

mod chart;
mod poly;
mod ramification;
mod rational;

pub use chart::{
    blowup_chart, cartier_test, fixed_scheme_generators, is_sigma_stable, translate_chart,
    CartierVerdict, ChartAction, FailureLocus,
};
pub use poly::{Monomial, PolyFp};
pub use ramification::{
    artin_number, classify_from_bounds, different_coefficient, divisor_valuation, swan_bound,
    swan_classify, RamificationType, Valuation,
};
pub use rational::RatFp;
