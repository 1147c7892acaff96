//! Rule-based cohomology of line bundles on `G/B` and on `G/P` in
//! characteristic `p`.
//!
//! Three rules decide `H^*(G/B, mu)`:
//!
//! * Kempf vanishing: dominant weights have cohomology only in degree 0,
//!   of dimension given by the Weyl dimension formula;
//! * wall vanishing: if `<mu, alpha^vee> = -1` for a simple root, all
//!   cohomology vanishes;
//! * Andersen's shift: if `<nu, beta^vee> = s p^m - 1` with `0 < s < p`
//!   then `H^i(nu) = H^{i+1}(s_beta . nu)`. It is applied once, in either
//!   direction, to reach a weight the first two rules decide.
//!
//! Anything else is reported as unknown. `G/P` profiles are obtained by
//! splicing two `G/B` profiles through the long exact sequence of the rank-2
//! bundle pushed forward along the `P^1`-fibration.

mod cone;
mod profile;
mod socle;
mod theorems;

pub use cone::{cone_report, ConeReport};
pub use profile::{
    gb_profile, gp_profile, CohEntry, CohomologyProfile, FourTermSequence, Rule, RuleFiring,
};
pub use socle::{socle_h1_bound, steinberg_dim, KernelWitness, SocleBound, SteinbergDatum};
pub use theorems::{
    thm21_closed_forms, thm21_ratio, thm31_closed_forms, verify_thm_2_1, verify_thm_3_1, H1Witness,
    Thm21Report, Thm31Branch, Thm31Report,
};
