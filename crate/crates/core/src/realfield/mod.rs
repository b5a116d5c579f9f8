//! Exact ℚ(√5) arithmetic and rigorous real enclosures.
//!
//! This module is the single source of truth for every real number in the
//! pipeline: algebraic values are exact [`QuadFieldElement`]s, analytic
//! values are [`RigorousReal`] enclosures with outward rounding.

pub mod ball;
pub mod consts;
pub mod dyadic;
pub mod quad;

pub use ball::RigorousReal;
pub use consts::{PREC_MAX, PREC_START};
pub use dyadic::{Dyadic, Round};
pub use quad::{
    alpha_pow_neg, detect_dependence, upsilon1_exact, upsilon2_exact, upsilon3_exact,
    upsilon_exact, QuadFieldElement, DEFAULT_DEPENDENCE_RADIUS,
};
