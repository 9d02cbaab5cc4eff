//! The two-point bound for disc maps, the growth bound for self-maps of the
//! ball, and their classical special cases, as slack computations.

mod report;
mod theorem1;
mod theorem2;

pub use report::{CheckOptions, Context, SlackReport, DEFAULT_TOL_CHECK, PRECONDITION_TOL};
pub use theorem1::{
    check_theorem1, check_theorem1_with, globevnik_check, globevnik_check_with, theorem1_lhs, theorem1_terms,
    Theorem1Terms,
};
pub use theorem2::{
    check_theorem2, check_theorem2_with, pullback_to_origin, ransford_white_check, ransford_white_check_with,
    theorem2_bound,
};
