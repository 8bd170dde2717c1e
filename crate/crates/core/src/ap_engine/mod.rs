//! Exact search for arithmetic progressions inside recurrence sequences,
//! and the parametric families that explain most of them.

mod families;
mod power;
mod search;

pub use families::{
    detect_shift_families, detect_symmetric_families, split_isolated, verify_exceptional_family,
    verify_linear_family, verify_shift_family, verify_symmetric_family, APFamily,
    ExceptionalFamily, FamilyFailure, LinearFamily, ShiftFamily, SymmetricFamily,
    SymmetricOrdering, VerificationReport,
};
pub use power::power_equation_search;
pub use search::{
    brute_force_aps, brute_force_aps4, max_window, search, APSolution, APSolution4, MeanPosition,
    Solutions, DEFAULT_MAX_WINDOW, MAX_WINDOW_ENV,
};
