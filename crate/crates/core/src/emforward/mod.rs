//! Forward modelling of the inline electric field: the layered-earth solver,
//! its Hankel-transform machinery and the closed-form whole-space oracle.

mod coefficients;
mod hankel;
mod layered;
mod wholespace;

pub use hankel::{
    ensure_filters_valid, filter_self_test_error, hankel_transform, BesselOrder, HankelFilter,
    SELF_TEST_TOLERANCE,
};
pub use layered::{layered_ex, LayeredSolver};
pub use wholespace::wholespace_ex;
