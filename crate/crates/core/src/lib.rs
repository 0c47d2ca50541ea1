//! Forward modelling and blind separation of the airwave in shallow-water
//! marine CSEM data.
//!
//! * [`emforward`] computes the inline Ex of a horizontal electric dipole over
//!   a layered earth.
//! * [`airwave`] evaluates the analytic far-offset airwave.
//! * [`ica`] holds whitening and deflationary FastICA.
//! * [`pipeline`] combines them: weighted observations, separation, component
//!   identification and the weight sweep.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod airwave;
pub mod emforward;
pub mod error;
pub mod ica;
pub mod model;
pub mod pipeline;
pub mod profile;

pub use airwave::{airwave_field, airwave_profile, AirwaveParams};
pub use emforward::{layered_ex, wholespace_ex, LayeredSolver};
pub use error::{Error, Result};
pub use ica::{fastica, IcaOptions, ObservationMatrix, SeparationResult};
pub use model::{
    load_config, serialize_config, validate_model, Config, Layer, LayeredModel, OffsetGrid,
    OffsetWindow, RunOptions, Survey, ValidationReport,
};
pub use pipeline::{
    assemble_observations, separate_airwave, weight_sweep, FilteredResult, SeparationOptions,
    SweepReport, WeightedObservation,
};
pub use profile::{FieldProfile, Provenance};

pub use nalgebra::DMatrix;
pub use num_complex::Complex64;
