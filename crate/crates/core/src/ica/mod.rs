//! Kurtosis-based FastICA: centering, eigendecomposition whitening and
//! one-by-one (deflationary) fixed-point extraction of independent components.
//!
//! Components are identifiable only up to sign, scale and order. Compare them
//! with `|corr|` after a best permutation match, never by signed value.

mod fastica;
mod preprocess;
mod stats;

pub use fastica::{fastica, fastica_deflation, IcaOptions, Nonlinearity, SeparationResult};
pub use preprocess::{center, covariance, whiten, ObservationMatrix, WhiteningResult};
pub use stats::{amari_index, correlation, kurtosis};
