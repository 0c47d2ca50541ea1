//! Far-offset asymptotic airwave for a horizontal electric dipole below the
//! sea surface:
//!
//! ```text
//! E_air(r) = p cos θ · exp[ik(z_r + z_s)] · exp[ik0 r] / (2π σ_w r³)
//! ```
//!
//! with `k` the seawater wavenumber and `k0` the air wavenumber, which is
//! negligible at CSEM frequencies and defaults to zero.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{complex_wavenumber, fingerprint, LayeredModel, Survey, EPS0, MU0};
use crate::profile::{FieldProfile, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AirwaveParams {
    pub dipole_moment_am: f64,
    pub azimuth_rad: f64,
    pub source_depth_m: f64,
    pub receiver_depth_m: f64,
    pub seawater_conductivity_s_per_m: f64,
    pub frequency_hz: f64,
    pub air_wavenumber_per_m: f64,
}

impl AirwaveParams {
    pub fn from_survey(model: &LayeredModel, survey: &Survey) -> Self {
        AirwaveParams {
            dipole_moment_am: survey.dipole_moment_am,
            azimuth_rad: survey.azimuth_rad,
            source_depth_m: survey.source_depth(model),
            receiver_depth_m: survey.receiver_depth(model),
            seawater_conductivity_s_per_m: model.seawater_conductivity(),
            frequency_hz: survey.frequency_hz,
            air_wavenumber_per_m: 0.0,
        }
    }

    /// Replaces the zero air wavenumber with ω·sqrt(μ0 ε0).
    pub fn with_exact_air_wavenumber(mut self) -> Self {
        self.air_wavenumber_per_m = exact_air_wavenumber(self.frequency_hz);
        self
    }

    fn check(&self) -> Result<()> {
        if !(self.source_depth_m >= 0.0 && self.receiver_depth_m >= 0.0) {
            return Err(Error::domain(format!(
                "source and receiver depths must be non-negative, got {} and {}",
                self.source_depth_m, self.receiver_depth_m
            )));
        }
        Ok(())
    }
}

pub fn exact_air_wavenumber(frequency_hz: f64) -> f64 {
    2.0 * PI * frequency_hz * (MU0 * EPS0).sqrt()
}

/// cos θ with the rounding residue at odd multiples of π/2 removed, so that
/// broadside geometry gives an exactly zero airwave.
fn azimuth_cos(theta: f64) -> f64 {
    let c = theta.cos();
    if c.abs() <= 4.0 * f64::EPSILON * theta.abs().max(1.0) {
        0.0
    } else {
        c
    }
}

pub fn airwave_field(params: &AirwaveParams, offset_m: f64) -> Result<Complex64> {
    if !(offset_m > 0.0 && offset_m.is_finite()) {
        return Err(Error::domain(format!(
            "offset must be positive, got {offset_m}"
        )));
    }
    params.check()?;
    let k = complex_wavenumber(params.seawater_conductivity_s_per_m, params.frequency_hz)?;
    let path = params.receiver_depth_m + params.source_depth_m;
    let depth_term = (Complex64::i() * k * path).exp();
    let air_term = Complex64::from_polar(1.0, params.air_wavenumber_per_m * offset_m);
    let amplitude = params.dipole_moment_am * azimuth_cos(params.azimuth_rad)
        / (2.0 * PI * params.seawater_conductivity_s_per_m * offset_m.powi(3));
    Ok(depth_term * air_term * amplitude)
}

pub fn airwave_profile(params: &AirwaveParams, offsets_m: &[f64]) -> Result<FieldProfile> {
    let ex = offsets_m
        .iter()
        .map(|&r| airwave_field(params, r))
        .collect::<Result<Vec<_>>>()?;
    FieldProfile::new(
        offsets_m.to_vec(),
        ex,
        Provenance::AnalyticAirwave,
        fingerprint(&(params, offsets_m)),
    )
}
