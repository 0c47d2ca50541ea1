//! Layered marine earth models, survey geometry and the physical constants
//! shared by the forward solvers.
//!
//! Depths are measured positive downward from the sea surface. Layer 0 is the
//! air half-space above the surface, layer 1 is the seawater column, and the
//! last layer is the basement half-space.

mod config;

pub use config::{load_config, serialize_config, Config, OffsetGrid, OffsetWindow, RunOptions};

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Magnetic permeability of vacuum, H/m.
pub const MU0: f64 = 4.0e-7 * PI;
/// Permittivity of vacuum, F/m.
pub const EPS0: f64 = 8.854e-12;
/// Conductivity used for the air half-space. Strictly positive so that the
/// wavenumber formulas stay finite.
pub const AIR_CONDUCTIVITY: f64 = 1.0e-11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub mu0: f64,
    pub eps0: f64,
}

impl PhysicalConstants {
    pub const VACUUM: PhysicalConstants = PhysicalConstants {
        mu0: MU0,
        eps0: EPS0,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    /// `f64::INFINITY` marks a half-space.
    pub thickness_m: f64,
    pub conductivity_s_per_m: f64,
}

impl Layer {
    pub fn new(thickness_m: f64, conductivity_s_per_m: f64) -> Self {
        Layer {
            thickness_m,
            conductivity_s_per_m,
        }
    }

    pub fn half_space(conductivity_s_per_m: f64) -> Self {
        Layer::new(f64::INFINITY, conductivity_s_per_m)
    }

    pub fn is_half_space(&self) -> bool {
        self.thickness_m == f64::INFINITY
    }
}

/// Horizontally layered model, ordered from the air half-space down to the
/// basement half-space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayeredModel {
    layers: Vec<Layer>,
}

impl LayeredModel {
    pub fn new(layers: Vec<Layer>) -> Self {
        LayeredModel { layers }
    }

    /// Air, seawater of the given depth, 500 m of sediments, a 100 m resistive
    /// reservoir and a sediment basement.
    pub fn with_reservoir(water_depth_m: f64) -> Self {
        LayeredModel::new(vec![
            Layer::half_space(AIR_CONDUCTIVITY),
            Layer::new(water_depth_m, 4.0),
            Layer::new(500.0, 1.5),
            Layer::new(100.0, 0.001),
            Layer::half_space(1.5),
        ])
    }

    /// Air, seawater of the given depth and a sediment half-space.
    pub fn background(water_depth_m: f64) -> Self {
        LayeredModel::new(vec![
            Layer::half_space(AIR_CONDUCTIVITY),
            Layer::new(water_depth_m, 4.0),
            Layer::half_space(1.5),
        ])
    }

    /// Same geometry, every layer set to `conductivity`.
    pub fn uniform_like(&self, conductivity: f64) -> Self {
        LayeredModel::new(
            self.layers
                .iter()
                .map(|l| Layer::new(l.thickness_m, conductivity))
                .collect(),
        )
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Depths of the interfaces below the air layer, starting with the sea
    /// surface at 0.
    pub fn interface_depths(&self) -> Vec<f64> {
        let mut depths = Vec::with_capacity(self.layers.len().saturating_sub(1));
        let mut z = 0.0;
        depths.push(z);
        for layer in self
            .layers
            .iter()
            .skip(1)
            .take(self.layers.len().saturating_sub(2))
        {
            z += layer.thickness_m;
            depths.push(z);
        }
        depths
    }

    pub fn seafloor_depth(&self) -> f64 {
        self.layers.get(1).map_or(f64::NAN, |l| l.thickness_m)
    }

    pub fn seawater_conductivity(&self) -> f64 {
        self.layers
            .get(1)
            .map_or(f64::NAN, |l| l.conductivity_s_per_m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Survey {
    pub frequency_hz: f64,
    pub source_height_above_seafloor_m: f64,
    /// `None` puts the receivers on the seafloor.
    pub receiver_depth_m: Option<f64>,
    pub dipole_moment_am: f64,
    pub azimuth_rad: f64,
    pub offsets_m: Vec<f64>,
}

impl Survey {
    pub fn source_depth(&self, model: &LayeredModel) -> f64 {
        model.seafloor_depth() - self.source_height_above_seafloor_m
    }

    pub fn receiver_depth(&self, model: &LayeredModel) -> f64 {
        self.receiver_depth_m
            .unwrap_or_else(|| model.seafloor_depth())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationCode {
    TooFewLayers,
    NonpositiveConductivity,
    NonpositiveThickness,
    InteriorHalfSpace,
    BoundedOuterLayer,
    NonpositiveFrequency,
    NonpositiveSourceHeight,
    NonpositiveDipoleMoment,
    NonfiniteAzimuth,
    SourceOutsideSeawater,
    ReceiverOutsideSeawater,
    EmptyOffsets,
    NonpositiveOffset,
    OffsetsNotIncreasing,
}

impl ViolationCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationCode::TooFewLayers => "too few layers",
            ViolationCode::NonpositiveConductivity => "nonpositive conductivity",
            ViolationCode::NonpositiveThickness => "nonpositive thickness",
            ViolationCode::InteriorHalfSpace => "interior half-space",
            ViolationCode::BoundedOuterLayer => "bounded outer layer",
            ViolationCode::NonpositiveFrequency => "nonpositive frequency",
            ViolationCode::NonpositiveSourceHeight => "nonpositive source height",
            ViolationCode::NonpositiveDipoleMoment => "nonpositive dipole moment",
            ViolationCode::NonfiniteAzimuth => "nonfinite azimuth",
            ViolationCode::SourceOutsideSeawater => "source outside seawater",
            ViolationCode::ReceiverOutsideSeawater => "receiver outside seawater",
            ViolationCode::EmptyOffsets => "empty offsets",
            ViolationCode::NonpositiveOffset => "nonpositive offset",
            ViolationCode::OffsetsNotIncreasing => "offsets not increasing",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    fn push(&mut self, code: ViolationCode, detail: impl Into<String>) {
        self.violations.push(Violation {
            code,
            detail: detail.into(),
        });
    }

    /// `Ok(())` for an empty report, otherwise the report as an error.
    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Validation(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} ({})", v.code.as_str(), v.detail)?;
        }
        Ok(())
    }
}

fn positive(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

/// Checks every model and survey invariant. Violations are returned as data.
pub fn validate_model(model: &LayeredModel, survey: &Survey) -> ValidationReport {
    use ViolationCode::*;
    let mut report = ValidationReport::default();
    let layers = model.layers();
    let n = layers.len();

    if n < 3 {
        report.push(
            TooFewLayers,
            format!("{n} layers, need air, seawater and sediments"),
        );
    }
    for (i, layer) in layers.iter().enumerate() {
        if !positive(layer.conductivity_s_per_m) {
            report.push(
                NonpositiveConductivity,
                format!("layer {i}: {}", layer.conductivity_s_per_m),
            );
        }
        let outer = i == 0 || i + 1 == n;
        if layer.is_half_space() {
            if !outer {
                report.push(InteriorHalfSpace, format!("layer {i}"));
            }
        } else {
            if outer && n >= 2 {
                report.push(BoundedOuterLayer, format!("layer {i} must be a half-space"));
            }
            if !positive(layer.thickness_m) {
                report.push(
                    NonpositiveThickness,
                    format!("layer {i}: {}", layer.thickness_m),
                );
            }
        }
    }

    if !positive(survey.frequency_hz) {
        report.push(NonpositiveFrequency, format!("{}", survey.frequency_hz));
    }
    if !positive(survey.dipole_moment_am) {
        report.push(
            NonpositiveDipoleMoment,
            format!("{}", survey.dipole_moment_am),
        );
    }
    if !survey.azimuth_rad.is_finite() {
        report.push(NonfiniteAzimuth, format!("{}", survey.azimuth_rad));
    }
    if !positive(survey.source_height_above_seafloor_m) {
        report.push(
            NonpositiveSourceHeight,
            format!("{}", survey.source_height_above_seafloor_m),
        );
    }

    if n >= 2 {
        let seafloor = model.seafloor_depth();
        let zs = survey.source_depth(model);
        if !(zs > 0.0 && zs < seafloor) {
            report.push(
                SourceOutsideSeawater,
                format!("source depth {zs} m, seawater spans 0..{seafloor} m"),
            );
        }
        let zr = survey.receiver_depth(model);
        if !(zr > 0.0 && zr <= seafloor) {
            report.push(
                ReceiverOutsideSeawater,
                format!("receiver depth {zr} m, seawater spans 0..{seafloor} m"),
            );
        }
    }

    if survey.offsets_m.is_empty() {
        report.push(EmptyOffsets, "no offsets");
    }
    if let Some(bad) = survey.offsets_m.iter().find(|r| !positive(**r)) {
        report.push(NonpositiveOffset, format!("{bad}"));
    }
    if let Some(w) = survey.offsets_m.windows(2).find(|w| !(w[1] > w[0])) {
        report.push(OffsetsNotIncreasing, format!("{} then {}", w[0], w[1]));
    }
    report
}

/// Skin depth sqrt(2 / (ω μ0 σ)) in metres.
pub fn skin_depth(conductivity_s_per_m: f64, frequency_hz: f64) -> Result<f64> {
    if !positive(conductivity_s_per_m) {
        return Err(Error::domain(format!(
            "conductivity must be positive, got {conductivity_s_per_m}"
        )));
    }
    if !positive(frequency_hz) {
        return Err(Error::domain(format!(
            "frequency must be positive, got {frequency_hz}"
        )));
    }
    let omega = 2.0 * PI * frequency_hz;
    Ok((2.0 / (omega * MU0 * conductivity_s_per_m)).sqrt())
}

/// Low-frequency wavenumber k = (1 + i) / δ, the root of k² = iωμ0σ with
/// positive imaginary part (fields vary as e^{-iωt}).
pub fn complex_wavenumber(conductivity_s_per_m: f64, frequency_hz: f64) -> Result<Complex64> {
    let delta = skin_depth(conductivity_s_per_m, frequency_hz)?;
    Ok(Complex64::new(1.0 / delta, 1.0 / delta))
}

/// Short stable hash of any serializable description, used to tag outputs
/// with the model and survey they were computed from.
pub fn fingerprint<T: Serialize + ?Sized>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("model types serialize infallibly");
    let digest = Sha256::digest(&bytes);
    hex::encode(&digest[..8])
}

pub fn survey_fingerprint(model: &LayeredModel, survey: &Survey) -> String {
    fingerprint(&(model, survey))
}
