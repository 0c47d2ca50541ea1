//! JSON run configuration.
//!
//! ```json
//! {
//!   "layers": [
//!     { "thickness_m": null,   "conductivity": 1e-11 },
//!     { "thickness_m": 2000.0, "conductivity": 4.0 },
//!     { "thickness_m": null,   "conductivity": 1.5 }
//!   ],
//!   "survey": {
//!     "frequency_hz": 0.125, "source_height_m": 30.0, "dipole_moment": 1.0,
//!     "azimuth_deg": 0.0,
//!     "offsets": { "start_m": 500.0, "stop_m": 25000.0, "step_m": 100.0 }
//!   },
//!   "run": { "weights": [1e5, 1e6, 1e7], "seed": 0, "max_iter": 200, "tol": 1e-6 }
//! }
//! ```
//!
//! A `null` thickness is a half-space. Optional fields and their defaults:
//! `survey.receiver_depth_m` (seafloor), `run` as a whole, `run.weights`
//! (1e5, 1e6, 1e7), `run.seed` (0), `run.max_iter` (200), `run.tol` (1e-6),
//! `run.window` (15 000 to 25 000 m), `run.depths_m` (none),
//! `run.noise_level` (0), `run.exact_air_wavenumber` (false).

use serde::{Deserialize, Serialize};

use super::{validate_model, Layer, LayeredModel, Survey};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OffsetGrid {
    pub start_m: f64,
    pub stop_m: f64,
    pub step_m: f64,
}

impl OffsetGrid {
    pub fn offsets(&self) -> Result<Vec<f64>> {
        let OffsetGrid {
            start_m,
            stop_m,
            step_m,
        } = *self;
        if !(start_m.is_finite() && stop_m.is_finite() && step_m.is_finite()) {
            return Err(Error::config("survey.offsets", "non-finite value"));
        }
        if step_m <= 0.0 {
            return Err(Error::config(
                "survey.offsets.step_m",
                "step must be positive",
            ));
        }
        if stop_m < start_m {
            return Err(Error::config(
                "survey.offsets.stop_m",
                "stop is below start",
            ));
        }
        let count = ((stop_m - start_m) / step_m + 1e-9).floor() as usize + 1;
        Ok((0..count).map(|i| start_m + i as f64 * step_m).collect())
    }
}

/// Closed offset interval used for far-offset statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OffsetWindow {
    pub start_m: f64,
    pub stop_m: f64,
}

impl OffsetWindow {
    pub fn new(start_m: f64, stop_m: f64) -> Self {
        OffsetWindow { start_m, stop_m }
    }

    pub fn contains(&self, offset_m: f64) -> bool {
        offset_m >= self.start_m && offset_m <= self.stop_m
    }
}

impl Default for OffsetWindow {
    fn default() -> Self {
        OffsetWindow::new(15_000.0, 25_000.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunOptions {
    pub weights: Vec<f64>,
    pub seed: u64,
    pub max_iter: usize,
    pub tol: f64,
    pub window: OffsetWindow,
    /// Water depths for depth sweeps; empty means the model's own depth only.
    pub depths_m: Vec<f64>,
    /// Relative level of the optional Gaussian conditioning noise.
    pub noise_level: f64,
    /// Use ω·sqrt(μ0 ε0) for the air wavenumber instead of 0.
    pub exact_air_wavenumber: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            weights: vec![1e5, 1e6, 1e7],
            seed: 0,
            max_iter: 200,
            tol: 1e-6,
            window: OffsetWindow::default(),
            depths_m: Vec::new(),
            noise_level: 0.0,
            exact_air_wavenumber: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub model: LayeredModel,
    pub survey: Survey,
    pub offsets: OffsetGrid,
    pub run: RunOptions,
}

impl Config {
    /// Copy with the seawater column resized; the source keeps its height
    /// above the seafloor and receivers stay on the seafloor unless a depth
    /// was set explicitly.
    pub fn with_water_depth(&self, water_depth_m: f64) -> Config {
        let mut layers = self.model.layers().to_vec();
        if let Some(water) = layers.get_mut(1) {
            water.thickness_m = water_depth_m;
        }
        Config {
            model: LayeredModel::new(layers),
            ..self.clone()
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLayer {
    thickness_m: Option<f64>,
    conductivity: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurvey {
    frequency_hz: f64,
    source_height_m: f64,
    dipole_moment: f64,
    azimuth_deg: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    receiver_depth_m: Option<f64>,
    offsets: OffsetGrid,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    layers: Vec<RawLayer>,
    survey: RawSurvey,
    #[serde(default)]
    run: RunOptions,
}

fn missing_layer_message(layers: &[RawLayer]) -> Option<&'static str> {
    match layers.len() {
        0 => Some("missing air layer"),
        1 => Some("missing seawater layer"),
        2 if layers[1].thickness_m.is_none() => Some("missing seawater layer"),
        2 => Some("missing sediment layer"),
        _ => None,
    }
}

/// Parses and validates a JSON configuration document.
pub fn load_config(text: &str) -> Result<Config> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| {
        Error::config(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;

    if let Some(msg) = missing_layer_message(&raw.layers) {
        return Err(Error::config(
            "layers",
            format!(
                "{msg}: expected air, seawater and sediments, found {}",
                raw.layers.len()
            ),
        ));
    }
    let model = LayeredModel::new(
        raw.layers
            .iter()
            .map(|l| Layer::new(l.thickness_m.unwrap_or(f64::INFINITY), l.conductivity))
            .collect(),
    );
    let offsets = raw.survey.offsets;
    let survey = Survey {
        frequency_hz: raw.survey.frequency_hz,
        source_height_above_seafloor_m: raw.survey.source_height_m,
        receiver_depth_m: raw.survey.receiver_depth_m,
        dipole_moment_am: raw.survey.dipole_moment,
        azimuth_rad: raw.survey.azimuth_deg.to_radians(),
        offsets_m: offsets.offsets()?,
    };
    let run = raw.run;
    if run.weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(Error::config("run.weights", "weights must be positive"));
    }
    if !(run.tol > 0.0 && run.tol < 1.0) {
        return Err(Error::config("run.tol", "tolerance must lie in (0, 1)"));
    }
    if run.max_iter == 0 {
        return Err(Error::config("run.max_iter", "must be at least 1"));
    }
    if !(run.window.start_m <= run.window.stop_m) {
        return Err(Error::config("run.window", "start must not exceed stop"));
    }
    if !(run.noise_level >= 0.0 && run.noise_level.is_finite()) {
        return Err(Error::config(
            "run.noise_level",
            "must be a non-negative number",
        ));
    }

    validate_model(&model, &survey).into_result()?;
    Ok(Config {
        model,
        survey,
        offsets,
        run,
    })
}

/// Inverse of [`load_config`].
pub fn serialize_config(config: &Config) -> String {
    let raw = RawConfig {
        layers: config
            .model
            .layers()
            .iter()
            .map(|l| RawLayer {
                thickness_m: (!l.is_half_space()).then_some(l.thickness_m),
                conductivity: l.conductivity_s_per_m,
            })
            .collect(),
        survey: RawSurvey {
            frequency_hz: config.survey.frequency_hz,
            source_height_m: config.survey.source_height_above_seafloor_m,
            dipole_moment: config.survey.dipole_moment_am,
            azimuth_deg: config.survey.azimuth_rad.to_degrees(),
            receiver_depth_m: config.survey.receiver_depth_m,
            offsets: config.offsets,
        },
        run: config.run.clone(),
    };
    let mut text = serde_json::to_string_pretty(&raw).expect("config serializes infallibly");
    text.push('\n');
    text
}
