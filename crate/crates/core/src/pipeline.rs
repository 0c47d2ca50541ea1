//! Airwave removal: the measured |Ex| and the analytic |airwave| form a
//! two-channel observation, FastICA unmixes it, the component that tracks the
//! analytic airwave is labelled as airwave and the other one is the
//! airwave-free signal.
//!
//! FastICA leaves each component's scale and sign free. Both are fixed by a
//! least-squares fit of the measured channel onto the recovered sources, so
//! that `signal + airwave` reproduces the measured channel, and the applied
//! weight is divided back out.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ica::{correlation, fastica_deflation, whiten, IcaOptions, ObservationMatrix};
use crate::model::OffsetWindow;
use crate::profile::{FieldProfile, Provenance};

pub const MEASURED_LABEL: &str = "measured_ex";
pub const AIRWAVE_LABEL: &str = "synthetic_airwave";
/// Offset at which the far-offset comparison is always reported.
pub const FAR_OFFSET_M: f64 = 25_000.0;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedObservation {
    base: ObservationMatrix,
    weight: f64,
    offsets_m: Vec<f64>,
}

impl WeightedObservation {
    pub fn base(&self) -> &ObservationMatrix {
        &self.base
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets_m
    }
}

fn check_alignment(a: &FieldProfile, b: &FieldProfile, what: &str) -> Result<()> {
    let (oa, ob) = (a.offsets(), b.offsets());
    if let Some(i) = (0..oa.len().min(ob.len())).find(|&i| oa[i] != ob[i]) {
        return Err(Error::Alignment(format!(
            "{what}: first mismatch at sample {i}: {} m vs {} m",
            oa[i], ob[i]
        )));
    }
    if oa.len() != ob.len() {
        let i = oa.len().min(ob.len());
        let missing = oa.get(i).or(ob.get(i)).copied().unwrap_or(f64::NAN);
        return Err(Error::Alignment(format!(
            "{what}: first mismatch at sample {i}: offset {missing} m present in only one profile \
             ({} vs {} samples)",
            oa.len(),
            ob.len()
        )));
    }
    Ok(())
}

/// Channel 0 is weight·|measured|, channel 1 is weight·|airwave|.
pub fn assemble_observations(
    measured: &FieldProfile,
    synthetic_air: &FieldProfile,
    weight: f64,
) -> Result<WeightedObservation> {
    if !(weight > 0.0 && weight.is_finite()) {
        return Err(Error::domain(format!(
            "weight must be positive, got {weight}"
        )));
    }
    check_alignment(measured, synthetic_air, "measured vs airwave")?;
    let columns: Vec<Vec<f64>> = [measured, synthetic_air]
        .iter()
        .map(|p| p.magnitudes().into_iter().map(|m| m * weight).collect())
        .collect();
    let base = ObservationMatrix::from_columns(
        &columns,
        vec![MEASURED_LABEL.to_string(), AIRWAVE_LABEL.to_string()],
    )?;
    Ok(WeightedObservation {
        base,
        weight,
        offsets_m: measured.offsets().to_vec(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationOptions {
    pub ica: IcaOptions,
    /// Standard deviation of added Gaussian noise, relative to each channel's
    /// standard deviation. Zero disables it.
    pub noise_level: f64,
}

impl Default for SeparationOptions {
    fn default() -> Self {
        SeparationOptions {
            ica: IcaOptions::default(),
            noise_level: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Identification {
    /// Index of the recovered component labelled as airwave.
    pub airwave_component: usize,
    /// corr(recovered airwave, synthetic airwave channel).
    pub airwave_correlation: f64,
    /// corr(signal, synthetic airwave channel).
    pub signal_correlation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationSummary {
    pub iterations_per_component: Vec<usize>,
    pub converged: Vec<bool>,
    /// Rows of W·V, unmixing for centered weighted observations.
    pub total_unmixing: Vec<Vec<f64>>,
    pub noise_level: f64,
    /// RMS of (measured - signal - airwave) over RMS of measured, weighted units.
    pub reconstruction_rms_relative: f64,
}

impl SeparationSummary {
    pub fn all_converged(&self) -> bool {
        self.converged.iter().all(|&c| c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilteredResult {
    pub signal: FieldProfile,
    pub airwave_recovered: FieldProfile,
    pub identification: Identification,
    /// Regression coefficient of each recovered source, in component order.
    pub scale_factors: Vec<f64>,
    pub diagnostics: SeparationSummary,
}

fn add_conditioning_noise(x: &mut DMatrix<f64>, level: f64, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e6f_6973_655f_6c76);
    for j in 0..x.ncols() {
        let col = x.column(j);
        let mean = col.mean();
        let std = (col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / col.len() as f64).sqrt();
        let sigma = level * std;
        for v in x.column_mut(j).iter_mut() {
            *v += sigma * rng.sample::<f64, _>(StandardNormal);
        }
    }
}

/// Least-squares coefficients c minimizing |S c - y|.
fn least_squares(sources: &DMatrix<f64>, y: &[f64]) -> Result<Vec<f64>> {
    let rhs = DMatrix::from_column_slice(y.len(), 1, y);
    let svd = sources.clone().svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-14 * svd.singular_values.max())
        .map_err(|e| Error::Degenerate(format!("regression failed: {e}")))?;
    Ok(sol.column(0).iter().copied().collect())
}

pub fn separate_airwave(
    obs: &WeightedObservation,
    options: &SeparationOptions,
) -> Result<FilteredResult> {
    const MIN_SAMPLES: usize = 8;
    if obs.base.n_samples() < MIN_SAMPLES {
        return Err(Error::domain(format!(
            "separation needs at least {MIN_SAMPLES} samples, got {}",
            obs.base.n_samples()
        )));
    }
    let mut x = obs.base.values().clone();
    if options.noise_level > 0.0 {
        add_conditioning_noise(&mut x, options.noise_level, options.ica.seed);
    }

    let (z, whitening) = whiten(&x)?;
    let sep = fastica_deflation(&z, &whitening, 2, &options.ica)?;
    let total = sep.total_unmixing(&whitening);
    // sources including the mean, so that x = A s holds without an intercept
    let mut sources = &x * total.transpose();

    let measured: Vec<f64> = x.column(0).iter().copied().collect();
    let airwave_channel: Vec<f64> = x.column(1).iter().copied().collect();
    let corr: Vec<f64> = (0..2)
        .map(|k| correlation(sources.column(k).as_slice(), &airwave_channel))
        .collect();
    let air = if corr[1].abs() > corr[0].abs() { 1 } else { 0 };
    let sig = 1 - air;
    if corr[air] < 0.0 {
        sources.column_mut(air).neg_mut();
    }

    let scale_factors = least_squares(&sources, &measured)?;
    let signal_w: Vec<f64> = sources
        .column(sig)
        .iter()
        .map(|s| s * scale_factors[sig])
        .collect();
    let air_w: Vec<f64> = sources
        .column(air)
        .iter()
        .map(|s| s * scale_factors[air])
        .collect();

    let residual_ss: f64 = measured
        .iter()
        .zip(signal_w.iter().zip(&air_w))
        .map(|(m, (s, a))| (m - s - a).powi(2))
        .sum();
    let measured_ss: f64 = measured.iter().map(|m| m * m).sum();
    let reconstruction_rms_relative = if measured_ss > 0.0 {
        (residual_ss / measured_ss).sqrt()
    } else {
        0.0
    };

    let identification = Identification {
        airwave_component: air,
        airwave_correlation: correlation(&air_w, &airwave_channel),
        signal_correlation: correlation(&signal_w, &airwave_channel),
    };

    let w = obs.weight;
    let offsets = obs.offsets_m.clone();
    let tag = format!("separated weight={w:e}");
    let signal: Vec<f64> = signal_w.iter().map(|v| v / w).collect();
    let airwave: Vec<f64> = air_w.iter().map(|v| v / w).collect();

    Ok(FilteredResult {
        signal: FieldProfile::from_real(
            offsets.clone(),
            &signal,
            Provenance::SeparatedComponent,
            &tag,
        )?,
        airwave_recovered: FieldProfile::from_real(
            offsets,
            &airwave,
            Provenance::SeparatedComponent,
            &tag,
        )?,
        identification,
        scale_factors,
        diagnostics: SeparationSummary {
            iterations_per_component: sep.iterations_per_component.clone(),
            converged: sep.converged.clone(),
            total_unmixing: total
                .row_iter()
                .map(|r| r.iter().copied().collect())
                .collect(),
            noise_level: options.noise_level,
            reconstruction_rms_relative,
        },
    })
}

/// 100 · (candidate - reference) / reference.
pub fn percent_difference(candidate_mag: f64, reference_mag: f64) -> Result<f64> {
    if reference_mag == 0.0 || !reference_mag.is_finite() {
        return Err(Error::domain(format!(
            "percent difference needs a finite nonzero reference, got {reference_mag}"
        )));
    }
    Ok(100.0 * (candidate_mag - reference_mag) / reference_mag)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub offset_m: f64,
    pub signal_mag: f64,
    pub airwave_mag: f64,
    pub pct_diff_vs_reference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub weight: f64,
    pub depth_m: f64,
    pub converged: bool,
    /// Mean |signal| over offsets inside the window.
    pub window_mean_signal: f64,
    pub points: Vec<SweepPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub window: OffsetWindow,
    pub rows: Vec<SweepRow>,
}

/// Grid indices reported per weight: the window endpoints (nearest grid
/// offsets inside the window) and the offset nearest 25 km.
fn report_indices(offsets: &[f64], window: &OffsetWindow) -> Result<Vec<usize>> {
    let inside: Vec<usize> = (0..offsets.len())
        .filter(|&i| window.contains(offsets[i]))
        .collect();
    if inside.is_empty() {
        return Err(Error::domain(format!(
            "no offsets inside window {}..{} m",
            window.start_m, window.stop_m
        )));
    }
    let nearest = |candidates: &[usize], target: f64| -> usize {
        *candidates
            .iter()
            .min_by(|&&a, &&b| {
                (offsets[a] - target)
                    .abs()
                    .total_cmp(&(offsets[b] - target).abs())
            })
            .expect("non-empty")
    };
    let all: Vec<usize> = (0..offsets.len()).collect();
    let mut idx = vec![
        nearest(&inside, window.start_m),
        nearest(&inside, window.stop_m),
        nearest(&all, FAR_OFFSET_M),
    ];
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

fn reference_lookup(reference: &FieldProfile, offsets: &[f64]) -> Result<Vec<f64>> {
    let mags = reference.magnitudes();
    offsets
        .iter()
        .map(|r| {
            reference
                .offsets()
                .iter()
                .position(|x| x == r)
                .map(|i| mags[i])
                .ok_or_else(|| Error::Alignment(format!("reference lacks offset {r} m")))
        })
        .collect()
}

/// Separates at every weight and summarizes the far-offset window. Rows come
/// out sorted by weight whatever the evaluation order.
#[allow(clippy::too_many_arguments)]
pub fn weight_sweep(
    measured: &FieldProfile,
    synthetic_air: &FieldProfile,
    weights: &[f64],
    reference: Option<&FieldProfile>,
    window: OffsetWindow,
    depth_m: f64,
    options: &SeparationOptions,
) -> Result<SweepReport> {
    if weights.is_empty() {
        return Err(Error::domain("weight sweep needs at least one weight"));
    }
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(Error::domain(format!("weights must be positive, got {w}")));
    }
    let mut weights = weights.to_vec();
    weights.sort_by(f64::total_cmp);

    let offsets = measured.offsets();
    let indices = report_indices(offsets, &window)?;
    let report_offsets: Vec<f64> = indices.iter().map(|&i| offsets[i]).collect();
    let reference_mags = reference
        .map(|r| reference_lookup(r, &report_offsets))
        .transpose()?;

    let rows = weights
        .par_iter()
        .map(|&weight| -> Result<SweepRow> {
            let obs = assemble_observations(measured, synthetic_air, weight)?;
            let result = separate_airwave(&obs, options)?;
            let signal = result.signal.magnitudes();
            let airwave = result.airwave_recovered.magnitudes();
            let in_window: Vec<f64> = offsets
                .iter()
                .zip(&signal)
                .filter(|(r, _)| window.contains(**r))
                .map(|(_, s)| *s)
                .collect();
            let window_mean_signal = in_window.iter().sum::<f64>() / in_window.len() as f64;
            let points = indices
                .iter()
                .enumerate()
                .map(|(k, &i)| {
                    let pct = reference_mags
                        .as_ref()
                        .map(|mags| percent_difference(signal[i], mags[k]))
                        .transpose()?;
                    Ok(SweepPoint {
                        offset_m: offsets[i],
                        signal_mag: signal[i],
                        airwave_mag: airwave[i],
                        pct_diff_vs_reference: pct,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepRow {
                weight,
                depth_m,
                converged: result.diagnostics.all_converged(),
                window_mean_signal,
                points,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { window, rows })
}

pub const SWEEP_CSV_HEADER: &str =
    "weight,depth_m,offset_m,signal_mag,airwave_mag,pct_diff_vs_reference,converged";

/// CSV for one or more sweep reports; `extra_header` lines become `# ` comments.
pub fn sweep_report_csv(reports: &[SweepReport], extra_header: &[String]) -> String {
    let mut out = String::new();
    for line in extra_header {
        let _ = writeln!(out, "# {line}");
    }
    for report in reports {
        let _ = writeln!(
            out,
            "# window_m: {:.16e},{:.16e}",
            report.window.start_m, report.window.stop_m
        );
        for row in &report.rows {
            let _ = writeln!(
                out,
                "# window_mean_signal weight={:e} depth_m={}: {:.16e}",
                row.weight, row.depth_m, row.window_mean_signal
            );
        }
    }
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for row in reports.iter().flat_map(|r| &r.rows) {
        for p in &row.points {
            let pct = p
                .pct_diff_vs_reference
                .map(|v| format!("{v:.16e}"))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{:e},{},{:.16e},{:.16e},{:.16e},{},{}",
                row.weight,
                row.depth_m,
                p.offset_m,
                p.signal_mag,
                p.airwave_mag,
                pct,
                row.converged
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn profile(offsets: &[f64], values: &[f64]) -> FieldProfile {
        FieldProfile::new(
            offsets.to_vec(),
            values.iter().map(|&v| Complex64::new(0.0, v)).collect(),
            Provenance::LayeredSolver,
            "t",
        )
        .unwrap()
    }

    #[test]
    fn weights_scale_channels() {
        let offsets = [1.0, 2.0, 3.0, 4.0];
        let m = profile(&offsets, &[1e-12, 2e-12, 3e-12, 5e-12]);
        let a = profile(&offsets, &[4e-12, 3e-12, 1e-12, 1e-12]);
        let obs = assemble_observations(&m, &a, 1e6).unwrap();
        let v = obs.base().values();
        assert!((v[(0, 0)] - 1e-6).abs() < 1e-20);
        assert!((v[(2, 1)] - 1e-6).abs() < 1e-20);
        assert_eq!(obs.base().labels(), &[MEASURED_LABEL, AIRWAVE_LABEL]);

        let raw = assemble_observations(&m, &a, 1.0).unwrap();
        assert_eq!(raw.base().column(0), m.magnitudes());
        assert_eq!(raw.base().column(1), a.magnitudes());
        assert!(assemble_observations(&m, &a, 0.0).is_err());
    }

    #[test]
    fn misaligned_grids_are_rejected() {
        let m = profile(&[1.0, 2.0, 3.0, 4.0], &[1.0, 2.0, 3.0, 4.0]);
        let a = profile(&[1.0, 2.0, 4.0], &[1.0, 2.0, 3.0]);
        match assemble_observations(&m, &a, 1.0) {
            Err(Error::Alignment(msg)) => assert!(msg.contains("sample 2"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let short = profile(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]);
        match assemble_observations(&m, &short, 1.0) {
            Err(Error::Alignment(msg)) => assert!(msg.contains("offset 4"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn percent_differences() {
        assert_eq!(percent_difference(3.0, 3.0).unwrap(), 0.0);
        assert!((percent_difference(0.74, 1.0).unwrap() + 26.0).abs() < 1e-12);
        assert!((percent_difference(0.03, 1.0).unwrap() + 97.0).abs() < 1e-12);
        assert!(percent_difference(1.0, 0.0).is_err());
    }

    #[test]
    fn report_points_stay_in_window() {
        let offsets: Vec<f64> = (1..=30).map(|i| i as f64 * 1000.0).collect();
        let idx = report_indices(&offsets, &OffsetWindow::new(15_000.0, 25_000.0)).unwrap();
        let picked: Vec<f64> = idx.iter().map(|&i| offsets[i]).collect();
        assert_eq!(picked, vec![15_000.0, 25_000.0]);
        let idx = report_indices(&offsets, &OffsetWindow::new(14_500.0, 20_500.0)).unwrap();
        let picked: Vec<f64> = idx.iter().map(|&i| offsets[i]).collect();
        assert_eq!(picked, vec![15_000.0, 20_000.0, 25_000.0]);
        assert!(report_indices(&offsets, &OffsetWindow::new(40_000.0, 50_000.0)).is_err());
    }
}
