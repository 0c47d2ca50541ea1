use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use sbl_core::airwave::{airwave_profile, AirwaveParams};
use sbl_core::emforward::layered_ex;
use sbl_core::ica::IcaOptions;
use sbl_core::model::{load_config, Config, OffsetWindow};
use sbl_core::pipeline::{
    assemble_observations, separate_airwave, sweep_report_csv, weight_sweep, SeparationOptions,
};
use sbl_core::{FieldProfile, Provenance};

use crate::manifest::{Outputs, RunManifest};
use crate::{Cli, Command};

/// Weight used by `separate` when `--weight` is absent.
pub const DEFAULT_WEIGHT: f64 = 1e6;

/// An error caused by how the tool was invoked.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// 2 for invalid input, 1 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<sbl_core::Error>() {
            return if e.is_user_error() { 2 } else { 1 };
        }
        if let Some(e) = cause.downcast_ref::<std::io::Error>() {
            use std::io::ErrorKind::*;
            return if matches!(e.kind(), NotFound | PermissionDenied | InvalidData) {
                2
            } else {
                1
            };
        }
    }
    1
}

#[derive(Debug, Default)]
pub struct RunReport {
    pub written: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

struct RunContext {
    manifest: RunManifest,
    config: Option<Config>,
    seed: u64,
}

fn read_input(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn prepare(cli: &Cli, name: &str) -> Result<RunContext> {
    let (config, text) = match &cli.config {
        Some(path) => {
            let text = read_input(path)?;
            let config =
                load_config(&text).with_context(|| format!("loading {}", path.display()))?;
            (Some(config), Some(text))
        }
        None => (None, None),
    };
    let seed = cli
        .seed
        .or(config.as_ref().map(|c| c.run.seed))
        .unwrap_or(0);
    let mut manifest = RunManifest::new(name, cli.config.as_deref(), seed, &cli.out);
    if let Some(text) = text {
        manifest.record_input("config", text.as_bytes());
    }
    Ok(RunContext {
        manifest,
        config,
        seed,
    })
}

fn require_config<'a>(config: Option<&'a Config>, command: &str) -> Result<&'a Config> {
    config.ok_or_else(|| usage(format!("`{command}` needs --config")))
}

fn water_depth(config: &Config) -> f64 {
    config.model.layers()[1].thickness_m
}

/// The configured model, or one copy per entry of `run.depths_m`.
fn depth_series(config: &Config) -> Vec<(f64, Config)> {
    if config.run.depths_m.is_empty() {
        vec![(water_depth(config), config.clone())]
    } else {
        config
            .run
            .depths_m
            .iter()
            .map(|&d| (d, config.with_water_depth(d)))
            .collect()
    }
}

fn file_name(stem: &str, depth: f64, config: &Config) -> String {
    if config.run.depths_m.is_empty() {
        format!("{stem}.csv")
    } else {
        format!("{stem}_depth{depth}m.csv")
    }
}

fn separation_options(ctx: &RunContext) -> SeparationOptions {
    let run = ctx
        .config
        .as_ref()
        .map(|c| c.run.clone())
        .unwrap_or_default();
    SeparationOptions {
        ica: IcaOptions {
            max_iter: run.max_iter,
            tol: run.tol,
            seed: ctx.seed,
            ..IcaOptions::default()
        },
        noise_level: run.noise_level,
    }
}

fn window(cli: &Cli, config: Option<&Config>) -> OffsetWindow {
    match cli.window {
        Some((start, stop)) => OffsetWindow::new(start, stop),
        None => config.map(|c| c.run.window).unwrap_or_default(),
    }
}

fn loglog_slope(profile: &FieldProfile) -> Option<f64> {
    let pts: Vec<(f64, f64)> = profile
        .offsets()
        .iter()
        .zip(profile.magnitudes())
        .filter(|(_, m)| *m > 0.0)
        .map(|(r, m)| (r.ln(), m.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    Some(sxy / sxx)
}

fn synthesize(config: &Config, exact_air: bool) -> Result<(FieldProfile, FieldProfile)> {
    let measured = layered_ex(&config.model, &config.survey)?;
    let air = synthesize_airwave(config, exact_air)?;
    Ok((measured, air))
}

fn synthesize_airwave(config: &Config, exact_air: bool) -> Result<FieldProfile> {
    let mut params = AirwaveParams::from_survey(&config.model, &config.survey);
    if exact_air || config.run.exact_air_wavenumber {
        params = params.with_exact_air_wavenumber();
    }
    Ok(airwave_profile(&params, &config.survey.offsets_m)?)
}

fn read_profile(path: &Path, label: &str, manifest: &mut RunManifest) -> Result<FieldProfile> {
    let text = read_input(path)?;
    manifest.record_input(label, text.as_bytes());
    FieldProfile::from_csv(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    let name = match &cli.command {
        Command::Forward => "forward",
        Command::Airwave { .. } => "airwave",
        Command::Separate { .. } => "separate",
        Command::Sweep { .. } => "sweep",
    };
    let mut ctx = prepare(cli, name)?;
    let mut outputs = Outputs::default();
    let mut report = RunReport::default();

    match &cli.command {
        Command::Forward => {
            let config = require_config(ctx.config.as_ref(), name)?;
            for (depth, cfg) in depth_series(config) {
                let profile = layered_ex(&cfg.model, &cfg.survey)?;
                let mut header = ctx.manifest.header_lines();
                header.push(format!("water_depth_m: {depth}"));
                header.push("units: offset_m in m, ex in V/m".into());
                outputs.add(file_name("forward", depth, config), profile.to_csv(&header));
            }
        }
        Command::Airwave {
            exact_air_wavenumber,
        } => {
            let config = require_config(ctx.config.as_ref(), name)?;
            for (depth, cfg) in depth_series(config) {
                let profile = synthesize_airwave(&cfg, *exact_air_wavenumber)?;
                let mut header = ctx.manifest.header_lines();
                header.push(format!("water_depth_m: {depth}"));
                header.push("units: offset_m in m, ex in V/m".into());
                if let Some(slope) = loglog_slope(&profile) {
                    header.push(format!("loglog_slope: {slope:.12}"));
                }
                outputs.add(file_name("airwave", depth, config), profile.to_csv(&header));
            }
        }
        Command::Separate { measured, airwave } => {
            let measured = read_profile(measured, "measured", &mut ctx.manifest)?;
            let air = read_profile(airwave, "airwave", &mut ctx.manifest)?;
            let weight = cli.weight.unwrap_or(DEFAULT_WEIGHT);
            let options = separation_options(&ctx);
            let obs = assemble_observations(&measured, &air, weight)?;
            let result = separate_airwave(&obs, &options)?;
            let diag = &result.diagnostics;
            if !diag.all_converged() {
                report.warnings.push(format!(
                    "FastICA did not converge for every component: {:?}",
                    diag.converged
                ));
            }
            let id = &result.identification;
            let mut header = ctx.manifest.header_lines();
            header.push(format!("weight: {weight:e}"));
            header.push(format!("airwave_component: {}", id.airwave_component));
            header.push(format!(
                "airwave_correlation: {:.16e}",
                id.airwave_correlation
            ));
            header.push(format!(
                "signal_correlation: {:.16e}",
                id.signal_correlation
            ));
            header.push(format!("converged: {}", diag.all_converged()));
            if options.noise_level > 0.0 {
                header.push(format!("noise_level: {:e}", options.noise_level));
            }
            outputs.add("signal.csv", result.signal.to_csv(&header));
            outputs.add(
                "airwave_recovered.csv",
                result.airwave_recovered.to_csv(&header),
            );
            let diagnostics = serde_json::json!({
                "manifest": ctx.manifest.header_lines(),
                "weight": weight,
                "identification": id,
                "scale_factors": result.scale_factors,
                "separation": diag,
            });
            let mut text = serde_json::to_string_pretty(&diagnostics)?;
            text.push('\n');
            outputs.add("separation.json", text);
        }
        Command::Sweep {
            measured,
            airwave,
            reference,
        } => {
            let config = require_config(ctx.config.as_ref(), name)?;
            let options = separation_options(&ctx);
            let window = window(cli, Some(config));
            let weights = match cli.weight {
                Some(w) => vec![w],
                None => config.run.weights.clone(),
            };
            let reports = match (measured, airwave) {
                (Some(m), Some(a)) => {
                    let m = read_profile(m, "measured", &mut ctx.manifest)?;
                    let a = read_profile(a, "airwave", &mut ctx.manifest)?;
                    let r = reference
                        .as_deref()
                        .map(|p| read_profile(p, "reference", &mut ctx.manifest))
                        .transpose()?;
                    let depth = water_depth(config);
                    vec![weight_sweep(
                        &m,
                        &a,
                        &weights,
                        r.as_ref(),
                        window,
                        depth,
                        &options,
                    )?]
                }
                (None, None) => depth_series(config)
                    .iter()
                    .map(|(depth, cfg)| {
                        let (m, a) = synthesize(cfg, false)?;
                        Ok(weight_sweep(
                            &m, &a, &weights, None, window, *depth, &options,
                        )?)
                    })
                    .collect::<Result<Vec<_>>>()?,
                _ => {
                    return Err(usage(
                        "`sweep` takes both MEASURED and AIRWAVE profiles or neither",
                    ))
                }
            };
            for r in &reports {
                for row in r.rows.iter().filter(|row| !row.converged) {
                    report.warnings.push(format!(
                        "FastICA did not converge at weight {:e}, depth {} m",
                        row.weight, row.depth_m
                    ));
                }
            }
            let mut header = ctx.manifest.header_lines();
            header.push(format!(
                "provenance: {} (pct_diff = 100*(signal-reference)/reference)",
                Provenance::SeparatedComponent
            ));
            if options.noise_level > 0.0 {
                header.push(format!("noise_level: {:e}", options.noise_level));
            }
            outputs.add("sweep.csv", sweep_report_csv(&reports, &header));
        }
    }

    report.written = outputs.commit(&cli.out)?;
    Ok(report)
}
