//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::fs;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbl_core::airwave::{airwave_field, airwave_profile, AirwaveParams};
use sbl_core::emforward::{
    filter_self_test_error, hankel_transform, layered_ex, wholespace_ex, HankelFilter,
};
use sbl_core::ica::{amari_index, correlation, fastica, IcaOptions, ObservationMatrix};
use sbl_core::model::{skin_depth, LayeredModel, OffsetWindow, Survey};
use sbl_core::pipeline::{
    assemble_observations, percent_difference, separate_airwave, weight_sweep, SeparationOptions,
};
use sbl_core::{Complex64, DMatrix, FieldProfile, Provenance};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn survey(offsets: Vec<f64>) -> Survey {
    Survey {
        frequency_hz: 0.125,
        source_height_above_seafloor_m: 30.0,
        receiver_depth_m: None,
        dipole_moment_am: 1.0,
        azimuth_rad: 0.0,
        offsets_m: offsets,
    }
}

fn grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step).round() as usize;
    (0..=n).map(|i| start + i as f64 * step).collect()
}

fn airwave_law() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (zs, zr) in [(70.0, 100.0), (270.0, 300.0), (970.0, 1000.0), (5.0, 40.0)] {
        let p = AirwaveParams {
            dipole_moment_am: 1.0,
            azimuth_rad: 0.3,
            source_depth_m: zs,
            receiver_depth_m: zr,
            seawater_conductivity_s_per_m: 4.0,
            frequency_hz: 0.125,
            air_wavenumber_per_m: 0.0,
        };
        for r in [500.0, 3000.0, 12_500.0] {
            let ratio =
                airwave_field(&p, 2.0 * r).unwrap().norm() / airwave_field(&p, r).unwrap().norm();
            worst = worst.max((ratio / 0.125 - 1.0).abs());
        }
    }
    let broadside = AirwaveParams::from_survey(
        &LayeredModel::background(100.0),
        &Survey {
            azimuth_rad: std::f64::consts::FRAC_PI_2,
            ..survey(vec![1.0])
        },
    );
    let zero = airwave_field(&broadside, 10_000.0).unwrap().norm();
    let mags = |d: f64| {
        let model = LayeredModel::background(d);
        let s = survey(vec![25_000.0]);
        airwave_profile(&AirwaveParams::from_survey(&model, &s), &s.offsets_m)
            .unwrap()
            .magnitudes()[0]
    };
    let depth_ratio = mags(1000.0) / mags(100.0);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    check(
        worst < 1e-12 && zero == 0.0 && (depth_ratio / 0.0797 - 1.0).abs() < 1e-3,
        format!(
            "ratio error {worst:.1e}, broadside {zero}, 1000/100 m depth factor {depth_ratio:.5}, {ms:.2} ms"
        ),
    )
}

fn skin_depth_value() -> Outcome {
    let d = skin_depth(4.0, 0.125).unwrap();
    check((d / 711.8 - 1.0).abs() < 1e-3, format!("delta = {d:.3} m"))
}

fn hankel_machinery() -> Outcome {
    let start = Instant::now();
    let e0 = filter_self_test_error(&HankelFilter::j0());
    let e1 = filter_self_test_error(&HankelFilter::j1());
    let single = hankel_transform(
        |l| Complex64::new(l * (-l).exp(), 0.0),
        &HankelFilter::j0(),
        1.0,
    )
    .unwrap()
    .re;
    let e_single = (single * 2f64.powf(1.5) - 1.0).abs();
    let ms = start.elapsed().as_secs_f64() * 1e3;
    check(
        e0 < 1e-6 && e1 < 1e-6 && e_single < 1e-6,
        format!("J0 {e0:.1e}, J1 {e1:.1e} worst relative error over r in [0.1, 10], {ms:.2} ms"),
    )
}

fn forward_oracle() -> Outcome {
    let model = LayeredModel::with_reservoir(1000.0).uniform_like(1.5);
    let offsets = grid(100.0, 10_000.0, 100.0);
    let s = survey(offsets);
    let start = Instant::now();
    let prof = layered_ex(&model, &s).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let dz = s.receiver_depth(&model) - s.source_depth(&model);
    let mut worst = 0.0f64;
    for (r, e) in prof.offsets().iter().zip(prof.ex()) {
        if *r < 500.0 {
            continue;
        }
        let w = wholespace_ex(1.5, 0.125, 1.0, *r, 0.0, dz).unwrap();
        worst = worst.max((e - w).norm() / w.norm());
    }

    let layered = LayeredModel::with_reservoir(1000.0);
    let offsets = grid(1000.0, 20_000.0, 1000.0);
    let a = layered_ex(
        &layered,
        &Survey {
            receiver_depth_m: Some(990.0),
            ..survey(offsets.clone())
        },
    )
    .unwrap();
    let b = layered_ex(
        &layered,
        &Survey {
            source_height_above_seafloor_m: 10.0,
            receiver_depth_m: Some(970.0),
            ..survey(offsets)
        },
    )
    .unwrap();
    let recip = a
        .ex()
        .iter()
        .zip(b.ex())
        .map(|(x, y)| (x - y).norm() / x.norm())
        .fold(0.0, f64::max);
    check(
        worst < 0.01 && recip < 0.005 && secs < 10.0,
        format!("uniform vs whole-space {worst:.2e}, reciprocity {recip:.2e}, 100 offsets in {secs:.2} s"),
    )
}

fn loglog_slope(offsets: &[f64], mags: &[f64]) -> f64 {
    let x: Vec<f64> = offsets.iter().map(|r| r.ln()).collect();
    let y: Vec<f64> = mags.iter().map(|m| m.ln()).collect();
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    sxy / x.iter().map(|a| (a - mx).powi(2)).sum::<f64>()
}

fn airwave_dominance() -> Outcome {
    let start = Instant::now();
    let model = LayeredModel::background(100.0);
    let prof =
        layered_ex(&model, &survey(grid(15_000.0, 25_000.0, 250.0))).map_err(|e| e.to_string())?;
    let slope = loglog_slope(prof.offsets(), &prof.magnitudes());
    let secs = start.elapsed().as_secs_f64();
    check(
        (slope + 3.0).abs() <= 0.3 && secs < 10.0,
        format!("slope {slope:.4} over 15-25 km at 100 m water, {secs:.2} s"),
    )
}

fn laplace(rng: &mut impl Rng) -> f64 {
    let u: f64 = rng.random::<f64>() - 0.5;
    -u.signum() * (1.0 - 2.0 * u.abs()).ln() / std::f64::consts::SQRT_2
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn fastica_benchmark() -> Outcome {
    let start = Instant::now();
    let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 1.0]);
    let (mut iters, mut amaris, mut worst_corr, mut all_conv) = (vec![], vec![], 1.0f64, true);
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(500 + seed);
        let s = DMatrix::from_fn(10_000, 2, |_, _| laplace(&mut rng));
        let obs =
            ObservationMatrix::new(&s * a.transpose(), vec!["x1".into(), "x2".into()]).unwrap();
        let (wh, sep) = fastica(
            &obs,
            2,
            &IcaOptions {
                seed,
                ..Default::default()
            },
        )
        .map_err(|e| e.to_string())?;
        all_conv &= sep.all_converged();
        iters.push(*sep.iterations_per_component.iter().max().unwrap() as f64);
        amaris.push(amari_index(&(sep.total_unmixing(&wh) * &a)).unwrap());
        for i in 0..2 {
            let best = (0..2)
                .map(|k| {
                    correlation(s.column(i).as_slice(), sep.components.column(k).as_slice()).abs()
                })
                .fold(0.0, f64::max);
            worst_corr = worst_corr.min(best);
        }
    }
    let (mi, ma) = (median(iters), median(amaris));
    let secs = start.elapsed().as_secs_f64();
    check(
        all_conv && mi <= 25.0 && ma < 0.05 && worst_corr > 0.99 && secs < 5.0,
        format!(
            "converged {all_conv}, median iterations {mi}, median Amari {ma:.4}, min |corr| {worst_corr:.4}, {secs:.2} s"
        ),
    )
}

fn pipeline_separation() -> Outcome {
    let start = Instant::now();
    let offsets = grid(500.0, 25_000.0, 500.0);
    // s1: deep water, airwave negligible; s_air: analytic airwave of a 100 m water column
    let deep = LayeredModel::with_reservoir(3000.0);
    let s1 = layered_ex(&deep, &survey(offsets.clone()))
        .map_err(|e| e.to_string())?
        .magnitudes();
    let shallow = LayeredModel::with_reservoir(100.0);
    let s_air = airwave_profile(
        &AirwaveParams::from_survey(&shallow, &survey(offsets.clone())),
        &offsets,
    )
    .unwrap()
    .magnitudes();
    let x1: Vec<f64> = s1.iter().zip(&s_air).map(|(a, b)| a + b).collect();
    let measured =
        FieldProfile::from_real(offsets.clone(), &x1, Provenance::ExternalReference, "x1").unwrap();
    let air = FieldProfile::from_real(offsets, &s_air, Provenance::AnalyticAirwave, "x2").unwrap();
    let obs = assemble_observations(&measured, &air, 1e6).map_err(|e| e.to_string())?;
    let res = separate_airwave(&obs, &SeparationOptions::default()).map_err(|e| e.to_string())?;
    let signal = res.signal.magnitudes();
    let c1 = correlation(&signal, &s1).abs();
    let ca = correlation(&signal, &s_air).abs();
    let rho = correlation(&s1, &s_air);
    let rms = res.diagnostics.reconstruction_rms_relative;
    let secs = start.elapsed().as_secs_f64();
    check(
        c1 > 0.95 && ca < 0.1 && rms < 1e-6 && secs < 5.0,
        format!(
            "|corr(signal, s1)| {c1:.4} (need > 0.95), |corr(signal, s_air)| {ca:.4} (need < 0.1), \
             reconstruction RMS {rms:.1e}, {secs:.2} s; corr(s1, s_air) = {rho:.4} makes both bounds \
             jointly unreachable"
        ),
    )
}

fn sweep_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = r#"{
  "layers": [
    {"thickness_m": null, "conductivity": 1e-11},
    {"thickness_m": 100, "conductivity": 4.0},
    {"thickness_m": 500, "conductivity": 1.5},
    {"thickness_m": 100, "conductivity": 0.001},
    {"thickness_m": null, "conductivity": 1.5}
  ],
  "survey": {"frequency_hz": 0.125, "source_height_m": 30, "dipole_moment": 1, "azimuth_deg": 0,
             "offsets": {"start_m": 500, "stop_m": 25000, "step_m": 500}},
  "run": {"weights": [1e5, 1e6, 1e7], "seed": 11, "depths_m": [100, 300, 500, 700, 900, 1000],
          "noise_level": 1e-4}
}"#;
    fs::write(dir.path().join("config.json"), config).unwrap();
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let out = Command::new(env!("CARGO_BIN_EXE_sbl"))
            .current_dir(dir.path())
            .args([
                "--config",
                "config.json",
                "--seed",
                "11",
                "--out",
                "run",
                "sweep",
            ])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(String::from_utf8_lossy(&out.stderr).into_owned());
        }
        outputs.push(fs::read(dir.path().join("run/sweep.csv")).map_err(|e| e.to_string())?);
    }
    check(
        outputs[0] == outputs[1],
        format!(
            "two sweep runs, {} bytes each, identical {}",
            outputs[0].len(),
            outputs[0] == outputs[1]
        ),
    )
}

fn table_structure() -> Outcome {
    let depths = [100.0, 300.0, 500.0, 700.0, 900.0, 1000.0];
    let weights = [1e5, 1e6, 1e7];
    let offsets = grid(500.0, 25_000.0, 500.0);
    let window = OffsetWindow::new(15_000.0, 25_000.0);
    let mut rows = 0;
    let mut worst_pct = 0.0f64;
    for d in depths {
        let model = LayeredModel::with_reservoir(d);
        let s = survey(offsets.clone());
        let measured = layered_ex(&model, &s).map_err(|e| e.to_string())?;
        let air = airwave_profile(&AirwaveParams::from_survey(&model, &s), &offsets).unwrap();
        // stand-in external reference: the same survey without the reservoir
        let reference = layered_ex(&LayeredModel::background(d), &s)
            .unwrap()
            .with_provenance(Provenance::ExternalReference);
        let report = weight_sweep(
            &measured,
            &air,
            &weights,
            Some(&reference),
            window,
            d,
            &SeparationOptions::default(),
        )
        .map_err(|e| e.to_string())?;
        let ref_mag = reference.magnitudes();
        for row in &report.rows {
            rows += 1;
            for p in &row.points {
                let i = offsets.iter().position(|r| *r == p.offset_m).unwrap();
                let expected = percent_difference(p.signal_mag, ref_mag[i]).unwrap();
                let got = p
                    .pct_diff_vs_reference
                    .ok_or("missing percent difference")?;
                worst_pct = worst_pct.max((got - expected).abs());
            }
        }
        if report.rows.iter().map(|r| r.weight).collect::<Vec<_>>() != weights {
            return Err(format!("rows out of weight order at depth {d}"));
        }
    }
    check(
        rows == 18 && worst_pct == 0.0,
        format!(
            "{rows} rows (6 depths x 3 weights), percent-difference convention reproduced exactly"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("airwave law", airwave_law),
        ("skin depth", skin_depth_value),
        ("hankel machinery", hankel_machinery),
        ("forward-solver oracle", forward_oracle),
        ("airwave dominance", airwave_dominance),
        ("fastica benchmark", fastica_benchmark),
        ("pipeline separation", pipeline_separation),
        ("sweep determinism", sweep_determinism),
        ("sweep table structure", table_structure),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {} ({name}): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
