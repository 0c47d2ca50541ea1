//! Inline electric field of a horizontal electric dipole in a horizontally
//! layered earth, source and receiver in the same layer.
//!
//! The spectral-domain response is split into TM and TE parts. Each part is
//! built from the generalized reflection coefficients looking up from the top
//! and down from the bottom of the source layer, computed by the usual
//! upward/downward recursion. Only decaying exponentials e^{-Γd} with
//! Re Γ > 0 are ever formed, so thick resistive layers cannot overflow.
//!
//! With Ptm, Pte the TM and TE kernels and θ the azimuth from the dipole axis,
//!
//! ```text
//! Ex(r) = p/(4π) [ ∫ (Ptm - Pte) λ/2 J0(λr) dλ
//!                  + cos 2θ ( ∫ (Ptm + Pte) λ/2 J0(λr) dλ - (1/r) ∫ (Ptm + Pte) J1(λr) dλ ) ]
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::hankel::{ensure_filters_valid, hankel_transform, HankelFilter};
use crate::error::{Error, Result};
use crate::model::{survey_fingerprint, validate_model, LayeredModel, Survey, MU0};
use crate::profile::{FieldProfile, Provenance};

#[derive(Debug, Clone)]
pub struct LayeredSolver {
    /// Top depth of each layer; `tops[0]` is -∞.
    tops: Vec<f64>,
    conductivity: Vec<f64>,
    /// ζ = -iωμ0 for e^{-iωt} time dependence.
    zeta: Complex64,
    layer: usize,
    source_depth: f64,
    receiver_depth: f64,
    dipole_moment: f64,
    cos_two_theta: f64,
}

fn layer_of(tops: &[f64], z: f64) -> usize {
    // layer i spans (tops[i], tops[i+1]]
    tops.iter().skip(1).take_while(|&&t| t < z).count()
}

impl LayeredSolver {
    pub fn new(model: &LayeredModel, survey: &Survey) -> Result<Self> {
        validate_model(model, survey).into_result()?;
        let mut tops = vec![f64::NEG_INFINITY];
        tops.extend(model.interface_depths());
        let zs = survey.source_depth(model);
        let zr = survey.receiver_depth(model);
        let layer = layer_of(&tops, zs);
        if layer_of(&tops, zr) != layer {
            return Err(Error::domain(format!(
                "receiver at {zr} m and source at {zs} m lie in different layers"
            )));
        }
        if layer == 0 || layer + 1 >= model.len() {
            return Err(Error::domain("source must lie in a bounded layer"));
        }
        Ok(LayeredSolver {
            tops,
            conductivity: model
                .layers()
                .iter()
                .map(|l| l.conductivity_s_per_m)
                .collect(),
            zeta: Complex64::new(0.0, -2.0 * PI * survey.frequency_hz * MU0),
            layer,
            source_depth: zs,
            receiver_depth: zr,
            dipole_moment: survey.dipole_moment_am,
            cos_two_theta: (2.0 * survey.azimuth_rad).cos(),
        })
    }

    fn thickness(&self, i: usize) -> f64 {
        self.tops[i + 1] - self.tops[i]
    }

    /// TM and TE kernels at wavenumber λ, including the Γ/σ and ζ/Γ factors.
    fn kernels(&self, lambda: f64, gamma: &mut Vec<Complex64>) -> (Complex64, Complex64) {
        let n = self.conductivity.len();
        let s = self.layer;
        gamma.clear();
        gamma.extend(
            self.conductivity
                .iter()
                .map(|&sigma| (Complex64::new(lambda * lambda, 0.0) + self.zeta * sigma).sqrt()),
        );
        let g = gamma[s];
        let top = self.tops[s];
        let bottom = self.tops[s + 1];
        let ds = bottom - top;
        let zs = self.source_depth;
        let zr = self.receiver_depth;

        let mut out = [Complex64::new(0.0, 0.0); 2];
        for (slot, tm) in [(0usize, true), (1usize, false)] {
            let admittance = |i: usize| -> Complex64 {
                if tm {
                    Complex64::new(self.conductivity[i], 0.0)
                } else {
                    self.zeta
                }
            };
            // interface reflection seen from layer `here` towards `beyond`
            let local = |here: usize, beyond: usize| -> Complex64 {
                let a = admittance(beyond) * gamma[here];
                let b = admittance(here) * gamma[beyond];
                (a - b) / (a + b)
            };

            // looking down from the bottom of the source layer
            let mut r_down = Complex64::new(0.0, 0.0);
            for iz in (s..n - 1).rev() {
                let rl = local(iz, iz + 1);
                r_down = if iz == n - 2 {
                    rl
                } else {
                    let t = r_down * (-2.0 * gamma[iz + 1] * self.thickness(iz + 1)).exp();
                    (rl + t) / (1.0 + rl * t)
                };
            }
            // looking up from the top of the source layer
            let mut r_up = Complex64::new(0.0, 0.0);
            for iz in 1..=s {
                let rl = local(iz, iz - 1);
                r_up = if iz == 1 {
                    rl
                } else {
                    let t = r_up * (-2.0 * gamma[iz - 1] * self.thickness(iz - 1)).exp();
                    (rl + t) / (1.0 + rl * t)
                };
            }

            let sign = if tm { -1.0 } else { 1.0 };
            let den = 1.0 - r_up * r_down * (-2.0 * g * ds).exp();
            let p_down =
                ((-g * (zs - top)).exp() + sign * r_down * (-g * (ds + bottom - zs)).exp()) * r_up
                    / den;
            let p_up = ((-g * (bottom - zs)).exp() + sign * r_up * (-g * (ds + zs - top)).exp())
                * r_down
                / den;
            let green = p_up * (-g * (bottom - zr)).exp()
                + p_down * (-g * (zr - top)).exp()
                + sign * (-g * (zr - zs).abs()).exp();
            out[slot] = if tm {
                green * g / self.conductivity[s]
            } else {
                green * self.zeta / g
            };
        }
        (out[0], out[1])
    }

    /// Ex at horizontal offset `r`.
    pub fn ex_at(&self, r: f64) -> Result<Complex64> {
        let mut scratch = Vec::with_capacity(self.conductivity.len());
        let j0 = HankelFilter::j0();
        let j1 = HankelFilter::j1();
        let i_diff = hankel_transform(
            |lambda| {
                let (tm, te) = self.kernels(lambda, &mut scratch);
                (tm - te) * (0.5 * lambda)
            },
            &j0,
            r,
        )?;
        let i_sum = hankel_transform(
            |lambda| {
                let (tm, te) = self.kernels(lambda, &mut scratch);
                (tm + te) * (0.5 * lambda)
            },
            &j0,
            r,
        )?;
        let i_j1 = hankel_transform(
            |lambda| {
                let (tm, te) = self.kernels(lambda, &mut scratch);
                tm + te
            },
            &j1,
            r,
        )?;
        Ok((i_diff + (i_sum - i_j1 / r) * self.cos_two_theta) * (self.dipole_moment / (4.0 * PI)))
    }
}

/// Ex at every survey offset. Offsets are evaluated in parallel; each value
/// depends only on its own offset.
pub fn layered_ex(model: &LayeredModel, survey: &Survey) -> Result<FieldProfile> {
    ensure_filters_valid()?;
    let solver = LayeredSolver::new(model, survey)?;
    let ex = survey
        .offsets_m
        .par_iter()
        .map(|&r| solver.ex_at(r))
        .collect::<Result<Vec<_>>>()?;
    FieldProfile::new(
        survey.offsets_m.clone(),
        ex,
        Provenance::LayeredSolver,
        survey_fingerprint(model, survey),
    )
}
