//! Digital linear filter Hankel transforms,
//!
//! ```text
//! ∫₀^∞ f(λ) J_ν(λr) dλ  ≈  (1/r) Σⱼ f(bⱼ / r) wⱼ,    bⱼ = 10^(a + j·s)
//! ```
//!
//! using the 120-point J0 and 140-point J1 filters of Guptasarma and Singh.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::coefficients::{
    J0_120_LOG10_START, J0_120_LOG10_STEP, J0_120_WEIGHTS, J1_140_LOG10_START, J1_140_LOG10_STEP,
    J1_140_WEIGHTS,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselOrder {
    Zero,
    One,
}

#[derive(Debug, Clone, Copy)]
pub struct HankelFilter {
    pub order: BesselOrder,
    /// log10 of the first abscissa.
    pub log10_start: f64,
    /// Abscissa spacing in log10 units.
    pub abscissa_spacing: f64,
    pub coefficients: &'static [f64],
}

impl HankelFilter {
    pub const fn j0() -> Self {
        HankelFilter {
            order: BesselOrder::Zero,
            log10_start: J0_120_LOG10_START,
            abscissa_spacing: J0_120_LOG10_STEP,
            coefficients: &J0_120_WEIGHTS,
        }
    }

    pub const fn j1() -> Self {
        HankelFilter {
            order: BesselOrder::One,
            log10_start: J1_140_LOG10_START,
            abscissa_spacing: J1_140_LOG10_STEP,
            coefficients: &J1_140_WEIGHTS,
        }
    }

    pub fn for_order(order: BesselOrder) -> Self {
        match order {
            BesselOrder::Zero => HankelFilter::j0(),
            BesselOrder::One => HankelFilter::j1(),
        }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Wavenumbers λⱼ = bⱼ / r at which the kernel is sampled.
    pub fn abscissae(&self, r: f64) -> impl Iterator<Item = f64> + '_ {
        (0..self.len())
            .map(move |j| 10f64.powf(self.log10_start + j as f64 * self.abscissa_spacing) / r)
    }
}

/// Hankel transform of `kernel` at offset `r`.
pub fn hankel_transform<F>(mut kernel: F, filter: &HankelFilter, r: f64) -> Result<Complex64>
where
    F: FnMut(f64) -> Complex64,
{
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain(format!(
            "hankel offset must be positive, got {r}"
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (lambda, w) in filter.abscissae(r).zip(filter.coefficients) {
        let v = kernel(lambda);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFiniteKernel { abscissa: lambda });
        }
        acc += v * *w;
    }
    Ok(acc / r)
}

/// Relative error of each filter on its closed-form Lipschitz pair over
/// r ∈ [0.1, 10]:
///
/// * order 0: ∫ λ e^{-λ} J0(λr) dλ = (1 + r²)^{-3/2}
/// * order 1: ∫ e^{-λ} J1(λr) dλ = (1 - 1/sqrt(1 + r²)) / r
pub fn filter_self_test_error(filter: &HankelFilter) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..=40 {
        let r = 10f64.powf(-1.0 + i as f64 * 0.05);
        let (got, expected) = match filter.order {
            BesselOrder::Zero => (
                hankel_transform(|l| Complex64::new(l * (-l).exp(), 0.0), filter, r),
                (1.0 + r * r).powf(-1.5),
            ),
            BesselOrder::One => (
                hankel_transform(|l| Complex64::new((-l).exp(), 0.0), filter, r),
                (1.0 - 1.0 / (1.0 + r * r).sqrt()) / r,
            ),
        };
        let got = match got {
            Ok(v) => v.re,
            Err(_) => return f64::INFINITY,
        };
        worst = worst.max((got / expected - 1.0).abs());
    }
    worst
}

pub const SELF_TEST_TOLERANCE: f64 = 1e-6;

/// Runs the self-test for both embedded filters once per process.
pub fn ensure_filters_valid() -> Result<()> {
    static CHECK: OnceLock<std::result::Result<(), String>> = OnceLock::new();
    CHECK
        .get_or_init(|| {
            for filter in [HankelFilter::j0(), HankelFilter::j1()] {
                let err = filter_self_test_error(&filter);
                if !(err <= SELF_TEST_TOLERANCE) {
                    return Err(format!(
                        "{:?} filter relative error {err:e} exceeds {SELF_TEST_TOLERANCE:e}",
                        filter.order
                    ));
                }
            }
            Ok(())
        })
        .clone()
        .map_err(Error::FilterSelfTest)
}
