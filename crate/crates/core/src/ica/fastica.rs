use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::preprocess::{whiten, ObservationMatrix, WhiteningResult};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[non_exhaustive]
pub enum Nonlinearity {
    /// g(u) = u³, the kurtosis contrast.
    #[default]
    Cubic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IcaOptions {
    pub max_iter: usize,
    /// Converged once |⟨w_new, w_old⟩| > 1 - tol.
    pub tol: f64,
    pub seed: u64,
    pub nonlinearity: Nonlinearity,
}

impl Default for IcaOptions {
    fn default() -> Self {
        IcaOptions {
            max_iter: 200,
            tol: 1e-6,
            seed: 0,
            nonlinearity: Nonlinearity::Cubic,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationResult {
    /// Unit-norm, mutually orthogonal rows in whitened space (components × channels).
    pub unmixing: DMatrix<f64>,
    /// Channels × components: centered x ≈ A s.
    pub mixing_estimate: DMatrix<f64>,
    /// Samples × components, S = Z Wᵀ.
    pub components: DMatrix<f64>,
    pub iterations_per_component: Vec<usize>,
    pub converged: Vec<bool>,
}

impl SeparationResult {
    pub fn all_converged(&self) -> bool {
        self.converged.iter().all(|&c| c)
    }

    /// Unmixing applied to centered observations, W V.
    pub fn total_unmixing(&self, whitening: &WhiteningResult) -> DMatrix<f64> {
        &self.unmixing * &whitening.whitening_matrix
    }

    /// A Sᵀ plus the channel means, as samples × channels.
    pub fn reconstruct(&self, whitening: &WhiteningResult) -> DMatrix<f64> {
        let mut x = &self.components * self.mixing_estimate.transpose();
        for (j, m) in whitening.mean.iter().enumerate() {
            x.column_mut(j).add_scalar_mut(*m);
        }
        x
    }
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize, found: &[DVector<f64>]) -> DVector<f64> {
    loop {
        let mut w = DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal));
        deflate(&mut w, found);
        let norm = w.norm();
        if norm > 1e-8 {
            return w / norm;
        }
    }
}

/// Gram–Schmidt against the rows already extracted.
fn deflate(w: &mut DVector<f64>, found: &[DVector<f64>]) {
    for v in found {
        let proj = w.dot(v);
        w.axpy(-proj, v, 1.0);
    }
}

/// E{z (wᵀz)³} - 3w over all samples.
fn cubic_update(z: &DMatrix<f64>, w: &DVector<f64>) -> DVector<f64> {
    let n = z.nrows() as f64;
    let u = z * w;
    let g = u.map(|v| v * v * v);
    z.transpose() * g / n - w * 3.0
}

/// Deflationary FastICA on whitened samples `z` (samples × channels).
///
/// Each direction starts from a seeded point on the unit sphere and iterates
/// the kurtosis fixed point until |⟨w_new, w_old⟩| > 1 - tol. A direction that
/// hits `max_iter` is kept and flagged unconverged.
pub fn fastica_deflation(
    z: &DMatrix<f64>,
    whitening: &WhiteningResult,
    n_components: usize,
    options: &IcaOptions,
) -> Result<SeparationResult> {
    let dim = z.ncols();
    if n_components == 0 || n_components > dim {
        return Err(Error::domain(format!(
            "cannot extract {n_components} components from {dim} channels"
        )));
    }
    if whitening.dewhitening_matrix.ncols() != dim {
        return Err(Error::domain("whitening transform does not match the data"));
    }
    let Nonlinearity::Cubic = options.nonlinearity;

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut found: Vec<DVector<f64>> = Vec::with_capacity(n_components);
    let mut iterations = Vec::with_capacity(n_components);
    let mut converged = Vec::with_capacity(n_components);

    for _ in 0..n_components {
        let mut w = random_unit(&mut rng, dim, &found);
        let mut done = false;
        let mut count = 0;
        while count < options.max_iter {
            count += 1;
            let mut next = cubic_update(z, &w);
            deflate(&mut next, &found);
            let norm = next.norm();
            if !(norm > 0.0 && norm.is_finite()) {
                break;
            }
            next /= norm;
            let overlap = next.dot(&w).abs();
            w = next;
            if overlap > 1.0 - options.tol {
                done = true;
                break;
            }
        }
        // re-orthogonalize once more so rows stay orthonormal to rounding level
        deflate(&mut w, &found);
        w.normalize_mut();
        found.push(w);
        iterations.push(count);
        converged.push(done);
    }

    let unmixing = DMatrix::from_fn(n_components, dim, |i, j| found[i][j]);
    let components = z * unmixing.transpose();
    let mixing_estimate = &whitening.dewhitening_matrix * unmixing.transpose();
    Ok(SeparationResult {
        unmixing,
        mixing_estimate,
        components,
        iterations_per_component: iterations,
        converged,
    })
}

/// Centers, whitens and separates an observation matrix.
pub fn fastica(
    x: &ObservationMatrix,
    n_components: usize,
    options: &IcaOptions,
) -> Result<(WhiteningResult, SeparationResult)> {
    let (z, whitening) = whiten(x.values())?;
    let result = fastica_deflation(&z, &whitening, n_components, options)?;
    Ok((whitening, result))
}
