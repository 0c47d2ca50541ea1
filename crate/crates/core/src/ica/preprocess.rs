use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Samples × channels matrix of observed mixtures.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationMatrix {
    values: DMatrix<f64>,
    labels: Vec<String>,
}

impl ObservationMatrix {
    pub fn new(values: DMatrix<f64>, labels: Vec<String>) -> Result<Self> {
        let (n, c) = values.shape();
        if c < 2 {
            return Err(Error::domain(format!("need at least 2 channels, got {c}")));
        }
        if n <= c {
            return Err(Error::domain(format!(
                "need more samples than channels, got {n} samples for {c} channels"
            )));
        }
        if labels.len() != c {
            return Err(Error::domain(format!(
                "{} labels for {c} channels",
                labels.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!(
                "non-finite value at sample {}, channel {}",
                pos % n,
                pos / n
            )));
        }
        Ok(ObservationMatrix { values, labels })
    }

    /// Builds the matrix from per-channel columns of equal length.
    pub fn from_columns(columns: &[Vec<f64>], labels: Vec<String>) -> Result<Self> {
        let n = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::domain("channels differ in length"));
        }
        let values = DMatrix::from_fn(n, columns.len(), |i, j| columns[j][i]);
        ObservationMatrix::new(values, labels)
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n_samples(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_channels(&self) -> usize {
        self.values.ncols()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.column(j).iter().copied().collect()
    }
}

/// Mean of a column, shifted by the first sample so that constant columns
/// give their value back exactly.
fn column_mean(col: impl Iterator<Item = f64> + Clone) -> f64 {
    let mut it = col.clone();
    let Some(first) = it.next() else { return 0.0 };
    let n = col.clone().count() as f64;
    let shift: f64 = col.map(|v| v - first).sum::<f64>() / n;
    first + shift
}

/// Removes the per-channel mean. A second pass removes the rounding residue
/// of the first.
pub fn center(x: &DMatrix<f64>) -> (DMatrix<f64>, DVector<f64>) {
    let mut out = x.clone();
    let mut mean = DVector::zeros(x.ncols());
    for j in 0..x.ncols() {
        let m1 = column_mean(x.column(j).iter().copied());
        out.column_mut(j).iter_mut().for_each(|v| *v -= m1);
        let m2 = column_mean(out.column(j).iter().copied());
        if m2 != 0.0 {
            out.column_mut(j).iter_mut().for_each(|v| *v -= m2);
        }
        mean[j] = m1 + m2;
    }
    (out, mean)
}

/// Sample covariance (1/N normalization) of already centered data.
pub fn covariance(xc: &DMatrix<f64>) -> DMatrix<f64> {
    let n = xc.nrows() as f64;
    let mut c = xc.transpose() * xc / n;
    // exact symmetry for the eigensolver
    c = (&c + c.transpose()) * 0.5;
    c
}

#[derive(Debug, Clone, PartialEq)]
pub struct WhiteningResult {
    pub mean: DVector<f64>,
    /// Maps a centered observation x to z = V x.
    pub whitening_matrix: DMatrix<f64>,
    pub dewhitening_matrix: DMatrix<f64>,
    /// Covariance eigenvalues, descending.
    pub eigenvalues: DVector<f64>,
}

/// Ratio below which the smallest covariance eigenvalue counts as zero.
pub const RANK_TOLERANCE: f64 = 1e-12;

/// Centers `x` and whitens it through the eigendecomposition of its sample
/// covariance, V = D^{-1/2} Eᵀ. Returns the whitened samples (rows) and the
/// transform.
pub fn whiten(x: &DMatrix<f64>) -> Result<(DMatrix<f64>, WhiteningResult)> {
    let (xc, mean) = center(x);
    let c = xc.ncols();
    let eig = SymmetricEigen::new(covariance(&xc));
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let largest = eig.eigenvalues[order[0]];
    let smallest = eig.eigenvalues[order[c - 1]];
    if !(largest > 0.0) || !(smallest >= RANK_TOLERANCE * largest) {
        return Err(Error::Degenerate(format!(
            "covariance is rank deficient (eigenvalues {smallest:e} vs {largest:e})"
        )));
    }

    let eigenvalues = DVector::from_iterator(c, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::from_fn(c, c, |r, k| eig.eigenvectors[(r, order[k])]);
    // fix eigenvector signs: largest-magnitude entry positive
    for k in 0..c {
        let col = vectors.column(k);
        let pivot = col
            .iter()
            .copied()
            .fold(0.0f64, |acc, v| if v.abs() > acc.abs() { v } else { acc });
        if pivot < 0.0 {
            vectors.column_mut(k).neg_mut();
        }
    }

    let inv_sqrt = DMatrix::from_diagonal(&eigenvalues.map(|l| 1.0 / l.sqrt()));
    let sqrt = DMatrix::from_diagonal(&eigenvalues.map(f64::sqrt));
    let whitening_matrix = &inv_sqrt * vectors.transpose();
    let dewhitening_matrix = &vectors * sqrt;
    let z = &xc * whitening_matrix.transpose();
    Ok((
        z,
        WhiteningResult {
            mean,
            whitening_matrix,
            dewhitening_matrix,
            eigenvalues,
        },
    ))
}
