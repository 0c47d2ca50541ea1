use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Fourth-order cumulant E{u⁴} - 3(E{u²})² from raw sample moments.
/// Zero for Gaussian data; equals the excess kurtosis for unit-variance data.
pub fn kurtosis(u: &[f64]) -> Result<f64> {
    if u.len() < 4 {
        return Err(Error::domain(format!(
            "kurtosis needs at least 4 samples, got {}",
            u.len()
        )));
    }
    if u.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("kurtosis input contains non-finite values"));
    }
    let n = u.len() as f64;
    let (m2, m4) = u.iter().fold((0.0, 0.0), |(m2, m4), &v| {
        let v2 = v * v;
        (m2 + v2, m4 + v2 * v2)
    });
    let (m2, m4) = (m2 / n, m4 / n);
    Ok(m4 - 3.0 * m2 * m2)
}

/// Pearson correlation. Returns 0 when either input has zero variance.
pub fn correlation(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "correlation of unequal lengths");
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (&x, &y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return 0.0;
    }
    sab / (saa.sqrt() * sbb.sqrt())
}

/// Amari cross-talk index of a square matrix P,
///
/// ```text
/// ½ [ Σᵢ (Σⱼ |pᵢⱼ| / maxₖ |pᵢₖ| - 1) + Σⱼ (Σᵢ |pᵢⱼ| / maxₖ |pₖⱼ| - 1) ]
/// ```
///
/// Zero exactly for signed scaled permutations; n(n-1) at most, so 2 for a
/// 2×2 matrix of equal entries.
pub fn amari_index(p: &DMatrix<f64>) -> Result<f64> {
    let (rows, cols) = p.shape();
    if rows != cols || rows == 0 {
        return Err(Error::domain(format!(
            "amari index needs a square matrix, got {rows}x{cols}"
        )));
    }
    let a = p.map(f64::abs);
    let mut total = 0.0;
    for i in 0..rows {
        let row = a.row(i);
        let max = row.max();
        if !(max > 0.0) {
            return Err(Error::domain(format!("row {i} is all zero")));
        }
        total += row.sum() / max - 1.0;
    }
    for j in 0..cols {
        let col = a.column(j);
        let max = col.max();
        if !(max > 0.0) {
            return Err(Error::domain(format!("column {j} is all zero")));
        }
        total += col.sum() / max - 1.0;
    }
    Ok(0.5 * total)
}
