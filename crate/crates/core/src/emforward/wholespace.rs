use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::complex_wavenumber;

/// Quasi-static Ex of an x-directed electric dipole in a homogeneous
/// conducting whole-space, at displacement (dx, dy, dz) from the source:
///
/// ```text
/// Ex = p e^{ikR} / (4πσR³) · [ (dx/R)² (3 - 3ikR - k²R²) + (k²R² + ikR - 1) ]
/// ```
pub fn wholespace_ex(
    conductivity: f64,
    frequency_hz: f64,
    dipole_moment: f64,
    dx_m: f64,
    dy_m: f64,
    dz_m: f64,
) -> Result<Complex64> {
    let r2 = dx_m * dx_m + dy_m * dy_m + dz_m * dz_m;
    if !(r2 > 0.0 && r2.is_finite()) {
        return Err(Error::domain("receiver coincides with the source"));
    }
    let k = complex_wavenumber(conductivity, frequency_hz)?;
    let r = r2.sqrt();
    let ikr = Complex64::i() * k * r;
    let k2r2 = k * k * r2;
    let cos2 = dx_m * dx_m / r2;
    let bracket = (3.0 - 3.0 * ikr - k2r2) * cos2 + (k2r2 + ikr - 1.0);
    Ok(ikr.exp() * bracket * (dipole_moment / (4.0 * PI * conductivity * r2 * r)))
}
