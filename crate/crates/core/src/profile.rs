//! Complex Ex-versus-offset curves and their CSV form.
//!
//! ```text
//! # provenance: layered-solver
//! # fingerprint: 3f2a...
//! offset_m,ex_real,ex_imag,ex_mag
//! 5.0000000000000000e2,...
//! ```
//!
//! Values are written with 17 significant digits so that a read/write cycle
//! is lossless.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "offset_m,ex_real,ex_imag,ex_mag";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    LayeredSolver,
    AnalyticAirwave,
    ExternalReference,
    SeparatedComponent,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::LayeredSolver => "layered-solver",
            Provenance::AnalyticAirwave => "analytic-airwave",
            Provenance::ExternalReference => "external-reference",
            Provenance::SeparatedComponent => "separated-component",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "layered-solver" => Ok(Provenance::LayeredSolver),
            "analytic-airwave" => Ok(Provenance::AnalyticAirwave),
            "external-reference" => Ok(Provenance::ExternalReference),
            "separated-component" => Ok(Provenance::SeparatedComponent),
            other => Err(Error::domain(format!("unknown provenance `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldProfile {
    offsets_m: Vec<f64>,
    ex: Vec<Complex64>,
    provenance: Provenance,
    survey_fingerprint: String,
}

impl FieldProfile {
    pub fn new(
        offsets_m: Vec<f64>,
        ex: Vec<Complex64>,
        provenance: Provenance,
        survey_fingerprint: impl Into<String>,
    ) -> Result<Self> {
        if offsets_m.len() != ex.len() {
            return Err(Error::domain(format!(
                "{} offsets but {} field values",
                offsets_m.len(),
                ex.len()
            )));
        }
        if let Some(w) = offsets_m.windows(2).find(|w| !(w[1] > w[0])) {
            return Err(Error::domain(format!(
                "offsets not strictly increasing: {} then {}",
                w[0], w[1]
            )));
        }
        Ok(FieldProfile {
            offsets_m,
            ex,
            provenance,
            survey_fingerprint: survey_fingerprint.into(),
        })
    }

    /// Profile of real values, stored with zero imaginary part.
    pub fn from_real(
        offsets_m: Vec<f64>,
        values: &[f64],
        provenance: Provenance,
        survey_fingerprint: impl Into<String>,
    ) -> Result<Self> {
        let ex = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        FieldProfile::new(offsets_m, ex, provenance, survey_fingerprint)
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets_m
    }

    pub fn ex(&self) -> &[Complex64] {
        &self.ex
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.ex.iter().map(|e| e.norm()).collect()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn survey_fingerprint(&self) -> &str {
        &self.survey_fingerprint
    }

    pub fn len(&self) -> usize {
        self.offsets_m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets_m.is_empty()
    }

    /// Same values relabelled, e.g. to treat a curve as an external reference.
    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// CSV text; `extra_header` lines are emitted as `# ` comments before the
    /// provenance and fingerprint lines.
    pub fn to_csv(&self, extra_header: &[String]) -> String {
        let mut out = String::with_capacity(64 * (self.len() + 4));
        for line in extra_header {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "# provenance: {}", self.provenance);
        let _ = writeln!(out, "# fingerprint: {}", self.survey_fingerprint);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for (r, e) in self.offsets_m.iter().zip(&self.ex) {
            let _ = writeln!(
                out,
                "{r:.16e},{:.16e},{:.16e},{:.16e}",
                e.re,
                e.im,
                e.norm()
            );
        }
        out
    }

    /// Parses [`FieldProfile::to_csv`] output. Comment lines other than
    /// provenance and fingerprint are ignored; a missing provenance line
    /// defaults to `external-reference`.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut provenance = None;
        let mut fingerprint = String::new();
        let mut seen_header = false;
        let mut offsets = Vec::new();
        let mut ex = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(v) = comment.strip_prefix("provenance:") {
                    provenance = Some(v.parse::<Provenance>().map_err(|e| Error::Csv {
                        line: line_no,
                        message: e.to_string(),
                    })?);
                } else if let Some(v) = comment.strip_prefix("fingerprint:") {
                    fingerprint = v.trim().to_string();
                }
                continue;
            }
            if !seen_header {
                if line != CSV_HEADER {
                    return Err(Error::Csv {
                        line: line_no,
                        message: format!("expected header `{CSV_HEADER}`, found `{line}`"),
                    });
                }
                seen_header = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(Error::Csv {
                    line: line_no,
                    message: format!("expected 4 fields, found {}", fields.len()),
                });
            }
            let parse = |i: usize| -> Result<f64> {
                fields[i].trim().parse::<f64>().map_err(|e| Error::Csv {
                    line: line_no,
                    message: format!("field {}: {e}", i + 1),
                })
            };
            offsets.push(parse(0)?);
            ex.push(Complex64::new(parse(1)?, parse(2)?));
        }
        if !seen_header {
            return Err(Error::Csv {
                line: 0,
                message: "missing header line".into(),
            });
        }
        FieldProfile::new(
            offsets,
            ex,
            provenance.unwrap_or(Provenance::ExternalReference),
            fingerprint,
        )
        .map_err(|e| Error::Csv {
            line: 0,
            message: e.to_string(),
        })
    }
}
