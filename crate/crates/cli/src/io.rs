//! Input parsing and report serialization for the `fflab` binary.
//!
//! Polynomials are exchanged as single JSON objects holding exactly one of
//! two keys: `{"roots": [...]}` (real roots, any order) or
//! `{"coeffs": [...]}` (plain coefficients, highest power first, normalized
//! to monic on ingestion). Commands that output polynomials emit the same
//! shapes, so outputs can be piped straight back in.

use std::fmt;
use std::fs;
use std::io::Read;

use fflab_core::verify::{CheckReport, Suite};
use fflab_core::{Polynomial, RootVector};
use serde::{Deserialize, Serialize};

/// Malformed or semantically invalid input: bad JSON, an empty root list,
/// a zero leading coefficient, an unknown suite or ensemble name.
/// Distinguished from computation failures so the process can exit with
/// the input-error status code.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Convenience constructor for an [`InputError`] wrapped in `anyhow`.
pub fn input_error(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(InputError(msg.into()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialSpec {
    #[serde(default)]
    roots: Option<Vec<f64>>,
    #[serde(default)]
    coeffs: Option<Vec<f64>>,
}

/// Reads a polynomial from a file path, with `-` meaning standard input.
pub fn read_polynomial(path: &str) -> anyhow::Result<Polynomial> {
    parse_polynomial(&read_source(path)?)
}

/// Parses the JSON polynomial exchange format.
pub fn parse_polynomial(text: &str) -> anyhow::Result<Polynomial> {
    let spec: PolynomialSpec = serde_json::from_str(text)
        .map_err(|e| input_error(format!("invalid polynomial JSON: {e}")))?;
    match (spec.roots, spec.coeffs) {
        (Some(roots), None) => {
            if roots.is_empty() {
                return Err(input_error("\"roots\" must list at least one root"));
            }
            if roots.iter().any(|r| !r.is_finite()) {
                return Err(input_error("every root must be finite"));
            }
            Ok(Polynomial::from_roots(&RootVector::new(roots)))
        }
        (None, Some(coeffs)) => Polynomial::from_plain_coeffs(&coeffs)
            .map_err(|e| input_error(format!("invalid coefficients: {e}"))),
        _ => Err(input_error(
            "provide exactly one of \"roots\" or \"coeffs\"",
        )),
    }
}

fn read_source(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| input_error(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| input_error(format!("reading {path}: {e}")))
    }
}

#[derive(Serialize)]
struct CoeffsOut {
    coeffs: Vec<f64>,
}

#[derive(Serialize)]
struct RootsOut {
    roots: Vec<f64>,
}

#[derive(Serialize)]
struct ScoreOut {
    score: Vec<f64>,
}

/// `{"coeffs": [...]}` for a polynomial (plain, highest power first).
pub fn coeffs_json(p: &Polynomial) -> String {
    serde_json::to_string(&CoeffsOut {
        coeffs: p.plain_coeffs(),
    })
    .expect("serializing coefficients")
}

/// `{"roots": [...]}` for a root configuration (descending).
pub fn roots_json(roots: &RootVector) -> String {
    serde_json::to_string(&RootsOut {
        roots: roots.as_slice().to_vec(),
    })
    .expect("serializing roots")
}

/// `{"score": [...]}`, aligned with the descending roots.
pub fn score_json(score: &[f64]) -> String {
    serde_json::to_string(&ScoreOut {
        score: score.to_vec(),
    })
    .expect("serializing score")
}

/// Pretty JSON array of suite reports.
pub fn reports_json(reports: &[CheckReport]) -> String {
    serde_json::to_string_pretty(reports).expect("serializing reports")
}

/// Flat CSV of suite reports: one row per margin, `suite,trial,margin,skipped`,
/// with skipped trials carried as rows with an empty margin field.
pub fn reports_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from("suite,trial,margin,skipped\n");
    for report in reports {
        let per_trial = Suite::from_name(report.suite)
            .map(Suite::margins_per_trial)
            .unwrap_or(1);
        let mut next_margin = 0usize;
        for trial in 0..report.config.trials {
            if report.skipped_trials.binary_search(&trial).is_ok() {
                out.push_str(&format!("{},{},,true\n", report.suite, trial));
                continue;
            }
            for _ in 0..per_trial {
                let margin = report.margins.get(next_margin).copied();
                next_margin += 1;
                match margin {
                    Some(m) => out.push_str(&format!("{},{},{},false\n", report.suite, trial, m)),
                    None => break,
                }
            }
        }
    }
    out
}
