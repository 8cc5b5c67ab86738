//! JSON state files:
//!
//! ```json
//! { "dim_q": 2, "dim_b": 2, "amplitudes": [[0.7071, 0.0], [0.0, 0.0], [0.0, 0.0], [0.7071, 0.0]] }
//! ```
//!
//! Amplitudes are `[re, im]` pairs, row-major over `(j, k)` with `j` the
//! subsystem index.

use std::path::Path;

use fluctent::{BipartitePureState, Complex64};
use serde::Deserialize;

use crate::error::CliError;

/// Norm deviations up to this are accepted silently.
pub const NORM_TOL: f64 = 1e-8;
/// Norm deviations up to this are renormalized with a warning.
pub const RENORMALIZE_LIMIT: f64 = 1e-4;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dim_q: usize,
    dim_b: usize,
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug)]
pub struct LoadedState {
    pub state: BipartitePureState,
    /// `|‖ψ‖ − 1|` before renormalization.
    pub norm_deviation: f64,
}

pub fn load(path: &Path, dim_q: Option<usize>, dim_b: Option<usize>) -> Result<LoadedState, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text, dim_q, dim_b).map_err(|e| match e {
        CliError::Parse { message, .. } => CliError::Parse { path: path.to_path_buf(), message },
        other => other,
    })
}

/// Parses a state file. Explicit `dim_q` / `dim_b` must agree with the file.
pub fn parse(text: &str, dim_q: Option<usize>, dim_b: Option<usize>) -> Result<LoadedState, CliError> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse { path: "<state>".into(), message: e.to_string() })?;
    for (flag, given, stored) in [("dim_q", dim_q, file.dim_q), ("dim_b", dim_b, file.dim_b)] {
        if let Some(given) = given.filter(|&g| g != stored) {
            return Err(fluctent::Error::DimensionMismatch(format!("--{} {given} but file has {flag} = {stored}", flag.replace('_', "-"))).into());
        }
    }
    if file.dim_q * file.dim_b != file.amplitudes.len() {
        return Err(fluctent::Error::DimensionMismatch(format!(
            "{} x {} state needs {} amplitudes, file has {}",
            file.dim_q,
            file.dim_b,
            file.dim_q * file.dim_b,
            file.amplitudes.len()
        ))
        .into());
    }
    if file.amplitudes.iter().flatten().any(|x| !x.is_finite()) {
        return Err(CliError::Parse { path: "<state>".into(), message: "non-finite amplitude".into() });
    }
    let amplitudes: Vec<Complex64> = file.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let norm_deviation = (norm - 1.0).abs();
    if norm_deviation > RENORMALIZE_LIMIT {
        return Err(fluctent::Error::NotNormalized { norm }.into());
    }
    let state = BipartitePureState::normalized(file.dim_q, file.dim_b, amplitudes)?;
    Ok(LoadedState { state, norm_deviation })
}
