use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;

pub const TOOL_VERSION: &str = concat!("fluctent ", env!("CARGO_PKG_VERSION"));

/// Enough information to regenerate an output file. Deliberately carries no
/// timestamp, so re-running a manifest reproduces its output byte for byte.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub parameters: serde_json::Value,
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: &'static str,
}

impl RunManifest {
    pub fn new(command: &'static str, parameters: serde_json::Value, output: Option<&Path>) -> Self {
        Self { command, parameters, output: output.map(Path::to_path_buf), seed: None, version: TOOL_VERSION }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Doubles in CSV cells: 17 significant digits, enough to round-trip.
pub fn float_cell(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output types serialize infallibly");
    text.push('\n');
    text
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, contents: &[u8]) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, contents).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents).and_then(|_| stdout.flush()).map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Writes a CSV table to `out` and its manifest next to it.
pub fn write_table(out: &Path, header: &[&str], rows: &[Vec<String>], manifest: &RunManifest) -> Result<(), CliError> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::io(out, std::io::Error::other(e));
    writer.write_record(header).map_err(csv_err)?;
    for row in rows {
        writer.write_record(row).map_err(csv_err)?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::io(out, std::io::Error::other(e.to_string())))?;
    emit(Some(out), &bytes)?;
    emit(Some(&sidecar_path(out)), to_pretty_json(manifest).as_bytes())
}
