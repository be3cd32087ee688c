//! JSON and CSV artifacts. Every artifact carries the schema version and the
//! fully resolved config.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::BenchError;

/// Bumped on any change to a JSON field or CSV column.
pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 9 significant digits.
pub fn sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

pub fn sig9_all(xs: &[f64]) -> Vec<f64> {
    xs.iter().copied().map(sig9).collect()
}

#[derive(Debug, Serialize)]
pub struct Artifact<'a, R: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    pub config: &'a RunConfig,
    pub result: R,
    /// Excluded from determinism comparisons.
    pub wall_time_s: f64,
}

pub fn write_json<R: Serialize>(path: &Path, artifact: &Artifact<'_, R>) -> Result<(), BenchError> {
    let mut text = serde_json::to_string_pretty(artifact)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// CSV with a leading `# config: {...}` comment line.
pub fn csv_writer(
    out: Option<&Path>,
    config: &RunConfig,
) -> Result<csv::Writer<Box<dyn Write>>, BenchError> {
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout()),
    };
    writeln!(
        sink,
        "# schema_version: {SCHEMA_VERSION}; config: {}",
        serde_json::to_string(config)?
    )?;
    Ok(csv::Writer::from_writer(sink))
}

/// Removes every `wall_time_s` field, for comparing artifacts across runs.
pub fn strip_wall_time(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            m.remove("wall_time_s");
            m.values_mut().for_each(strip_wall_time);
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(strip_wall_time),
        _ => {}
    }
}
