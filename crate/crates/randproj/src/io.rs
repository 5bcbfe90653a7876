//! File formats: discrete laws in, CSV and JSON reports out.

use std::io::Write;
use std::path::Path;

use randproj_core::{Atom, ExtendedReal, NuDistribution};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::config::{Command, OutputFormat, RunConfig};
use crate::error::CliError;
use crate::VERSION;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiscreteFile {
    atoms: Vec<AtomEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomEntry {
    x: f64,
    p: f64,
}

/// Reads `{"atoms":[{"x":…,"p":…},…]}`.
pub fn parse_discrete(text: &str) -> Result<NuDistribution, CliError> {
    let file: DiscreteFile =
        serde_json::from_str(text).map_err(|e| CliError::config(format!("discrete law: {e}")))?;
    let atoms: Vec<Atom> = file.atoms.iter().map(|a| Atom { x: a.x, p: a.p }).collect();
    Ok(NuDistribution::finite_discrete(&atoms)?)
}

pub fn load_discrete(path: &Path) -> Result<NuDistribution, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_discrete(&text)
}

/// Shortest round-trip decimal, switching to exponent form for very small or
/// very large magnitudes.
pub fn fmt_f64(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn fmt_ext(v: ExtendedReal) -> String {
    match v {
        ExtendedReal::Finite(x) => fmt_f64(x),
        ExtendedReal::PosInfinity => "inf".into(),
    }
}

/// An extended real for JSON: a number, or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub ExtendedReal);

impl From<f64> for Num {
    fn from(v: f64) -> Self {
        Num(if v == f64::INFINITY { ExtendedReal::PosInfinity } else { ExtendedReal::Finite(v) })
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            ExtendedReal::Finite(x) => s.serialize_f64(x),
            ExtendedReal::PosInfinity => s.serialize_str("inf"),
        }
    }
}

/// A command's result: a flat table for CSV and an object for JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    /// `(key, value)` pairs written as `# key: value` above the CSV header.
    pub notes: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
}

impl Output {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { notes: Vec::new(), columns, rows: Vec::new(), json: Value::Null }
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.push((key.into(), value.into()));
    }

    pub fn render(&self, command: Command, config: &RunConfig) -> Result<Vec<u8>, CliError> {
        let config_json = serde_json::to_value(config).map_err(|e| CliError::config(e.to_string()))?;
        match config.format.unwrap_or_default() {
            OutputFormat::Csv => {
                let mut buf = Vec::new();
                let _ = writeln!(buf, "# {VERSION}");
                let _ = writeln!(buf, "# command: {command}");
                let _ = writeln!(buf, "# config: {config_json}");
                for (k, v) in &self.notes {
                    let _ = writeln!(buf, "# {k}: {v}");
                }
                let mut w = csv::Writer::from_writer(buf);
                let csv_err = |e: csv::Error| CliError::config(e.to_string());
                w.write_record(&self.columns).map_err(csv_err)?;
                for row in &self.rows {
                    w.write_record(row).map_err(csv_err)?;
                }
                w.into_inner().map_err(|e| CliError::config(e.to_string()))
            }
            OutputFormat::Json => {
                let meta = json!({ "version": VERSION, "command": command.to_string(), "config": config_json });
                let mut doc = serde_json::Map::new();
                doc.insert("meta".into(), meta);
                if let Value::Object(body) = &self.json {
                    doc.extend(body.clone());
                }
                let mut buf = serde_json::to_vec_pretty(&Value::Object(doc)).map_err(|e| CliError::config(e.to_string()))?;
                buf.push(b'\n');
                Ok(buf)
            }
        }
    }

    /// Writes to `config.out`, or to standard output when unset.
    pub fn emit(&self, command: Command, config: &RunConfig) -> Result<(), CliError> {
        let bytes = self.render(command, config)?;
        match &config.out {
            Some(path) => std::fs::write(path, bytes).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            }),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(&bytes)
                    .and_then(|_| out.flush())
                    .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
            }
        }
    }
}
