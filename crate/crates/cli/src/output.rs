//! Rendering of command results as JSON documents or CSV tables.

use clap::ValueEnum;
use faberkit_core::scalar::{format_decimal, format_rational};
use faberkit_core::Rational;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::CliError;

pub const DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// `p/q` form.
pub fn q(r: &Rational) -> String {
    format_rational(r)
}

/// Rounded decimal companion of [`q`].
pub fn qd(r: &Rational) -> String {
    format_decimal(r, DECIMAL_DIGITS)
}

/// A finished report: metadata for the JSON document and the rows shared by
/// both formats.
pub struct Report<R> {
    pub meta: Map<String, Value>,
    pub rows: Vec<R>,
    pub warnings: Vec<String>,
}

impl<R: Serialize> Report<R> {
    pub fn new(command: &str) -> Self {
        let mut meta = Map::new();
        meta.insert("command".into(), Value::from(command));
        Report { meta, rows: Vec::new(), warnings: Vec::new() }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report metadata is plain data");
        self.meta.insert(key.into(), value);
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Json => {
                let mut doc = self.meta.clone();
                doc.insert(
                    "rows".into(),
                    serde_json::to_value(&self.rows).map_err(|e| CliError::Input(e.to_string()))?,
                );
                doc.insert("warnings".into(), Value::from(self.warnings.clone()));
                let mut out =
                    serde_json::to_vec_pretty(&Value::Object(doc)).map_err(|e| CliError::Input(e.to_string()))?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.rows {
                    w.serialize(row).map_err(|e| CliError::Input(e.to_string()))?;
                }
                w.into_inner().map_err(|e| CliError::Io(e.into_error()))
            }
        }
    }
}
