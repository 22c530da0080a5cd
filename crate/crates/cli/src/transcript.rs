//! Transcript files.
//!
//! ```json
//! {"schema": 1, "transcripts": [
//!   {"trial": 0, "platform": {"kind": "gl", ...}, "A": [[...]], "B": [[...]], "key": [[...]]}
//! ]}
//! ```
//!
//! `platform` holds fully explicit parameters, so every entry can be rebuilt
//! on its own. `key` is present only for test-mode runs.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use sdpke::algebra::codec::{matrix_from_json, matrix_to_json, JsonScalar};
use sdpke::protocol::Transcript;
use sdpke::{Matrix, Platform, PlatformParams};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ConfigError;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranscriptFile {
    pub schema: u64,
    pub transcripts: Vec<TranscriptEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub trial: u64,
    pub platform: PlatformParams,
    #[serde(rename = "A")]
    pub a: Value,
    #[serde(rename = "B")]
    pub b: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<Value>,
}

impl TranscriptEntry {
    pub fn encode<S: JsonScalar>(trial: u64, platform: PlatformParams, t: &Transcript<Matrix<S>>) -> Self {
        TranscriptEntry {
            trial,
            platform,
            a: matrix_to_json(&t.a),
            b: matrix_to_json(&t.b),
            key: t.key.as_ref().map(matrix_to_json),
        }
    }

    /// Decodes `A`, `B` and `key` against the platform's scalar parameters
    /// and shape.
    pub fn decode<S, P>(&self, p: &P) -> Result<Transcript<Matrix<S>>>
    where
        S: JsonScalar,
        P: Platform<Elem = Matrix<S>>,
    {
        let g = p.generator();
        let (params, shape) = (g.params(), Some((g.rows(), g.cols())));
        let read = |v: &Value, what: &str| {
            matrix_from_json(&params, v, shape).with_context(|| format!("transcript {}: bad {what}", self.trial))
        };
        Ok(Transcript {
            a: read(&self.a, "A")?,
            b: read(&self.b, "B")?,
            key: self.key.as_ref().map(|k| read(k, "key")).transpose()?,
        })
    }
}

impl TranscriptFile {
    pub fn new(mut transcripts: Vec<TranscriptEntry>) -> Self {
        transcripts.sort_by_key(|t| t.trial);
        TranscriptFile { schema: SCHEMA_VERSION, transcripts }
    }

    /// One transcript per line so files diff cleanly trial by trial.
    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = format!("{{\"schema\": {}, \"transcripts\": [\n", self.schema);
        for (i, t) in self.transcripts.iter().enumerate() {
            let sep = if i + 1 < self.transcripts.len() { "," } else { "" };
            text += &format!("  {}{sep}\n", serde_json::to_string(t)?);
        }
        text += "]}\n";
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let raw: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        match raw.get("schema").and_then(Value::as_u64) {
            Some(SCHEMA_VERSION) => {}
            other => {
                return Err(ConfigError(format!(
                    "{}: unsupported transcript schema {other:?}, expected {SCHEMA_VERSION}",
                    path.display()
                ))
                .into())
            }
        }
        serde_json::from_value(raw).with_context(|| format!("parsing {}", path.display()))
    }
}
