use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::exact::WedgeSpec;
use crate::geometry::complex::DEFAULT_SECTOR_COUNT;
use crate::sets::{Limits, ScalarSet};

/// Knobs shared by every verifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessConfig {
    pub limits: Limits,
    pub wedge: WedgeSpec,
    pub sector_count: usize,
    /// When false, `elapsed_ms` is always 0 so reports are byte-identical.
    pub timing: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            limits: Limits::default(),
            wedge: WedgeSpec::default(),
            sector_count: DEFAULT_SECTOR_COUNT,
            timing: true,
        }
    }
}

/// Outcome of one verifier run. Exact quantities are canonical fraction
/// strings; `pass` records whether `measured` satisfies the claimed
/// inequality against `bound`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub task: String,
    pub input: Value,
    pub bound: String,
    pub measured: String,
    pub pass: bool,
    pub constants: Map<String, Value>,
    pub elapsed_ms: u64,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Accumulates a report while a verifier runs.
pub(crate) struct ReportBuilder {
    task: &'static str,
    input: Map<String, Value>,
    constants: Map<String, Value>,
    notes: Vec<String>,
    started: Instant,
    timing: bool,
}

impl ReportBuilder {
    pub fn new(task: &'static str, config: &HarnessConfig) -> Self {
        ReportBuilder {
            task,
            input: Map::new(),
            constants: Map::new(),
            notes: Vec::new(),
            started: Instant::now(),
            timing: config.timing,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.input
            .insert(key.into(), serde_json::to_value(value).expect("serializable input"));
        self
    }

    pub fn set(&mut self, key: &str, set: &ScalarSet) -> &mut Self {
        self.input(key, set)
    }

    pub fn constant(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.constants
            .insert(key.into(), serde_json::to_value(value).expect("serializable constant"));
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn finish(self, bound: impl ToString, measured: impl ToString, pass: bool) -> VerificationReport {
        let mut input = self.input;
        let canonical = serde_json::to_string(&input).expect("serializable input");
        let digest = Sha256::digest(format!("{}\n{canonical}", self.task).as_bytes());
        input.insert("digest".into(), Value::String(hex::encode(&digest[..8])));
        VerificationReport {
            task: self.task.into(),
            input: Value::Object(input),
            bound: bound.to_string(),
            measured: measured.to_string(),
            pass,
            constants: self.constants,
            elapsed_ms: if self.timing {
                self.started.elapsed().as_millis() as u64
            } else {
                0
            },
            notes: self.notes,
        }
    }
}
