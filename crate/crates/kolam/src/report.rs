//! Machine-readable run reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// What a command ran on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProgramDescriptor {
    Diamond { n: usize, strands: usize, sites: usize },
    File { path: String, strands: usize, sites: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub program: ProgramDescriptor,
    pub options: BTreeMap<String, Value>,
    pub result: Value,
    /// Wall-clock time per phase in milliseconds.
    pub timings_ms: BTreeMap<String, f64>,
    pub peak_state_size: Option<usize>,
}

impl RunReport {
    pub fn new(command: &str, program: ProgramDescriptor) -> Self {
        Self {
            command: command.into(),
            program,
            options: BTreeMap::new(),
            result: Value::Null,
            timings_ms: BTreeMap::new(),
            peak_state_size: None,
        }
    }

    pub fn option(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.options.insert(key.into(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The same report with every timing set to zero.
    pub fn normalized(&self) -> Self {
        let mut copy = self.clone();
        copy.timings_ms.values_mut().for_each(|t| *t = 0.0);
        copy
    }
}

/// A count as a JSON number when it fits in `u64`, otherwise as a decimal
/// string, so no digits are ever lost.
pub fn count_value(count: u128) -> Value {
    match u64::try_from(count) {
        Ok(small) => Value::from(small),
        Err(_) => Value::String(count.to_string()),
    }
}
