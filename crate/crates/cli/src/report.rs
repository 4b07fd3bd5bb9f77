use std::time::Instant;

use curve_gb::{CurveInput, CurveParameters, Error};
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

/// Machine-readable report. `serde_json::Map` is ordered by key, so the
/// output is key-sorted at every level.
pub struct RunReport {
    command: &'static str,
    fields: Map<String, Value>,
    started: Instant,
}

impl RunReport {
    pub fn new(command: &'static str) -> Self {
        RunReport { command, fields: Map::new(), started: Instant::now() }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.fields.insert(key.to_string(), value);
    }

    pub fn input(&mut self, input: &CurveInput) {
        self.set("input", input_json(input));
    }

    pub fn parameters(&mut self, params: &CurveParameters) {
        self.set("parameters", params);
    }

    pub fn to_json(&self) -> String {
        let mut all = self.fields.clone();
        all.insert("schema".into(), json!(SCHEMA));
        all.insert("command".into(), json!(self.command));
        let ms = self.started.elapsed().as_secs_f64() * 1000.0;
        all.insert("timing_ms".into(), json!((ms * 1000.0).round() / 1000.0));
        serde_json::to_string_pretty(&Value::Object(all)).expect("report serializes")
    }
}

pub fn input_json(input: &CurveInput) -> Value {
    json!({ "arith": input.arith(), "mn": input.mn(), "instance": input.to_string() })
}

pub fn error_report(e: &Error) -> RunReport {
    let mut r = RunReport::new("error");
    r.set("error", json!({ "name": e.name(), "message": e.to_string() }));
    r
}
