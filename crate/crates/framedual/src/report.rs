use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

/// Outcome of one command: what was read, what was concluded, and what was
/// written. Verdicts keep insertion order.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub verdicts: Map<String, Value>,
    pub artifacts_written: Vec<String>,
    pub wall_time_ms: u64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn start(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: Vec::new(),
            verdicts: Map::new(),
            artifacts_written: Vec::new(),
            wall_time_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn input(&mut self, path: impl std::fmt::Display) {
        self.inputs.push(path.to_string());
    }

    pub fn artifact(&mut self, path: impl std::fmt::Display) {
        self.artifacts_written.push(path.to_string());
    }

    pub fn verdict(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("serializable verdict");
        self.verdicts.insert(key.to_string(), value);
    }

    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.wall_time_ms = t.elapsed().as_millis() as u64;
        }
        self
    }

    /// One `key: value` line per verdict, then the written artifacts.
    pub fn human(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.verdicts {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
        for a in &self.artifacts_written {
            out.push_str(&format!("wrote {a}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn human_keeps_verdict_order() {
        let mut r = RunReport::start("x");
        r.verdict("zeta", 1.5);
        r.verdict("alpha", "dual");
        r.artifact("out.json");
        let r = r.finish();
        assert_eq!(r.human(), "zeta: 1.5\nalpha: dual\nwrote out.json\n");
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["verdicts"]["alpha"], "dual");
        assert!(json.get("started").is_none());
    }
}
