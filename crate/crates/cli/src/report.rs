//! JSON reports with sorted keys and a timestamp confined to the header.

use msk_core::Complex64;
use serde_json::{json, Map, Value};

pub const TIMESTAMP_FIELD: &str = "timestamp";

/// One gate outcome; `passed == None` marks a suppressed or informational verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub gate: &'static str,
    pub theorem: &'static str,
    pub order: Option<usize>,
    pub passed: Option<bool>,
    /// Failing gating verdicts set exit code 2.
    pub gating: bool,
    pub detail: String,
}

impl Verdict {
    pub fn gate(gate: &'static str, theorem: &'static str, order: Option<usize>, passed: bool, detail: impl Into<String>) -> Self {
        Self { gate, theorem, order, passed: Some(passed), gating: true, detail: detail.into() }
    }

    pub fn info(gate: &'static str, theorem: &'static str, order: Option<usize>, passed: Option<bool>, detail: impl Into<String>) -> Self {
        Self { gate, theorem, order, passed, gating: false, detail: detail.into() }
    }

    fn to_json(&self) -> Value {
        json!({
            "gate": self.gate,
            "theorem": self.theorem,
            "order": self.order,
            "passed": self.passed,
            "gating": self.gating,
            "detail": self.detail,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    command: String,
    config: Map<String, Value>,
    verdicts: Vec<Verdict>,
    tables: Map<String, Value>,
    notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            config: Map::new(),
            verdicts: Vec::new(),
            tables: Map::new(),
            notes: Vec::new(),
        }
    }

    pub fn config(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.config.insert(key.to_string(), value.into());
        self
    }

    pub fn verdict(&mut self, v: Verdict) -> &mut Self {
        self.verdicts.push(v);
        self
    }

    pub fn table(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.tables.insert(key.to_string(), value.into());
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    pub fn verdicts(&self) -> &[Verdict] {
        &self.verdicts
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| !v.gating || v.passed != Some(false))
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    pub fn to_value(&self, timestamp: &str) -> Value {
        json!({
            "header": {
                "tool": "msk",
                "version": env!("CARGO_PKG_VERSION"),
                TIMESTAMP_FIELD: timestamp,
            },
            "command": self.command,
            "config": self.config,
            "verdicts": self.verdicts.iter().map(Verdict::to_json).collect::<Vec<_>>(),
            "tables": self.tables,
            "notes": self.notes,
            "status": if self.passed() { "pass" } else { "fail" },
            "exit_code": self.exit_code(),
        })
    }

    pub fn render(&self, timestamp: &str) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_value(timestamp)).expect("reports serialize");
        text.push('\n');
        text
    }
}

/// Report text with the header timestamp blanked, for byte comparisons.
pub fn without_timestamp(text: &str) -> Option<String> {
    let mut value: Value = serde_json::from_str(text).ok()?;
    value.get_mut("header")?.as_object_mut()?.remove(TIMESTAMP_FIELD);
    serde_json::to_string_pretty(&value).ok()
}

pub fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn complex_list(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().copied().map(complex).collect())
}

/// Two-column CSV with a header row.
pub fn csv(header: (&str, &str), rows: impl IntoIterator<Item = (f64, f64)>) -> String {
    let mut out = format!("{},{}\n", header.0, header.1);
    for (a, b) in rows {
        out.push_str(&format!("{a},{b}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_follows_gating_verdicts() {
        let mut r = Report::new("t");
        r.verdict(Verdict::info("bound", "x", None, Some(false), ""));
        assert_eq!(r.exit_code(), 0);
        r.verdict(Verdict::gate("psd", "x", Some(3), false, ""));
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn keys_are_sorted_and_timestamp_is_isolated() {
        let mut r = Report::new("t");
        r.config("zeta", 1).config("alpha", 2);
        let a = r.render("2020-01-01T00:00:00Z");
        let b = r.render("2030-01-01T00:00:00Z");
        assert_ne!(a, b);
        assert_eq!(without_timestamp(&a), without_timestamp(&b));
        assert!(a.find("\"alpha\"").unwrap() < a.find("\"zeta\"").unwrap());
    }

    #[test]
    fn csv_round_trips_floats() {
        let text = csv(("x", "y"), [(0.1, 1.0 / 3.0)]);
        let line = text.lines().nth(1).unwrap();
        let (a, b) = line.split_once(',').unwrap();
        assert_eq!(a.parse::<f64>().unwrap(), 0.1);
        assert_eq!(b.parse::<f64>().unwrap(), 1.0 / 3.0);
    }
}
