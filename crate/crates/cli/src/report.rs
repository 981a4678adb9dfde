//! Structured reports. One value tree renders both as JSON and as text, so
//! the two outputs cannot drift apart.

use confmodel::linalg::Poincare;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use std::fmt::Write;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Text(String),
    /// Encoded as `[[degree, coefficient], …]` sorted by degree.
    Poly(Poincare),
    List(Vec<Value>),
    Map(Fields),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Fields(pub Vec<(String, Value)>);

impl Fields {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.0.push((key.to_string(), v.into()));
        self
    }

    pub fn push(&mut self, key: &str, v: impl Into<Value>) {
        self.0.push((key.to_string(), v.into()));
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}
impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}
impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}
impl From<i32> for Value {
    fn from(v: i32) -> Self {
        Value::Int(v as i64)
    }
}
impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}
impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}
impl From<Poincare> for Value {
    fn from(v: Poincare) -> Self {
        Value::Poly(v)
    }
}
impl From<Fields> for Value {
    fn from(v: Fields) -> Self {
        Value::Map(v)
    }
}
impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::List(v.into_iter().map(Into::into).collect())
    }
}
impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        match v {
            Some(v) => v.into(),
            None => Value::Text("none".into()),
        }
    }
}

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Bool(b) => s.serialize_bool(*b),
            Value::Int(i) => s.serialize_i64(*i),
            Value::Text(t) => s.serialize_str(t),
            Value::Poly(p) => {
                let pairs = p.pairs();
                let mut seq = s.serialize_seq(Some(pairs.len()))?;
                for pair in pairs {
                    seq.serialize_element(&pair)?;
                }
                seq.end()
            }
            Value::List(v) => v.serialize(s),
            Value::Map(f) => f.serialize(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    /// e.g. `ls betti`
    pub command: String,
    pub config: Fields,
    pub results: Fields,
    pub passed: bool,
    pub summary: String,
    /// Only filled in when timing was requested.
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, config: Fields) -> Self {
        Report { command: command.into(), config, results: Fields::new(), passed: true, summary: String::new(), timing_ms: None }
    }

    pub fn finish(mut self, passed: bool, summary: impl Into<String>) -> Self {
        self.passed = passed;
        self.summary = summary.into();
        self
    }

    pub fn to_json(&self) -> String {
        let mut f = Fields::new()
            .with("schema_version", SCHEMA_VERSION as i64)
            .with("command", self.command.as_str())
            .with("config", self.config.clone())
            .with("results", self.results.clone())
            .with("passed", self.passed)
            .with("summary", self.summary.as_str());
        if let Some(t) = self.timing_ms {
            f.push("timing_ms", t as i64);
        }
        serde_json::to_string_pretty(&f).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.command);
        for (title, f) in [("config", &self.config), ("results", &self.results)] {
            if !f.0.is_empty() {
                let _ = writeln!(s, "{title}:");
                text_fields(&mut s, f, 1);
            }
        }
        let _ = writeln!(s, "{}: {}", if self.passed { "PASS" } else { "FAIL" }, self.summary);
        if let Some(t) = self.timing_ms {
            let _ = writeln!(s, "time: {t} ms");
        }
        s
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Bool(b) => Some(b.to_string()),
        Value::Int(i) => Some(i.to_string()),
        Value::Text(t) => Some(t.clone()),
        Value::Poly(p) => Some(p.to_string()),
        Value::List(l) if l.iter().all(|x| matches!(x, Value::Int(_) | Value::Bool(_))) => {
            Some(format!("[{}]", l.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn text_fields(s: &mut String, f: &Fields, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in &f.0 {
        match scalar(v) {
            Some(t) => {
                let _ = writeln!(s, "{pad}{k}: {t}");
            }
            None => {
                let _ = writeln!(s, "{pad}{k}:");
                text_value(s, v, depth + 1);
            }
        }
    }
}

fn text_value(s: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Map(f) => text_fields(s, f, depth),
        Value::List(l) if l.is_empty() => {
            let _ = writeln!(s, "{pad}(none)");
        }
        Value::List(l) => {
            for x in l {
                match (scalar(x), x) {
                    (Some(t), _) => {
                        let _ = writeln!(s, "{pad}- {t}");
                    }
                    (None, Value::Map(f)) => {
                        // Flatten small records onto one line.
                        let parts: Option<Vec<String>> =
                            f.0.iter().map(|(k, v)| scalar(v).map(|t| format!("{k}={t}"))).collect();
                        match parts {
                            Some(p) => {
                                let _ = writeln!(s, "{pad}- {}", p.join(", "));
                            }
                            None => {
                                let _ = writeln!(s, "{pad}-");
                                text_fields(s, f, depth + 1);
                            }
                        }
                    }
                    (None, other) => {
                        let _ = writeln!(s, "{pad}-");
                        text_value(s, other, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(s, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_encode_as_sorted_pairs() {
        let mut r = Report::new("x", Fields::new()).finish(true, "ok");
        r.results.push("betti", Poincare::from_pairs([(3, 1), (0, 1)]));
        let j: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(j["results"]["betti"], serde_json::json!([[0, 1], [3, 1]]));
        assert_eq!(j["schema_version"], 1);
        assert!(j.get("timing_ms").is_none());
        assert!(r.to_text().contains("betti: 1 + t^3"));
    }

    #[test]
    fn key_order_is_insertion_order() {
        let f = Fields::new().with("z", 1i64).with("a", 2i64);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"z":1,"a":2}"#);
    }
}
