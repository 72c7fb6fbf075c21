//! Ordered key/value reports with a line-oriented text form and a JSON form.
//!
//! Text rules: a scalar prints as `key value`; a list of scalars prints on one
//! line as `key v1 v2 …` (an empty list prints `key -`); a list of lists
//! prints one `key …` line per inner list, so an empty table prints nothing.

use serde_json::{Map, Value};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        debug_assert!(self.get(key).is_none(), "duplicate key {key}");
        self.entries.push((key.to_string(), value.into()));
        self
    }

    /// A list rendered on one line.
    pub fn list<T: Into<Value>>(&mut self, key: &str, items: impl IntoIterator<Item = T>) -> &mut Self {
        let items: Vec<Value> = items.into_iter().map(Into::into).collect();
        self.put(key, Value::Array(items))
    }

    /// A table rendered as repeated `key` lines.
    pub fn rows<R, T>(&mut self, key: &str, rows: impl IntoIterator<Item = R>) -> &mut Self
    where
        R: IntoIterator<Item = T>,
        T: Into<Value>,
    {
        let rows: Vec<Value> = rows
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(Into::into).collect()))
            .collect();
        self.entries.push((key.to_string(), Value::Array(rows)));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.entries {
            match value {
                Value::Array(items) if items.first().is_some_and(Value::is_array) => {
                    for row in items {
                        push_line(&mut out, key, row);
                    }
                }
                Value::Array(items) if items.is_empty() && self.is_table(key) => {}
                _ => push_line(&mut out, key, value),
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let map: Map<String, Value> = self.entries.iter().cloned().collect();
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json()
        } else {
            self.to_text()
        }
    }

    // Empty tables and empty lists look alike in JSON; the key name decides.
    fn is_table(&self, key: &str) -> bool {
        TABLE_KEYS.contains(&key)
    }
}

/// Keys whose values are tables (repeated lines) rather than single lists.
pub const TABLE_KEYS: &[&str] = &["cycle", "row", "check", "unstructured", "great_pair", "part_degree"];

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.is_empty() => "-".to_string(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn push_line(out: &mut String, key: &str, v: &Value) {
    out.push_str(key);
    out.push(' ');
    out.push_str(&scalar(v));
    out.push('\n');
}
