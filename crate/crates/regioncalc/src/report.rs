//! Key/value reports rendered as text lines or JSON.

use num_bigint::BigUint;
use regioncalc_core::{BitRow, Gf2Matrix};
use serde_json::{json, Map, Value as Json};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Big(BigUint),
    Bool(bool),
    Text(String),
    Ints(Vec<i64>),
    Matrix(Gf2Matrix),
}

impl From<i64> for Value {
    fn from(x: i64) -> Self {
        Value::Int(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl From<BigUint> for Value {
    fn from(x: BigUint) -> Self {
        Value::Big(x)
    }
}

impl From<Gf2Matrix> for Value {
    fn from(x: Gf2Matrix) -> Self {
        Value::Matrix(x)
    }
}

impl From<Vec<i64>> for Value {
    fn from(x: Vec<i64>) -> Self {
        Value::Ints(x)
    }
}

pub fn bits(row: &BitRow) -> String {
    row.to_bools().iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Entries keep insertion order in text output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.into(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// `key=value` lines; a matrix becomes `key:` followed by its text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            match v {
                Value::Int(x) => out.push_str(&format!("{k}={x}\n")),
                Value::Big(x) => out.push_str(&format!("{k}={x}\n")),
                Value::Bool(x) => out.push_str(&format!("{k}={x}\n")),
                Value::Text(x) => out.push_str(&format!("{k}={x}\n")),
                Value::Ints(xs) => {
                    let s: Vec<String> = xs.iter().map(i64::to_string).collect();
                    out.push_str(&format!("{k}={}\n", s.join(",")));
                }
                Value::Matrix(m) => out.push_str(&format!("{k}:\n{m}")),
            }
        }
        out
    }

    pub fn to_json(&self) -> Json {
        let mut map = Map::new();
        for (k, v) in &self.entries {
            let j = match v {
                Value::Int(x) => json!(x),
                Value::Big(x) => json!(x.to_string()),
                Value::Bool(x) => json!(x),
                Value::Text(x) => json!(x),
                Value::Ints(xs) => json!(xs),
                Value::Matrix(m) => {
                    Json::Array(m.row_iter().map(|r| Json::String(bits(&r))).collect())
                }
            };
            map.insert(k.clone(), j);
        }
        Json::Object(map)
    }
}
