//! Output documents shared by the text and JSON renderers.
//!
//! JSON documents always carry the keys `kind`, `inputs` and `digits`, then
//! whichever of `zeros`, `terms` and `report` apply, then `residual` when one
//! was measured. All real numbers are strings in fixed-point notation with
//! exactly `digits` places, rounded half to even.

use serde::Serialize;
use serde_json::{Map, Value};

use cubicfields::HighReal;

#[derive(Debug, Clone, Serialize)]
pub struct Document {
    pub kind: String,
    pub inputs: Map<String, Value>,
    pub digits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeros: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Map<String, Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl Document {
    pub fn new(kind: &str, digits: u32) -> Self {
        Document {
            kind: kind.to_string(),
            inputs: Map::new(),
            digits,
            zeros: None,
            terms: None,
            report: None,
            residual: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), Value::String(value.to_string()));
        self
    }

    pub fn report_entry(&mut self, key: &str, value: impl Into<Value>) {
        self.report.get_or_insert_with(Map::new).insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents serialize");
        text.push('\n');
        text
    }
}

pub fn fixed(x: &HighReal, digits: u32) -> String {
    x.to_fixed_string(digits)
}

pub fn fixed_all<'a>(xs: impl IntoIterator<Item = &'a HighReal>, digits: u32) -> Vec<String> {
    xs.into_iter().map(|x| fixed(x, digits)).collect()
}

pub fn strings(xs: impl IntoIterator<Item = impl ToString>) -> Value {
    Value::Array(xs.into_iter().map(|x| Value::String(x.to_string())).collect())
}
