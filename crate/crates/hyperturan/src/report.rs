use std::collections::BTreeMap;
use std::fmt::Display;

use hyperturan_core::Witness;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Everything a run prints. Only `elapsed_ms` varies between runs with the same arguments.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: &'static str,
    pub command: String,
    pub seed: u64,
    pub parameters: BTreeMap<String, Value>,
    pub metrics: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<Value>>,
    pub elapsed_ms: f64,
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            seed,
            parameters: BTreeMap::new(),
            metrics: BTreeMap::new(),
            witnesses: None,
            elapsed_ms: 0.0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(key.into(), json!(value));
        self
    }

    pub fn metric(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.metrics.insert(key.into(), json!(value));
        self
    }

    /// Exact integer stored as a decimal string.
    pub fn count(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.metrics.insert(key.into(), Value::String(value.to_string()));
        self
    }

    pub fn witness(&mut self, w: Value) -> &mut Self {
        self.witnesses.get_or_insert_with(Vec::new).push(w);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are always serializable");
        s.push('\n');
        s
    }

    /// `section,key,value` rows; structured values are embedded as JSON.
    pub fn to_csv(&self) -> String {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut row = |a: &str, b: &str, c: String| w.write_record([a, b, c.as_str()]).expect("writing to memory");
        row("section", "key", "value".into());
        row("run", "schema_version", self.schema_version.into());
        row("run", "command", self.command.clone());
        row("run", "seed", self.seed.to_string());
        for (k, v) in &self.parameters {
            row("parameters", k, cell(v));
        }
        for (k, v) in &self.metrics {
            row("metrics", k, cell(v));
        }
        for (i, v) in self.witnesses.iter().flatten().enumerate() {
            row("witnesses", &i.to_string(), v.to_string());
        }
        row("run", "elapsed_ms", self.elapsed_ms.to_string());
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is UTF-8")
    }
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Bipartite(b) => json!({
            "kind": "bipartite",
            "tuples": b.tuples,
            "apexes": b.apexes,
            "edges": w.edges(),
        }),
        Witness::Multipartite(m) => json!({
            "kind": "multipartite",
            "classes": m.classes,
            "edges": w.edges(),
        }),
        Witness::Embedding { map, edges } => json!({
            "kind": "embedding",
            "map": map,
            "edges": edges,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_survive_reparse() {
        let big: u128 = 1_713_327_279_632_829_000_000_000_000;
        let mut r = RunReport::new("x", 1);
        r.count("edges", big);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["metrics"]["edges"].as_str().unwrap().parse::<u128>().unwrap(), big);
    }

    #[test]
    fn csv_quotes_structured_values() {
        let mut r = RunReport::new("sidon", 0);
        r.metric("sumset_sizes", [4, 4, 4]);
        let csv = r.to_csv();
        assert!(csv.contains("metrics,sumset_sizes,\"[4,4,4]\""), "{csv}");
        assert!(csv.starts_with("section,key,value\n"));
    }
}
