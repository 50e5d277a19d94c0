//! Machine-readable command reports. The canonical JSON form is byte-stable
//! for fixed inputs and configuration; wall-clock timing is kept out of it.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub verdicts: Vec<Verdict>,
    pub witnesses: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), inputs: BTreeMap::new(), verdicts: Vec::new(), witnesses: Vec::new() }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn verdict(&mut self, name: &str, pass: bool, detail: impl ToString) -> &mut Self {
        self.verdicts.push(Verdict { name: name.to_string(), pass, detail: detail.to_string() });
        self
    }

    pub fn witness(&mut self, w: impl ToString) -> &mut Self {
        self.witnesses.push(w.to_string());
        self
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\n", self.command));
        for (k, v) in &self.inputs {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for v in &self.verdicts {
            out.push_str(&format!("  [{}] {}: {}\n", if v.pass { "ok" } else { "FAIL" }, v.name, v.detail));
        }
        for w in &self.witnesses {
            out.push_str(&format!("  witness: {w}\n"));
        }
        out
    }
}
