//! Check records and the report envelope shared by every command.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

/// Identity a record checks, written with its conventional label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    Eq1,
    Eq2,
    Eq3,
    SpaceWp,
    Pqant1,
    Pqant2,
    Cup1,
    Cup2,
    LeftCap1,
    LeftCap2,
    RightCap1,
    RightCap2,
    Prop1D,
    Euler,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Eq1 => "eq-1",
            Label::Eq2 => "eq-2",
            Label::Eq3 => "eq-3",
            Label::SpaceWp => "spaceWp",
            Label::Pqant1 => "pqant1",
            Label::Pqant2 => "pqant2",
            Label::Cup1 => "cup1",
            Label::Cup2 => "cup2",
            Label::LeftCap1 => "leftcap1",
            Label::LeftCap2 => "leftcap2",
            Label::RightCap1 => "rightcap1",
            Label::RightCap2 => "rightcap2",
            Label::Prop1D => "prop1-d",
            Label::Euler => "euler",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Open-question output: recorded, never judged.
    Reported,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Reported => "reported",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub suite: String,
    pub name: String,
    pub label: Label,
    pub params: Map<String, Value>,
    pub status: Status,
    pub payload: Value,
}

impl Record {
    /// `params` must be a JSON object.
    pub fn new(suite: &str, name: &str, label: Label, params: Value, status: Status, payload: Value) -> Self {
        let params = match params {
            Value::Object(map) => map,
            other => panic!("record params must be an object, got {other}"),
        };
        Self { suite: suite.to_string(), name: name.to_string(), label, params, status, payload }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "name": self.name,
            "label": self.label.as_str(),
            "params": self.params,
            "status": self.status.as_str(),
            "payload": self.payload,
        })
    }

    /// `k=v` pairs in key order, for plain and CSV output.
    pub fn params_text(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect::<Vec<_>>().join(" ")
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, Default)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub reported: usize,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub records: Vec<Record>,
    pub tables: BTreeMap<String, Value>,
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Self {
        Self { command: command.to_string(), config, records: Vec::new(), tables: BTreeMap::new(), timing_ms: None }
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = Record>) {
        self.records.extend(records);
    }

    /// Stable sort by suite; within a suite the generation order is kept.
    pub fn canonicalize(&mut self) {
        self.records.sort_by(|a, b| a.suite.cmp(&b.suite));
    }

    pub fn counts(&self) -> Counts {
        let mut c = Counts::default();
        for r in &self.records {
            match r.status {
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::Reported => c.reported += 1,
            }
        }
        c
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        let c = self.counts();
        let mut v = json!({
            "command": self.command,
            "config": self.config,
            "records": self.records.iter().map(Record::to_json).collect::<Vec<_>>(),
            "summary": {"pass": c.pass, "fail": c.fail, "reported": c.reported},
            "version": env!("CARGO_PKG_VERSION"),
        });
        if !self.tables.is_empty() {
            v["tables"] = json!(self.tables);
        }
        if let Some(ms) = self.timing_ms {
            v["timing_ms"] = json!(ms);
        }
        v
    }

    /// Header and rows: one row per record, payload as compact JSON.
    pub fn csv_rows(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let header = ["suite", "name", "label", "status", "params", "payload"].map(String::from).to_vec();
        let rows = self
            .records
            .iter()
            .map(|r| {
                vec![
                    r.suite.clone(),
                    r.name.clone(),
                    r.label.to_string(),
                    r.status.as_str().to_string(),
                    r.params_text(),
                    r.payload.to_string(),
                ]
            })
            .collect();
        (header, rows)
    }

    pub fn to_plain(&self) -> String {
        let mut out = format!("{} {}\n", self.command, compact_config(&self.config));
        for (name, table) in &self.tables {
            out.push_str(&format!("{name}: {table}\n"));
        }
        for r in &self.records {
            out.push_str(&format!(
                "{:<8} {:<10} {:<10} {:<28} {}\n",
                r.status.as_str(),
                r.suite,
                r.label.as_str(),
                r.name,
                r.params_text()
            ));
        }
        let c = self.counts();
        out.push_str(&format!("summary: {} pass, {} fail, {} reported\n", c.pass, c.fail, c.reported));
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("timing: {ms} ms\n"));
        }
        out
    }
}

fn compact_config(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
