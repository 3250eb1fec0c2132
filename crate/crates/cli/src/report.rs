//! Reports: a versioned header, the echoed configuration, pass/fail checks,
//! command data, and rendering as JSON, CSV or text.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};

/// Bumped whenever the JSON layout changes incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

impl Check {
    pub fn new(id: &str, description: &str, ok: bool) -> Self {
        Check { id: id.into(), description: description.into(), status: Status::from_bool(ok), detail: None, certificate: None }
    }

    pub fn skip(id: &str, description: &str, why: impl Into<String>) -> Self {
        Check { id: id.into(), description: description.into(), status: Status::Skip, detail: Some(why.into()), certificate: None }
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn certificate(mut self, c: impl Serialize) -> Self {
        self.certificate = Some(serde_json::to_value(c).expect("certificate serializes"));
        self
    }
}

/// Rows for CSV and text output.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub ok: bool,
    pub checks: Vec<Check>,
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
    #[serde(skip)]
    pub table: Option<Table>,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            config: config.clone(),
            ok: true,
            checks: Vec::new(),
            data: Value::Null,
            wall_time_ms: None,
            table: None,
        }
    }

    pub fn check(&mut self, c: Check) {
        if c.status == Status::Fail {
            self.ok = false;
        }
        self.checks.push(c);
    }

    pub fn data(&mut self, v: impl Serialize) {
        self.data = serde_json::to_value(v).expect("report data serializes");
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(t) => {
                w.write_record(&t.headers).expect("in-memory csv");
                for r in &t.rows {
                    w.write_record(r).expect("in-memory csv");
                }
            }
            None => {
                w.write_record(["id", "status", "description", "detail"]).expect("in-memory csv");
                for c in &self.checks {
                    w.write_record([&c.id, c.status.label(), &c.description, c.detail.as_deref().unwrap_or("")])
                        .expect("in-memory csv");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
    }

    fn render_text(&self) -> String {
        let mut out = Vec::new();
        if let Some(t) = &self.table {
            let widths: Vec<usize> = (0..t.headers.len())
                .map(|i| t.rows.iter().map(|r| r[i].len()).chain([t.headers[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| -> String {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(&t.headers)).unwrap();
            for r in &t.rows {
                writeln!(out, "{}", line(r)).unwrap();
            }
        }
        for c in &self.checks {
            match &c.detail {
                Some(d) => writeln!(out, "{} {}: {} ({d})", c.status.label(), c.id, c.description).unwrap(),
                None => writeln!(out, "{} {}: {}", c.status.label(), c.id, c.description).unwrap(),
            }
        }
        if !self.checks.is_empty() {
            let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
            writeln!(out, "{} checks, {} failed", self.checks.len(), failed).unwrap();
        }
        String::from_utf8(out).expect("utf8 text")
    }
}
