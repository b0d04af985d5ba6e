//! Report assembly. One command produces one `CommandReport`, rendered
//! either as stable line-oriented text or as a single JSON document with the
//! fields `{command, inputs, verdict, witnesses, tables}`. Identical inputs
//! and flags produce byte-identical output.

use serde::Serialize;
use std::collections::BTreeMap;

use trusskit_core::{ValidationReport, Violation};

/// Exit classification: 0 success / property holds, 1 property violated,
/// 2 input error, 3 resource limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Violated,
    InputError,
    ResourceLimit,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Violated => 1,
            Verdict::InputError => 2,
            Verdict::ResourceLimit => 3,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Violated => "violated",
            Verdict::InputError => "input-error",
            Verdict::ResourceLimit => "resource-limit",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CommandReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
    /// named multi-line payloads (tables, partition lists, maps)
    pub tables: Vec<(String, Vec<String>)>,
    /// free-form single facts, rendered as `key: value`
    pub facts: Vec<(String, String)>,
}

impl CommandReport {
    pub fn new(command: &str) -> Self {
        CommandReport {
            command: command.to_string(),
            inputs: Vec::new(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            tables: Vec::new(),
            facts: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.push((key.to_string(), value.to_string()));
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.push((key.to_string(), value.to_string()));
    }

    pub fn table(&mut self, name: &str, rows: Vec<String>) {
        self.tables.push((name.to_string(), rows));
    }

    /// Record a validation report: one `law=... witness=(...)` line per
    /// violation, and a `<kind> ✓/✗` fact.
    pub fn validation(&mut self, report: &ValidationReport) {
        self.fact(report.kind, if report.passed { "✓" } else { "✗" });
        for violation in &report.violations {
            self.witness(violation);
        }
        if !report.passed {
            self.verdict = Verdict::Violated;
        }
    }

    pub fn witness(&mut self, violation: &Violation) {
        let cells: Vec<String> = violation.witness.iter().map(|v| v.to_string()).collect();
        self.witnesses
            .push(format!("law={} witness=({})", violation.law, cells.join(",")));
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (key, value) in &self.inputs {
            out.push_str(&format!("{key}: {value}\n"));
        }
        for (key, value) in &self.facts {
            out.push_str(&format!("{key}: {value}\n"));
        }
        for line in &self.witnesses {
            out.push_str(line);
            out.push('\n');
        }
        for (name, rows) in &self.tables {
            out.push_str(&format!("{name}:\n"));
            for row in rows {
                out.push_str("  ");
                out.push_str(row);
                out.push('\n');
            }
        }
        out.push_str(&format!("verdict: {}\n", self.verdict.as_str()));
        out
    }

    pub fn render_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            command: &'a str,
            inputs: BTreeMap<&'a str, &'a str>,
            verdict: &'a str,
            witnesses: &'a [String],
            tables: BTreeMap<&'a str, serde_json::Value>,
        }
        let mut tables: BTreeMap<&str, serde_json::Value> = BTreeMap::new();
        for (key, value) in &self.facts {
            tables.insert(key, serde_json::Value::String(value.clone()));
        }
        for (name, rows) in &self.tables {
            tables.insert(
                name,
                serde_json::Value::Array(
                    rows.iter()
                        .map(|r| serde_json::Value::String(r.clone()))
                        .collect(),
                ),
            );
        }
        let doc = Doc {
            command: &self.command,
            inputs: self
                .inputs
                .iter()
                .map(|(k, v)| (k.as_str(), v.as_str()))
                .collect(),
            verdict: self.verdict.as_str(),
            witnesses: &self.witnesses,
            tables,
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
        text.push('\n');
        text
    }
}
