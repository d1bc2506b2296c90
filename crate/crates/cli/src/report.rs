//! Verification records and deterministic JSON/CSV output with 17
//! significant digits per number.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use ttdeform::numkit::Precision;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    /// residual < threshold
    Below,
    /// residual <= threshold
    AtMost,
    /// residual > threshold
    Above,
}

impl Comparison {
    pub fn holds(self, residual: f64, threshold: f64) -> bool {
        match self {
            Comparison::Below => residual < threshold,
            Comparison::AtMost => residual <= threshold,
            Comparison::Above => residual > threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub identity: String,
    pub anchor: String,
    pub inputs: BTreeMap<String, Value>,
    pub residual: f64,
    pub threshold: f64,
    pub comparison: Comparison,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn new(identity: &str, anchor: &str) -> RecordBuilder {
        RecordBuilder { identity: identity.into(), anchor: anchor.into(), inputs: BTreeMap::new() }
    }
}

/// Collects inputs, then closes the record with a residual or an error.
#[derive(Debug, Clone)]
pub struct RecordBuilder {
    identity: String,
    anchor: String,
    inputs: BTreeMap<String, Value>,
}

impl RecordBuilder {
    pub fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(key.into(), v.into());
        self
    }

    pub fn complex(self, key: &str, z: Complex64) -> Self {
        self.input(key, vec![z.re, z.im])
    }

    pub fn check(self, residual: f64, threshold: f64, comparison: Comparison) -> CheckRecord {
        CheckRecord {
            identity: self.identity,
            anchor: self.anchor,
            inputs: self.inputs,
            residual,
            threshold,
            comparison,
            pass: residual.is_finite() && comparison.holds(residual, threshold),
            note: None,
        }
    }

    pub fn below(self, residual: f64, threshold: f64) -> CheckRecord {
        self.check(residual, threshold, Comparison::Below)
    }

    /// An evaluator error counts as a failed check.
    pub fn failed(self, threshold: f64, comparison: Comparison, err: impl std::fmt::Display) -> CheckRecord {
        let mut r = self.check(f64::NAN, threshold, comparison);
        r.pass = false;
        r.note = Some(format!("error: {err}"));
        r
    }

    pub fn result<E: std::fmt::Display>(
        self,
        residual: Result<f64, E>,
        threshold: f64,
        comparison: Comparison,
    ) -> CheckRecord {
        match residual {
            Ok(r) => self.check(r, threshold, comparison),
            Err(e) => self.failed(threshold, comparison, e),
        }
    }
}

impl CheckRecord {
    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Environment {
    pub precision: Precision,
    pub version: String,
}

impl Environment {
    pub fn new(precision: Precision) -> Self {
        Self { precision, version: env!("CARGO_PKG_VERSION").into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub pass: bool,
    pub checks: usize,
    pub failed: usize,
    pub records: Vec<CheckRecord>,
    pub environment: Environment,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl VerificationReport {
    pub fn new(suite: &str, records: Vec<CheckRecord>, environment: Environment) -> Self {
        let failed = records.iter().filter(|r| !r.pass).count();
        Self {
            suite: suite.into(),
            pass: failed == 0 && !records.is_empty(),
            checks: records.len(),
            failed,
            records,
            environment,
            wall_time_s: None,
        }
    }
}

/// `{:.16e}`: 17 significant digits, valid as a JSON number.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // JSON has no NaN/inf; CSV readers accept these spellings
        format!("{x}")
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize, out: &mut String| out.extend(std::iter::repeat(' ').take(n));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().unwrap_or(f64::NAN);
                out.push_str(&fmt17(x));
            } else {
                let _ = write!(out, "{n}");
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("strings serialize")),
        Value::Array(items) => {
            if items.iter().all(|x| !x.is_array() && !x.is_object()) {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(x, indent, out);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(indent + 2, out);
                write_value(x, indent + 2, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(indent, out);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(indent + 2, out);
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_value(x, indent + 2, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(indent, out);
            out.push('}');
        }
    }
}

/// Single-line form for CSV cells: `key=value` pairs joined by `;`.
fn compact(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, x)| format!("{k}={}", compact(x))).collect::<Vec<_>>().join(";"),
        Value::Array(items) => format!("[{}]", items.iter().map(compact).collect::<Vec<_>>().join(" ")),
        other => cell(other),
    }
}

/// Pretty JSON in which every float carries 17 significant digits.
/// Non-finite floats become null.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

/// CSV with a header row; cells are already formatted strings.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 cells")
}

/// Flattens report records into CSV rows.
pub fn report_csv(report: &VerificationReport) -> String {
    let header = ["suite", "identity", "anchor", "inputs", "residual", "threshold", "comparison", "pass", "note"];
    let rows: Vec<Vec<String>> = report
        .records
        .iter()
        .map(|r| {
            let inputs = serde_json::to_value(&r.inputs).expect("inputs serialize");
            vec![
                report.suite.clone(),
                r.identity.clone(),
                r.anchor.clone(),
                compact(&inputs),
                fmt17(r.residual),
                fmt17(r.threshold),
                serde_json::to_value(r.comparison).expect("enum serializes").as_str().unwrap_or("").into(),
                r.pass.to_string(),
                r.note.clone().unwrap_or_default(),
            ]
        })
        .collect();
    to_csv(&header, &rows)
}

/// Rows of an `eval`, `mellin` or `scan` run.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(command: &str, columns: &[&'static str]) -> Self {
        Self { command: command.into(), columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect()))
            .collect();
        to_json(&serde_json::json!({ "command": self.command, "rows": rows }))
    }

    pub fn to_csv(&self) -> String {
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
        to_csv(&self.columns, &rows)
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => fmt17(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        other => compact(other),
    }
}

/// A float cell; non-finite values become null.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt17(-2.5), "-2.5000000000000000e0");
        let back: f64 = fmt17(std::f64::consts::PI).parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }

    #[test]
    fn json_is_valid_and_stable() {
        let r = CheckRecord::new("x", "y").input("alpha", 0.05).input("n", 3).below(1e-12, 1e-9);
        let rep = VerificationReport::new("demo", vec![r], Environment::new(Precision::Binary64));
        let a = to_json(&rep);
        assert_eq!(a, to_json(&rep));
        let parsed: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed["pass"], Value::Bool(true));
        assert!(a.contains("\"alpha\": 5.0000000000000003e-2"));
        assert!(a.contains("\"n\": 3"));
    }

    #[test]
    fn errors_fail_records() {
        let r = CheckRecord::new("x", "y").result::<String>(Err("boom".into()), 1.0, Comparison::Below);
        assert!(!r.pass);
        assert!(to_json(&r).contains("\"residual\": null"));
        let above = CheckRecord::new("t", "y").check(0.2, 1e-3, Comparison::Above);
        assert!(above.pass);
    }

    #[test]
    fn table_formats() {
        let mut t = Table::new("eval", &["alpha", "status"]);
        t.push(vec![num(0.5), Value::from("ok")]);
        t.push(vec![num(f64::NAN), Value::from("outside-window")]);
        assert_eq!(t.to_csv(), "alpha,status\n5.0000000000000000e-1,ok\n,outside-window\n");
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["rows"][1]["alpha"], Value::Null);
    }
}
