//! The JSON report written by every verification command.

use std::collections::BTreeMap;

use regver_core::report::Status;
use regver_core::Report;
use serde_json::{json, Value};

use crate::jobs::Timed;

pub const SCHEMA_VERSION: u32 = 1;

/// `suite[key=value,…]`, the sort key of a report.
pub fn suite_key(r: &Report) -> String {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{}[{}]", r.suite, params.join(","))
}

/// Reports sorted by suite key; all wall-clock data live under `timing_ms`,
/// so two runs differ only in that field.
pub fn verification_report(command: &str, results: &[Timed]) -> Value {
    let mut sorted: Vec<&Timed> = results.iter().collect();
    sorted.sort_by_key(|t| suite_key(&t.report));
    let passed = sorted.iter().all(|t| t.report.passed());
    let timing: BTreeMap<String, u64> =
        sorted.iter().map(|t| (suite_key(&t.report), t.millis)).collect();
    let checks: u64 = sorted.iter().map(|t| t.report.checks).sum();
    let failures: u64 = sorted.iter().map(|t| t.report.failures).sum();
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool": "regver",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "status": if passed { Status::Pass } else { Status::Fail },
        "checks": checks,
        "failures": failures,
        "suites": sorted.iter().map(|t| {
            let mut v = serde_json::to_value(&t.report).expect("serializable");
            v["key"] = json!(suite_key(&t.report));
            v
        }).collect::<Vec<_>>(),
        "timing_ms": timing,
    })
}

/// One human-readable line per suite, derived from the JSON report.
pub fn summary_lines(report: &Value) -> Vec<String> {
    let suites = report["suites"].as_array().cloned().unwrap_or_default();
    let mut lines: Vec<String> = suites
        .iter()
        .map(|s| {
            let key = s["key"].as_str().unwrap_or("?");
            let status = s["status"].as_str().unwrap_or("?").to_uppercase();
            let ms = report["timing_ms"][key].as_u64().unwrap_or(0);
            format!("{status:4} {key} ({} checks, {ms} ms)", s["checks"])
        })
        .collect();
    lines.push(format!(
        "{}: {} checks, {} failures",
        report["status"].as_str().unwrap_or("?"),
        report["checks"],
        report["failures"]
    ));
    lines
}
