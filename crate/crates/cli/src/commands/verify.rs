//! `verify`: run the battery and serialize the report.

use serde::Serialize;

use radialgeo_core::verify::{all_pass, run_battery, CheckEntry};

use crate::CliResult;

#[derive(Serialize)]
struct Report {
    version: &'static str,
    seed: u64,
    timestamp: String,
    total: usize,
    passed: usize,
    failed: usize,
    pass: bool,
    entries: Vec<CheckEntry>,
}

/// RFC 3339 UTC timestamp; honors `SOURCE_DATE_EPOCH` for reproducible
/// outputs.
fn timestamp() -> String {
    let now = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse::<i64>().ok())
        .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0))
        .unwrap_or_else(chrono::Utc::now);
    now.format("%Y-%m-%dT%H:%M:%SZ").to_string()
}

pub fn run(seed: u64) -> CliResult<(String, bool)> {
    let entries = run_battery(seed);
    let pass = all_pass(&entries);
    let passed = entries.iter().filter(|e| e.pass).count();
    let report = Report {
        version: env!("CARGO_PKG_VERSION"),
        seed,
        timestamp: timestamp(),
        total: entries.len(),
        passed,
        failed: entries.len() - passed,
        pass,
        entries,
    };
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    Ok((json, pass))
}
