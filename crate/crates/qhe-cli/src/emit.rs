//! Serialization of run, sweep, and comparison results.
//!
//! CSV numbers carry 12 significant digits so emitted tables round-trip
//! exactly at that precision; JSON numbers use the full float value. The
//! only non-deterministic output field is the ISO-8601 `generated_at`
//! stamp on JSON documents.

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use qhe_core::engines::{CycleMetrics, EngineKind, EngineParams};
use qhe_core::optimize::{CompareReport, SweepRow};
use serde_json::{json, Value};

pub const SWEEP_HEADER: &str =
    "t_u,w_m,pcg,eta,a_star,th_star,tc_star,lambda_star,omega_sb_star,t2_star,q_total";

/// 12-significant-digit scientific form used for every CSV number.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn row_values(row: &SweepRow) -> [f64; 11] {
    [
        row.t_u,
        row.w_m,
        row.pcg,
        row.eta,
        row.a_star,
        row.th_star,
        row.tc_star,
        row.lambda_star,
        row.omega_sb_star,
        row.t2_star,
        row.q_total,
    ]
}

fn push_csv_row(out: &mut String, prefix: Option<&str>, values: &[f64]) {
    let mut first = true;
    if let Some(p) = prefix {
        out.push_str(p);
        first = false;
    }
    for v in values {
        if !first {
            out.push(',');
        }
        out.push_str(&sig12(*v));
        first = false;
    }
    out.push('\n');
}

/// One sweep table as CSV; `extra` appends named η columns per row.
pub fn sweep_csv(rows: &[SweepRow], extra: &[(String, Vec<f64>)]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    for (name, _) in extra {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (i, row) in rows.iter().enumerate() {
        let mut values = row_values(row).to_vec();
        for (_, column) in extra {
            values.push(column[i]);
        }
        push_csv_row(&mut out, None, &values);
    }
    out
}

/// All comparison tables in one long CSV (leading `engine` column), followed
/// by a `#`-prefixed ordering summary block.
pub fn compare_csv(report: &CompareReport) -> String {
    let mut out = String::from("engine,");
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for (kind, rows) in &report.tables {
        for row in rows {
            push_csv_row(&mut out, Some(kind.as_str()), &row_values(row));
        }
    }
    let kinds: Vec<EngineKind> = report.tables.iter().map(|(kind, _)| *kind).collect();
    out.push_str(&engines_line(&kinds));
    for failure in &report.failures {
        out.push_str("# FAIL: ");
        out.push_str(failure);
        out.push('\n');
    }
    if report.failures.is_empty() {
        out.push_str("# ordering: all expectations hold on the grid\n");
    } else {
        out.push_str(&format!(
            "# ordering: {} expectation(s) violated\n",
            report.failures.len()
        ));
    }
    out
}

fn row_json(row: &SweepRow) -> Value {
    json!({
        "t_u": row.t_u,
        "w_m": row.w_m,
        "pcg": row.pcg,
        "eta": row.eta,
        "a_star": row.a_star,
        "th_star": row.th_star,
        "tc_star": row.tc_star,
        "lambda_star": row.lambda_star,
        "omega_sb_star": row.omega_sb_star,
        "t2_star": row.t2_star,
        "q_total": row.q_total,
    })
}

/// The comparison report as one JSON document.
pub fn compare_json(report: &CompareReport) -> String {
    let tables: serde_json::Map<String, Value> = report
        .tables
        .iter()
        .map(|(kind, rows)| {
            (
                kind.as_str().to_string(),
                Value::Array(rows.iter().map(row_json).collect()),
            )
        })
        .collect();
    let doc = json!({
        "tu_grid": report.tu_grid,
        "tables": tables,
        "failures": report.failures,
        "generated_at": iso8601_now(),
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("static document serializes");
    text.push('\n');
    text
}

/// One engine run as the documented JSON schema.
pub fn run_json(params: &EngineParams, metrics: &CycleMetrics) -> String {
    let doc = json!({
        "engine": params.kind.as_str(),
        "params": {
            "a": params.a,
            "t_h": params.t_h,
            "t_c": params.t_c,
            "lambda": params.lambda,
            "omega_sb": params.omega_sb,
            "t2": params.t2,
            "kappa": params.kappa,
            "n_cycles": params.n_cycles,
            "steady_tol": params.steady_tol,
        },
        "metrics": metrics_json(metrics),
        "generated_at": iso8601_now(),
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("static document serializes");
    text.push('\n');
    text
}

fn metrics_json(m: &CycleMetrics) -> Value {
    json!({
        "q_hot": m.q_hot,
        "q_cold_stroke": m.q_cold_stroke,
        "q_total": m.q_total,
        "w_battery": m.w_battery,
        "pcg": m.pcg,
        "eta": m.eta,
        "closure": m.closure,
    })
}

/// One engine run as a single-row CSV with the metric columns.
pub fn run_csv(metrics: &CycleMetrics) -> String {
    let mut out = String::from("q_hot,q_cold_stroke,q_total,w_battery,pcg,eta,closure\n");
    push_csv_row(
        &mut out,
        None,
        &[
            metrics.q_hot,
            metrics.q_cold_stroke,
            metrics.q_total,
            metrics.w_battery,
            metrics.pcg,
            metrics.eta,
            metrics.closure,
        ],
    );
    out
}

/// Names the extra η column for one requested cold temperature.
pub fn eta_column_name(t_c: f64) -> String {
    format!("eta_tc_{t_c}")
}

/// Which engines a comparison covers, as a `#` comment line.
fn engines_line(kinds: &[EngineKind]) -> String {
    let names: Vec<&str> = kinds.iter().map(|k| k.as_str()).collect();
    format!("# engines: {}\n", names.join(","))
}

pub fn write_output(out: Option<&Path>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn iso8601_now() -> String {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs() as i64)
        .unwrap_or(0);
    iso8601_from_unix(secs)
}

/// Unix seconds to `YYYY-MM-DDThh:mm:ssZ` (proleptic Gregorian).
fn iso8601_from_unix(secs: i64) -> String {
    let days = secs.div_euclid(86400);
    let sod = secs.rem_euclid(86400);
    let (y, m, d) = civil_from_days(days);
    format!(
        "{y:04}-{m:02}-{d:02}T{:02}:{:02}:{:02}Z",
        sod / 3600,
        (sod % 3600) / 60,
        sod % 60
    )
}

/// Days since 1970-01-01 to a civil date, via 400-year eras.
fn civil_from_days(z: i64) -> (i64, u32, u32) {
    let z = z + 719468;
    let era = z.div_euclid(146097);
    let doe = z.rem_euclid(146097);
    let yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    let y = yoe + era * 400;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let d = (doy - (153 * mp + 2) / 5 + 1) as u32;
    let m = if mp < 10 { mp + 3 } else { mp - 9 } as u32;
    (if m <= 2 { y + 1 } else { y }, m, d)
}
