//! CSV and JSON rendering.

use std::fmt::Write;

use serde_json::Value;

use crate::error::CliError;
use crate::eval::{Outcome, Payload, Status, Table};

pub const DEFAULT_PRECISION: usize = 6;

/// `x` rounded to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.max(1) - 1, x).parse().unwrap_or(x)
}

fn cell(x: Option<f64>, digits: usize) -> String {
    match x {
        Some(v) if v.is_finite() => format!("{}", round_sig(v, digits) + 0.0),
        Some(v) => format!("{v}"),
        None => String::new(),
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn table_csv(t: &Table, digits: usize) -> String {
    let mut out = String::new();
    out.push_str(&t.columns.iter().map(|c| quote(c)).collect::<Vec<_>>().join(","));
    out.push('\n');
    for row in &t.rows {
        out.push_str(&row.iter().map(|x| cell(*x, digits)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn pairs_csv(rows: &[(String, String)]) -> String {
    let mut out = String::from("field,value\n");
    for (k, v) in rows {
        let _ = writeln!(out, "{},{}", quote(k), quote(v));
    }
    out
}

pub fn outcome_csv(o: &Outcome, digits: usize) -> String {
    let num = |x: f64| cell(Some(x), digits);
    match (&o.status, &o.result) {
        (Status::NotApplicable, _) | (_, None) => {
            pairs_csv(&[("status".into(), "not_applicable".into()), ("reason".into(), o.reason.clone().unwrap_or_default())])
        }
        (Status::Ok, Some(p)) => match p {
            Payload::Regime(r) => pairs_csv(&[
                ("label".into(), format!("{:?}", r.label)),
                ("excess_rate".into(), num(r.excess_rate)),
                ("strong_at_d2".into(), r.strong_at_d2.to_string()),
                ("no_if_needed_strong".into(), r.no_if_needed_strong.to_string()),
                ("no_if_needed_mixed".into(), r.no_if_needed_mixed.to_string()),
            ]),
            Payload::Region { vertices, .. } => {
                let t = Table { columns: vec!["R1".into(), "R2".into()], rows: vertices.iter().map(|v| vec![Some(v[0]), Some(v[1])]).collect() };
                table_csv(&t, digits)
            }
            Payload::Value { scheme, value, details, flags } => {
                let mut rows = vec![("scheme".to_string(), scheme.clone()), ("value".to_string(), num(*value))];
                rows.extend(details.iter().map(|(k, v)| (k.clone(), num(*v))));
                rows.extend(flags.iter().map(|f| ("flag".to_string(), f.clone())));
                pairs_csv(&rows)
            }
            Payload::Table(t) => table_csv(t, digits),
        },
    }
}

fn round_all(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                if n.is_f64() {
                    *v = serde_json::json!(round_sig(x, digits) + 0.0);
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(|x| round_all(x, digits)),
        Value::Object(m) => m.values_mut().for_each(|x| round_all(x, digits)),
        _ => {}
    }
}

/// JSON with result numbers rounded; the echoed configuration is kept exact.
pub fn outcome_json(o: &Outcome, digits: usize) -> Result<String, CliError> {
    let mut v = serde_json::to_value(o).map_err(|e| CliError::Numeric(e.to_string()))?;
    if let Some(r) = v.get_mut("result") {
        round_all(r, digits);
    }
    serde_json::to_string_pretty(&v).map(|s| s + "\n").map_err(|e| CliError::Numeric(e.to_string()))
}

pub fn table_json(t: &Table, digits: usize) -> Result<String, CliError> {
    let mut v = serde_json::to_value(t).map_err(|e| CliError::Numeric(e.to_string()))?;
    round_all(&mut v, digits);
    serde_json::to_string_pretty(&v).map(|s| s + "\n").map_err(|e| CliError::Numeric(e.to_string()))
}
