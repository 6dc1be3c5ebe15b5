use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use tripletorb_core::characters::{lowest_weight_table, m2_table, table_record};
use tripletorb_core::zhu::ZhuTable;
use tripletorb_core::{frac_string, RatPoly};

use crate::report::Report;
use crate::{CliError, Emit};

fn join_map(m: &std::collections::BTreeMap<String, String>) -> String {
    m.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn render_report(report: &Report, emit: Emit) -> Result<String, CliError> {
    match emit {
        Emit::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "suite", "check", "status", "params", "values", "wall_ms", "anchor",
            ])?;
            for c in &report.checks {
                w.write_record([
                    c.suite.as_str(),
                    c.name.as_str(),
                    c.status.as_str(),
                    &join_map(&c.params),
                    &join_map(&c.values),
                    &c.wall_ms.to_string(),
                    c.anchor.as_str(),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            Ok(String::from_utf8_lossy(&bytes).into_owned())
        }
        Emit::Human => {
            let mut s = String::new();
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "{:<15} {:<24} {} {}",
                    c.status.as_str(),
                    c.name,
                    join_map(&c.params),
                    join_map(&c.values)
                );
            }
            for o in &report.observations {
                let _ = writeln!(s, "observed        {:<24} {}", o.name, o.detail);
            }
            for k in &report.skipped {
                let _ = writeln!(s, "skipped         {k}");
            }
            let _ = writeln!(s, "overall: {}", report.overall.as_str());
            Ok(s)
        }
    }
}

/// Writes to `out`, or stdout when absent.
pub fn write_text(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Weights,
    M2,
    Zhu,
}

impl std::str::FromStr for TableKind {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "weights" => Ok(TableKind::Weights),
            "m2" => Ok(TableKind::M2),
            "zhu" => Ok(TableKind::Zhu),
            _ => Err(CliError::Usage(format!("unknown table {s}"))),
        }
    }
}

#[derive(Serialize)]
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn poly_coeffs(f: &RatPoly) -> String {
    f.coeffs()
        .iter()
        .map(frac_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn build_table(kind: TableKind, p: u32, m: u32) -> Result<Table, CliError> {
    Ok(match kind {
        TableKind::Weights => Table {
            columns: vec!["module", "family", "x", "y", "dim"],
            rows: lowest_weight_table(p, m)?
                .iter()
                .map(|(l, w)| table_record(l, w).to_vec())
                .collect(),
        },
        TableKind::M2 => Table {
            columns: vec!["module", "x", "y", "dim"],
            rows: m2_table(p)?
                .into_iter()
                .map(|r| {
                    vec![
                        r.name,
                        frac_string(&r.weight.x),
                        frac_string(&r.weight.y),
                        r.weight.dim.to_string(),
                    ]
                })
                .collect(),
        },
        TableKind::Zhu => {
            let t = ZhuTable::embedded();
            Table {
                columns: vec!["p", "s", "r"],
                rows: t
                    .rows
                    .iter()
                    .map(|r| vec![r.p.to_string(), poly_coeffs(&r.s), poly_coeffs(&r.r)])
                    .collect(),
            }
        }
    })
}

/// A table as CSV or JSON with exact fraction strings. Human output is CSV.
pub fn render_table(kind: TableKind, p: u32, m: u32, emit: Emit) -> Result<String, CliError> {
    let t = build_table(kind, p, m)?;
    match emit {
        Emit::Json => Ok(serde_json::to_string_pretty(&t)? + "\n"),
        Emit::Csv | Emit::Human => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&t.columns)?;
            for r in &t.rows {
                w.write_record(r)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            Ok(String::from_utf8_lossy(&bytes).into_owned())
        }
    }
}
