//! Output documents: a provenance header followed by the result, as JSON or
//! CSV. Every number carries its exact form and a decimal with an error bound.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use lamiq::exactnum::{decimal_string, scientific_upper, ApproxReal, QVector, RadQ, Rational};
use lamiq::Result;

use crate::config::{Format, RunConfig};

const DIGITS: usize = 20;

/// An exact rational with its rounded decimal.
pub fn num(q: &Rational) -> Value {
    let error = if q.is_integer() { "0".to_string() } else { format!("5e-{}", DIGITS + 1) };
    json!({ "exact": q.to_string(), "decimal": decimal_string(q, DIGITS), "error": error })
}

/// An irrational value as a rational enclosure with a decimal midpoint.
pub fn approx(x: &ApproxReal) -> Value {
    let rounding = &Rational::from_int(5) / &Rational::from_int(10).pow(DIGITS as u32 + 1);
    let bound = &x.error_bound() + &rounding;
    json!({
        "enclosure": [x.lo().to_string(), x.hi().to_string()],
        "decimal": decimal_string(&x.value(), DIGITS),
        "error": scientific_upper(&bound),
    })
}

pub fn radq(x: &RadQ) -> Value {
    json!({ "exact": x.to_string(), "decimal": format!("{:.15e}", x.to_f64()) })
}

pub fn vector(v: &QVector) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

/// A result table with named columns; cells are already strings.
pub struct Table {
    pub name: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &'static str, header: &[&'static str]) -> Self {
        Table {
            name,
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(cfg: &RunConfig, table: &Table) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {} {}\n", cfg.artifact, cfg.version));
    out.push_str(&format!("# config: {}\n", serde_json::to_string(cfg).expect("config serializes")));
    out.push_str(&table.header.join(","));
    out.push('\n');
    for r in &table.rows {
        out.push_str(&r.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn render_doc<T: Serialize>(cfg: &RunConfig, result: &T) -> String {
    let mut s = serde_json::to_string_pretty(&json!({ "provenance": cfg, "result": result })).expect("serializable");
    s.push('\n');
    s
}

/// Writes the document (or the tables, for CSV) to `out_dir` or stdout.
pub fn emit<T: Serialize>(cfg: &RunConfig, out_dir: Option<&Path>, stem: &str, doc: &T, tables: &[Table]) -> Result<()> {
    let files: Vec<(String, String)> = match cfg.format {
        Format::Doc => vec![(format!("{stem}.json"), render_doc(cfg, doc))],
        Format::Csv => tables.iter().map(|t| (format!("{stem}-{}.csv", t.name), render_csv(cfg, t))).collect(),
    };
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for (name, body) in files {
                std::fs::write(dir.join(name), body)?;
            }
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for (i, (_, body)) in files.iter().enumerate() {
                if i > 0 {
                    lock.write_all(b"\n")?;
                }
                lock.write_all(body.as_bytes())?;
            }
        }
    }
    Ok(())
}
