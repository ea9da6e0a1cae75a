//! Rendering of polynomials, tables and reports.

use clap::ValueEnum;
use qgroth::expand::SignReading;
use qgroth::{Permutation, Polynomial};
use serde::Serialize;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

pub fn polynomial(f: &Polynomial, format: Format) -> String {
    match format {
        Format::Text => f.to_string(),
        Format::Json => serde_json::to_string(f).expect("polynomials serialize"),
    }
}

/// `2143` below width 10, `2,1,4,3,…` from there on.
pub fn perm_label(w: &Permutation, n: usize) -> String {
    if n < 10 {
        w.compact(n)
    } else {
        w.to_string_n(n)
    }
}

/// `d` padded to `n - 1` entries, written `(1,1,0)`.
pub fn multidegree(d: &[u32], n: usize) -> String {
    let mut d = d.to_vec();
    d.resize(d.len().max(n.saturating_sub(1)), 0);
    format!("({})", d.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

fn csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}

fn json_line<T: Serialize>(value: &T) -> String {
    format!("{}\n", serde_json::to_string_pretty(value).expect("reports serialize"))
}

pub fn rows<T: Serialize>(rows: &[T], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => csv(rows),
        TableFormat::Json => json_line(&rows),
    }
}

#[derive(Serialize)]
pub struct InvariantRow {
    pub w: String,
    pub d: String,
    #[serde(rename = "N")]
    pub n: String,
    pub sign_check: &'static str,
    pub conjectural: bool,
}

pub fn invariants(u: &Permutation, v: &Permutation, n: usize, reading: SignReading, rows: &[InvariantRow], all_pass: bool, format: TableFormat) -> String {
    match format {
        TableFormat::Csv => csv(rows),
        TableFormat::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                u: String,
                v: String,
                n: usize,
                reading: SignReading,
                conjectural: bool,
                all_pass: bool,
                rows: &'a [InvariantRow],
            }
            json_line(&Report { u: perm_label(u, n), v: perm_label(v, n), n, reading, conjectural: true, all_pass, rows })
        }
    }
}

pub fn stats(family: &str, n: usize, count: usize, max: usize, attained: &[&str], total: usize, format: TableFormat) -> String {
    #[derive(Serialize)]
    struct Stats<'a> {
        family: &'a str,
        n: usize,
        permutations: usize,
        max_terms: usize,
        attained_at: String,
        total_terms: usize,
    }
    let s = Stats { family, n, permutations: count, max_terms: max, attained_at: attained.join(" "), total_terms: total };
    match format {
        TableFormat::Csv => csv(&[s]),
        TableFormat::Json => json_line(&s),
    }
}
