//! Text, CSV and JSON renderings.

use std::collections::BTreeSet;

use moment_core::{BettiTable, Polynomial, TruncatedSeries};
use serde::Serialize;

use crate::CliError;

#[derive(Serialize)]
struct EntryRow {
    i: usize,
    v1: usize,
    v2: usize,
    beta: u64,
}

#[derive(Serialize)]
pub struct TableJson {
    family: String,
    n: usize,
    field: Option<String>,
    source: String,
    entries: Vec<EntryRow>,
}

pub fn table_json(t: &BettiTable) -> TableJson {
    TableJson {
        family: t.family.clone(),
        n: t.n,
        field: t.field.map(|f| f.to_string()),
        source: t.source.to_string(),
        entries: t.entries().map(|(i, v, beta)| EntryRow { i, v1: v.a, v2: v.b, beta }).collect(),
    }
}

/// Strand rows by homological columns, zeros as `-`, with a `total:` row on top.
pub fn table_text(t: &BettiTable) -> String {
    let strands = t.strand_totals();
    let width_i = t.max_i().map_or(0, |m| m + 1);
    let mut cells: Vec<(String, Vec<String>)> = Vec::new();
    cells.push(("".into(), (0..width_i).map(|i| i.to_string()).collect()));
    cells.push(("total:".into(), t.totals().iter().map(u64::to_string).collect()));
    for (s, row) in &strands {
        let line = (0..width_i).map(|i| row.get(&i).map_or("-".to_string(), u64::to_string)).collect();
        cells.push((format!("{s}:"), line));
    }
    let label_w = cells.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let col_w: Vec<usize> = (0..width_i).map(|c| cells.iter().map(|(_, r)| r[c].len()).max().unwrap_or(1)).collect();
    let mut out = String::new();
    for (label, row) in cells {
        let mut line = format!("{label:>label_w$}");
        for (c, cell) in row.iter().enumerate() {
            line.push_str(&format!(" {cell:>w$}", w = col_w[c]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// One line per nonzero graded entry.
pub fn table_graded_text(t: &BettiTable) -> String {
    t.entries().map(|(i, v, b)| format!("{i} {v} {b}\n")).collect()
}

pub fn table_csv(t: &BettiTable) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i", "v1", "v2", "beta"])?;
    for (i, v, b) in t.entries() {
        w.serialize((i, v.a, v.b, b))?;
    }
    finish_csv(w)
}

/// Side-by-side graded entries of two tables over the union of their supports.
pub fn comparison_csv(closed: &BettiTable, oracle: &BettiTable) -> Result<String, CliError> {
    let keys: BTreeSet<_> = closed.entries().chain(oracle.entries()).map(|(i, v, _)| (i, v)).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i", "v1", "v2", "closed", "oracle"])?;
    for (i, v) in keys {
        w.serialize((i, v.a, v.b, closed.get(i, v), oracle.get(i, v)))?;
    }
    finish_csv(w)
}

pub fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
pub struct PolyJson {
    index: usize,
    bidegree: [usize; 2],
    polynomial: String,
}

pub fn generators_json(gens: &[Polynomial], names: &[String]) -> Vec<PolyJson> {
    gens.iter()
        .enumerate()
        .map(|(k, g)| {
            let v = g.bidegree().unwrap_or_default();
            PolyJson { index: k + 1, bidegree: [v.a, v.b], polynomial: g.render(names) }
        })
        .collect()
}

#[derive(Serialize)]
pub struct TermJson {
    s: u32,
    t: u32,
    u: u32,
    coeff: i128,
}

pub fn series_json(series: &TruncatedSeries) -> Vec<TermJson> {
    series.terms().map(|(e, c)| TermJson { s: e[0], t: e[1], u: e[2], coeff: c }).collect()
}

pub fn series_csv(series: &TruncatedSeries) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["s", "t", "u", "coeff"])?;
    for (e, c) in series.terms() {
        w.serialize((e[0], e[1], e[2], c.to_string()))?;
    }
    finish_csv(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use moment_core::RepFamily;

    #[test]
    fn sl2_text_layout() {
        let t = RepFamily::parse("sl", 2).unwrap().betti_closed();
        let expected = "       0 1 2 3 4\ntotal: 1 3 5 4 1\n    0: 1 - - - -\n    1: - 3 - - -\n    2: - - 5 4 1\n";
        assert_eq!(table_text(&t), expected);
    }

    #[test]
    fn json_entries_sorted() {
        let t = RepFamily::parse("gl", 1).unwrap().betti_closed();
        let j = serde_json::to_string(&table_json(&t)).unwrap();
        assert_eq!(
            j,
            r#"{"family":"gl","n":1,"field":null,"source":"closed","entries":[{"i":0,"v1":0,"v2":0,"beta":1},{"i":1,"v1":1,"v2":1,"beta":1}]}"#
        );
    }
}
