//! Tab-separated pair tables and JSON run reports.
//!
//! Pair tables start with a header line and hold one row per pair, sorted by
//! `(u, v)` with `u < v`. Reals are written with six decimals.
//!
//! ```text
//! u   v   d   t   c          estimate, centrality mode (c omitted in distances mode)
//! u   v   d   t   c   path   with paths requested (comma-separated vertices)
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::engine::{EstimationResult, Mode, RunConfig, RunReport};
use crate::error::{Error, Result};
use crate::oracle::{EstimateRecord, ExactTables};

/// Half a unit in the sixth decimal: how far a TSV real can sit from the
/// value it was written from.
pub const TSV_ROUNDING: f64 = 5e-7 + 1e-12;

/// Writes the stored pairs of an estimate.
pub fn write_estimate_tsv(est: &EstimationResult, with_paths: bool) -> Result<String> {
    let centrality = est.mode == Mode::Centrality;
    let r = est.sample_size() as f64;
    let mut out = String::from("u\tv\td\tt");
    if centrality {
        out.push_str("\tc");
    }
    if with_paths {
        out.push_str("\tpath");
    }
    out.push('\n');
    for ((u, v), e) in est.records() {
        write!(out, "{u}\t{v}\t{:.6}\t{}", e.dist, e.count).unwrap();
        if centrality {
            write!(out, "\t{:.6}", e.count as f64 / r).unwrap();
        }
        if with_paths {
            let path = est.path(u, v)?;
            let joined: Vec<String> = path.iter().map(|x| x.to_string()).collect();
            write!(out, "\t{}", joined.join(",")).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

/// Writes every pair of the exact tables.
pub fn write_exact_tsv(exact: &ExactTables) -> String {
    let mut out = String::from("u\tv\td\tt\tc\n");
    for (u, v) in exact.pairs() {
        writeln!(
            out,
            "{u}\t{v}\t{:.6}\t{}\t{:.6}",
            exact.dist(u, v),
            exact.count(u, v),
            exact.centrality(u, v)
        )
        .unwrap();
    }
    out
}

/// A parsed estimate row, with its path when present.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateRow {
    pub record: EstimateRecord,
    pub path: Option<Vec<usize>>,
}

struct Columns {
    c: Option<usize>,
    path: Option<usize>,
    width: usize,
}

fn parse_header(line: Option<&str>) -> Result<Columns> {
    let line = line.ok_or_else(|| bad(1, "missing header"))?;
    let names: Vec<&str> = line.trim_end_matches('\r').split('\t').collect();
    if names.len() < 4 || names[..4] != ["u", "v", "d", "t"] {
        return Err(bad(1, "header must start with u, v, d, t"));
    }
    let mut cols = Columns {
        c: None,
        path: None,
        width: names.len(),
    };
    for (i, name) in names.iter().enumerate().skip(4) {
        match *name {
            "c" if cols.c.is_none() && cols.path.is_none() => cols.c = Some(i),
            "path" if cols.path.is_none() => cols.path = Some(i),
            other => return Err(bad(1, &format!("unexpected column '{other}'"))),
        }
    }
    Ok(cols)
}

fn bad(line: usize, reason: &str) -> Error {
    Error::InvalidConfig(format!("pair table line {line}: {reason}"))
}

fn field<T: std::str::FromStr>(fields: &[&str], i: usize, line: usize) -> Result<T> {
    fields[i]
        .parse()
        .map_err(|_| bad(line, &format!("cannot parse '{}'", fields[i])))
}

/// Reads an estimate table written by [`write_estimate_tsv`].
pub fn read_estimate_tsv(text: &str) -> Result<Vec<EstimateRow>> {
    let mut lines = text.lines();
    let cols = parse_header(lines.next())?;
    let mut rows = Vec::new();
    for (idx, raw) in lines.enumerate() {
        let line = idx + 2;
        let raw = raw.trim_end_matches('\r');
        if raw.is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        if fields.len() != cols.width {
            return Err(bad(line, &format!("expected {} fields", cols.width)));
        }
        let record = EstimateRecord {
            u: field(&fields, 0, line)?,
            v: field(&fields, 1, line)?,
            d: field(&fields, 2, line)?,
            t: field(&fields, 3, line)?,
            c: cols.c.map(|i| field(&fields, i, line)).transpose()?,
        };
        let path = cols
            .path
            .map(|i| {
                fields[i]
                    .split(',')
                    .map(|x| x.parse().map_err(|_| bad(line, "bad path")))
                    .collect::<Result<Vec<usize>>>()
            })
            .transpose()?;
        rows.push(EstimateRow { record, path });
    }
    Ok(rows)
}

/// Reads an exact table written by [`write_exact_tsv`]; `n` is one more than
/// the largest vertex id.
pub fn read_exact_tsv(text: &str) -> Result<ExactTables> {
    let rows = read_estimate_tsv(text)?;
    let n = rows
        .iter()
        .map(|r| r.record.u.max(r.record.v) + 1)
        .max()
        .unwrap_or(1);
    let cells: Vec<_> = rows
        .iter()
        .map(|r| (r.record.u, r.record.v, r.record.d, r.record.t))
        .collect();
    ExactTables::from_rows(n, &cells)
}

/// JSON document written next to an estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub seed: u64,
    pub config: RunConfig,
    pub eta_trace: Vec<f64>,
    pub run: RunReport,
}

impl EstimateReport {
    pub fn new(cfg: &RunConfig, run: &RunReport) -> Self {
        EstimateReport {
            seed: cfg.seed,
            config: cfg.clone(),
            eta_trace: run.iterations.iter().map(|i| i.eta).collect(),
            run: run.clone(),
        }
    }
}
