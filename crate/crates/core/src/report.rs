//! CSV and JSON serialization of run results.
//!
//! CSV files are UTF-8 with a header row and `\n` record terminators. Floats
//! are written as the shortest decimal that round-trips.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiment::{Method, SweepResult, SweepRow};
use crate::metrics::BlochVector3;
use crate::stats::{HistogramBin, RunStats};

/// Output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::contract(format!("unknown format '{other}'"))),
        }
    }
}

/// Failure while writing a report.
#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn write_csv_rows<W: Write, T: Serialize>(
    w: W,
    rows: &[T],
) -> std::result::Result<(), ReportError> {
    let mut wtr = csv_writer(w);
    for row in rows {
        wtr.serialize(row)?;
    }
    wtr.flush()?;
    Ok(())
}

/// `method,d,d_prime,n_pairs,mean_hsd,std_hsd`
pub fn write_stats_csv<W: Write>(w: W, rows: &[SweepRow]) -> std::result::Result<(), ReportError> {
    if rows.is_empty() {
        // serde-driven headers need at least one record
        let mut wtr = csv_writer(w);
        wtr.write_record(["method", "d", "d_prime", "n_pairs", "mean_hsd", "std_hsd"])?;
        wtr.flush()?;
        return Ok(());
    }
    write_csv_rows(w, rows)
}

/// `bin_lower,bin_upper,count`
pub fn write_histogram_csv<W: Write>(
    w: W,
    stats: &RunStats,
) -> std::result::Result<(), ReportError> {
    write_csv_rows(w, &stats.histogram())
}

/// `x,y,z`
pub fn write_cloud_csv<W: Write>(
    w: W,
    cloud: &[BlochVector3],
) -> std::result::Result<(), ReportError> {
    if cloud.is_empty() {
        let mut wtr = csv_writer(w);
        wtr.write_record(["x", "y", "z"])?;
        wtr.flush()?;
        return Ok(());
    }
    write_csv_rows(w, cloud)
}

/// Single summary row for a finished run.
pub fn stats_row(method: Method, d: usize, d_prime: Option<usize>, stats: &RunStats) -> SweepRow {
    SweepRow {
        method,
        d,
        d_prime,
        n_pairs: stats.n(),
        mean_hsd: stats.mean(),
        std_hsd: stats.std(),
    }
}

#[derive(Serialize)]
struct StatsDocument<'a> {
    #[serde(flatten)]
    summary: &'a SweepRow,
    histogram: Vec<HistogramBin>,
}

pub fn write_stats_json<W: Write>(
    w: W,
    row: &SweepRow,
    stats: &RunStats,
) -> std::result::Result<(), ReportError> {
    let doc = StatsDocument {
        summary: row,
        histogram: stats.histogram(),
    };
    serde_json::to_writer_pretty(w, &doc)?;
    Ok(())
}

pub fn write_sweep_json<W: Write>(
    w: W,
    sweep: &SweepResult,
) -> std::result::Result<(), ReportError> {
    serde_json::to_writer_pretty(w, sweep)?;
    Ok(())
}

pub fn write_cloud_json<W: Write>(
    w: W,
    cloud: &[BlochVector3],
) -> std::result::Result<(), ReportError> {
    serde_json::to_writer_pretty(w, cloud)?;
    Ok(())
}

/// Plain-text rendering with one line per `d` and (mean, std) per method.
pub fn format_table(sweep: &SweepResult, methods: &[Method]) -> String {
    let mut dims: Vec<usize> = sweep.rows.iter().map(|r| r.d).collect();
    dims.sort_unstable();
    dims.dedup();
    let mut out = format!("{:>4}", "d");
    for m in methods {
        out.push_str(&format!(" | {:^17}", m.name()));
    }
    out.push('\n');
    out.push_str(&format!("{:>4}", ""));
    for _ in methods {
        out.push_str(&format!(" | {:>8} {:>8}", "<d_hs>", "Δd_hs"));
    }
    out.push('\n');
    for d in dims {
        out.push_str(&format!("{d:>4}"));
        for &m in methods {
            match sweep.find(m, d, None) {
                Some(r) => out.push_str(&format!(" | {:>8.3} {:>8.3}", r.mean_hsd, r.std_hsd)),
                None => out.push_str(&format!(" | {:>8} {:>8}", "-", "-")),
            }
        }
        out.push('\n');
    }
    out
}
