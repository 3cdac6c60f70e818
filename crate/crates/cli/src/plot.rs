//! CSV tables and atomic artifact writes.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use twocore::estimator::SweepRow;

pub const SWEEP_HEADER: [&str; 5] = ["p", "I2", "I2inf", "frac_c2", "frac_c2max"];
pub const PLOT_HEADER: [&str; 7] = [
    "p",
    "I2",
    "I2inf",
    "frac_c2",
    "frac_c2max",
    "zeta2_oracle",
    "zeta2inf_oracle",
];

/// Six significant digits, shortest decimal form: `0.473007`, `1`, `0`.
pub fn sig6(x: f64) -> String {
    let rounded: f64 = format!("{x:.5e}").parse().unwrap();
    if rounded == 0.0 {
        return "0".to_string();
    }
    format!("{rounded}")
}

fn cell(x: Option<f64>) -> String {
    x.map(sig6).unwrap_or_default()
}

fn table_bytes(header: &[&str], rows: &[Vec<Option<f64>>]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| cell(x)))?;
    }
    Ok(w.into_inner()?)
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<Vec<u8>> {
    let rows: Vec<_> = rows
        .iter()
        .map(|r| {
            vec![
                Some(r.p),
                Some(r.i2),
                Some(r.i2inf),
                r.frac_c2,
                r.frac_c2max,
            ]
        })
        .collect();
    table_bytes(&SWEEP_HEADER, &rows)
}

pub fn plot_csv(rows: &[SweepRow]) -> Result<Vec<u8>> {
    if rows.is_empty() {
        bail!("plot table is empty");
    }
    let rows: Vec<_> = rows
        .iter()
        .map(|r| {
            vec![
                Some(r.p),
                Some(r.i2),
                Some(r.i2inf),
                r.frac_c2,
                r.frac_c2max,
                r.zeta2_oracle,
                r.zeta2inf_oracle,
            ]
        })
        .collect();
    table_bytes(&PLOT_HEADER, &rows)
}

/// Writes the plot table atomically.
pub fn emit_plot_data(rows: &[SweepRow], path: &Path) -> Result<()> {
    write_atomic(path, &plot_csv(rows)?)
}

/// Parses a plot table back; blank cells become `None`.
pub fn read_plot_data(text: &str) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    if r.headers()?.iter().collect::<Vec<_>>() != PLOT_HEADER {
        bail!("unexpected plot-data header");
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let v: Vec<Option<f64>> = rec
            .iter()
            .map(|c| {
                if c.is_empty() {
                    Ok(None)
                } else {
                    c.parse().map(Some)
                }
            })
            .collect::<std::result::Result<_, _>>()
            .context("bad number in plot data")?;
        let need = |x: Option<f64>| x.context("missing required column");
        rows.push(SweepRow {
            p: need(v[0])?,
            i2: need(v[1])?,
            i2inf: need(v[2])?,
            frac_c2: v[3],
            frac_c2max: v[4],
            zeta2_oracle: v[5],
            zeta2inf_oracle: v[6],
        });
    }
    Ok(rows)
}

/// Writes through a temporary file in the target directory, then renames it
/// into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot write into {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
