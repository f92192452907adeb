//! CSV input and curve output.
//!
//! Row files have columns `score,label`; counts files `value,neg,pos`. A first
//! row whose leading field is not a number is taken as a header.

use std::io::{Read, Write};
use std::str::FromStr;

use crate::data::{load_counts, load_rows, Dataset};
use crate::error::{Error, Result};
use crate::roc::{RocPolyline, Threshold};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputMode {
    #[default]
    Rows,
    Counts,
}

impl FromStr for InputMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rows" => Ok(InputMode::Rows),
            "counts" => Ok(InputMode::Counts),
            other => Err(Error::Argument(format!("unknown input mode '{other}'"))),
        }
    }
}

pub fn read_dataset<R: Read>(reader: R, mode: InputMode) -> Result<Dataset> {
    match mode {
        InputMode::Rows => read_rows_csv(reader),
        InputMode::Counts => read_counts_csv(reader),
    }
}

fn records<R: Read>(reader: R, columns: usize) -> Result<Vec<(usize, Vec<String>)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut out: Vec<(usize, Vec<String>)> = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Ingest(format!("CSV: {e}")))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(i + 1);
        if rec.len() != columns {
            return Err(Error::Ingest(format!(
                "line {line}: expected {columns} columns, found {}",
                rec.len()
            )));
        }
        out.push((line, rec.iter().map(str::to_owned).collect()));
    }
    if let Some((_, first)) = out.first() {
        if first[0].parse::<f64>().is_err() {
            out.remove(0);
        }
    }
    Ok(out)
}

fn parse_f64(field: &str, line: usize, what: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .map_err(|_| Error::Ingest(format!("line {line}: {what} '{field}' is not a number")))
}

fn parse_label(field: &str, line: usize) -> Result<i64> {
    match parse_f64(field, line, "label")? {
        0.0 => Ok(0),
        1.0 => Ok(1),
        _ => Err(Error::Ingest(format!(
            "line {line}: label '{field}' is not 0 or 1"
        ))),
    }
}

fn parse_count(field: &str, line: usize) -> Result<i64> {
    field
        .parse::<i64>()
        .map_err(|_| Error::Ingest(format!("line {line}: count '{field}' is not an integer")))
}

pub fn read_rows_csv<R: Read>(reader: R) -> Result<Dataset> {
    let rows = records(reader, 2)?
        .into_iter()
        .map(|(line, f)| Ok((parse_f64(&f[0], line, "score")?, parse_label(&f[1], line)?)))
        .collect::<Result<Vec<_>>>()?;
    load_rows(rows)
}

pub fn read_counts_csv<R: Read>(reader: R) -> Result<Dataset> {
    let cells = records(reader, 3)?
        .into_iter()
        .map(|(line, f)| {
            Ok((
                parse_f64(&f[0], line, "value")?,
                parse_count(&f[1], line)?,
                parse_count(&f[2], line)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    load_counts(cells)
}

/// Writes `fpr,tpr,threshold`; the threshold is blank on step corners and
/// `inf` at the starting vertex.
pub fn write_curve_csv<W: Write>(pl: &RocPolyline, writer: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["fpr", "tpr", "threshold"])?;
    for p in &pl.points {
        let threshold = match p.threshold {
            None => String::new(),
            Some(Threshold::AboveMax) => "inf".to_owned(),
            Some(Threshold::Score(s)) => s.to_string(),
        };
        w.write_record([p.fpr.to_string(), p.tpr.to_string(), threshold])?;
    }
    w.flush()
}
