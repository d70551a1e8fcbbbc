//! The summary CSV shared by every statistical report.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const SUMMARY_HEADER: [&str; 5] = [
    "Algorithm",
    "Problem",
    "Indicator",
    "ExecutionId",
    "IndicatorValue",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRecord {
    pub algorithm: String,
    pub problem: String,
    pub indicator: String,
    pub execution_id: u64,
    pub value: f64,
}

impl SummaryRecord {
    pub fn new(algorithm: &str, problem: &str, indicator: &str, execution_id: u64, value: f64) -> Self {
        SummaryRecord {
            algorithm: algorithm.to_string(),
            problem: problem.to_string(),
            indicator: indicator.to_string(),
            execution_id,
            value,
        }
    }

    fn key(&self) -> (&str, &str, &str, u64) {
        (&self.algorithm, &self.problem, &self.indicator, self.execution_id)
    }
}

/// Writes the header and one row per record. Values use the shortest text that parses back
/// to the same `f64`.
pub fn write_summary_to<W: Write>(writer: W, records: &[SummaryRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    w.write_record(SUMMARY_HEADER).map_err(csv_error)?;
    for r in records {
        w.write_record([
            r.algorithm.as_str(),
            r.problem.as_str(),
            r.indicator.as_str(),
            &r.execution_id.to_string(),
            &r.value.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary(path: &Path, records: &[SummaryRecord]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::file(path, e))?;
    write_summary_to(file, records)
}

/// Parses a summary. Header names are matched case-insensitively and surrounding whitespace
/// is ignored, so files written by other tools with the same schema are accepted.
pub fn read_summary_from<R: Read>(reader: R) -> Result<Vec<SummaryRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = Vec::new();
    let mut seen = BTreeSet::new();
    let mut header_done = false;
    for row in rdr.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line());
        if row.iter().all(str::is_empty) {
            continue;
        }
        if !header_done {
            header_done = true;
            let matches = row.len() == 5
                && row
                    .iter()
                    .zip(SUMMARY_HEADER)
                    .all(|(a, b)| a.eq_ignore_ascii_case(b));
            if !matches {
                return Err(Error::Parse {
                    line,
                    message: format!(
                        "expected header '{}', found '{}'",
                        SUMMARY_HEADER.join(","),
                        row.iter().collect::<Vec<_>>().join(",")
                    ),
                });
            }
            continue;
        }
        if row.len() != 5 {
            return Err(Error::Parse {
                line,
                message: format!("expected 5 fields, found {}", row.len()),
            });
        }
        let execution_id = row[3].parse::<u64>().map_err(|e| Error::Parse {
            line,
            message: format!("bad ExecutionId '{}': {e}", &row[3]),
        })?;
        let value = row[4].parse::<f64>().map_err(|e| Error::Parse {
            line,
            message: format!("bad IndicatorValue '{}': {e}", &row[4]),
        })?;
        let record = SummaryRecord::new(&row[0], &row[1], &row[2], execution_id, value);
        let key = (
            record.algorithm.clone(),
            record.problem.clone(),
            record.indicator.clone(),
            execution_id,
        );
        if !seen.insert(key) {
            return Err(Error::Integrity(format!(
                "line {line}: duplicate record {:?}",
                record.key()
            )));
        }
        records.push(record);
    }
    Ok(records)
}

pub fn read_summary(path: &Path) -> Result<Vec<SummaryRecord>> {
    let file = File::open(path).map_err(|e| Error::file(path, e))?;
    read_summary_from(file)
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse {
            line,
            message: format!("{other:?}"),
        },
    }
}
