//! FUN/VAR text files: one solution per line, values separated by single spaces.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::core::FloatSolution;
use crate::error::{Error, Result};

fn write_rows<'a, I>(path: &Path, rows: I) -> Result<()>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let file = fs::File::create(path).map_err(|e| Error::file(path, e))?;
    let mut w = BufWriter::new(file);
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(w, "{}", line.join(" ")).map_err(|e| Error::file(path, e))?;
    }
    w.flush().map_err(|e| Error::file(path, e))
}

/// Writes objective vectors.
pub fn write_fun(path: impl AsRef<Path>, solutions: &[FloatSolution]) -> Result<()> {
    write_rows(path.as_ref(), solutions.iter().map(|s| s.objectives.as_slice()))
}

/// Writes decision variables.
pub fn write_var(path: impl AsRef<Path>, solutions: &[FloatSolution]) -> Result<()> {
    write_rows(path.as_ref(), solutions.iter().map(|s| s.variables.as_slice()))
}

/// Parses a FUN/VAR style matrix. Blank lines are skipped; every row must have the same
/// number of columns.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = i as u64 + 1;
        let row = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("`{t}` is not a number"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {} columns, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<Vec<Vec<f64>>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    parse_matrix(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let sols = vec![
            FloatSolution::with_objectives(vec![0.1, 0.2], vec![1.0 / 3.0, 2.5e-17]),
            FloatSolution::with_objectives(vec![0.3, 0.4], vec![0.0, -1.0]),
        ];
        let fun = dir.path().join("FUN.0");
        let var = dir.path().join("VAR.0");
        write_fun(&fun, &sols).unwrap();
        write_var(&var, &sols).unwrap();
        assert_eq!(
            read_matrix(&fun).unwrap(),
            vec![vec![1.0 / 3.0, 2.5e-17], vec![0.0, -1.0]]
        );
        assert_eq!(read_matrix(&var).unwrap()[1], vec![0.3, 0.4]);
        let text = std::fs::read_to_string(&var).unwrap();
        assert_eq!(text, "0.1 0.2\n0.3 0.4\n");
    }

    #[test]
    fn ragged_rows_are_rejected() {
        match parse_matrix("1 2\n\n3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_matrix("1 x").is_err());
        assert!(parse_matrix("").unwrap().is_empty());
    }
}
