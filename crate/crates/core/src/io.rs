//! Problem files and result files.
//!
//! A problem file holds the row count, the column count, that many rows of
//! integers and finally a mode keyword. `#` starts a comment and blank lines
//! are skipped. Result matrices use the same layout without the keyword.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector, LatticeMode};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputMode {
    Generators,
    Hyperplanes,
    Equations,
}

impl InputMode {
    pub fn keyword(self) -> &'static str {
        match self {
            InputMode::Generators => "generators",
            InputMode::Hyperplanes => "hyperplanes",
            InputMode::Equations => "equations",
        }
    }
}

impl FromStr for InputMode {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "generators" => Ok(InputMode::Generators),
            "hyperplanes" => Ok(InputMode::Hyperplanes),
            "equations" => Ok(InputMode::Equations),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    #[default]
    Primal,
    Dual,
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub algorithm: Algorithm,
    pub compute_hvector: bool,
    pub output_prefix: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct ProblemInput {
    pub mode: InputMode,
    pub matrix: IntMatrix,
    pub lattice_mode: LatticeMode,
    pub options: RunOptions,
}

impl ProblemInput {
    /// Inequality and equation input always refers to `Z^d`.
    pub fn effective_lattice_mode(&self) -> LatticeMode {
        match self.mode {
            InputMode::Generators => self.lattice_mode,
            _ => LatticeMode::AmbientLattice,
        }
    }
}

/// Content lines with their 1-based line numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_count(entry: Option<(usize, &str)>, what: &str, last_line: usize) -> Result<(usize, usize)> {
    let (line, s) = entry.ok_or_else(|| Error::parse(last_line, format!("missing {what}")))?;
    let n: usize = s
        .parse()
        .map_err(|_| Error::parse(line, format!("malformed {what} `{s}`")))?;
    if n == 0 {
        return Err(Error::parse(line, format!("{what} must be positive")));
    }
    Ok((line, n))
}

pub fn parse_input(text: &str) -> Result<ProblemInput> {
    let last_line = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let (_, rows) = parse_count(lines.next(), "row count", last_line)?;
    let (_, cols) = parse_count(lines.next(), "column count", last_line)?;
    let mut matrix = Vec::with_capacity(rows);
    for r in 0..rows {
        let (line, s) = lines
            .next()
            .ok_or_else(|| Error::parse(last_line, format!("expected {rows} rows, found {r}")))?;
        let row: IntVector = s
            .split_whitespace()
            .map(|tok| {
                BigInt::from_str(tok)
                    .map_err(|_| Error::parse(line, format!("`{tok}` is not an integer")))
            })
            .collect::<Result<_>>()?;
        if row.len() != cols {
            // a keyword where a row was expected means the row count is too large
            if s.parse::<InputMode>().is_ok() {
                return Err(Error::parse(line, format!("expected {rows} rows, found {r}")));
            }
            return Err(Error::parse(
                line,
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
        matrix.push(row);
    }
    let (line, keyword) = lines
        .next()
        .ok_or_else(|| Error::parse(last_line, "missing mode keyword"))?;
    let mode = keyword
        .parse::<InputMode>()
        .map_err(|_| Error::parse(line, format!("unknown mode `{keyword}`")))?;
    if let Some((line, extra)) = lines.next() {
        return Err(Error::parse(line, format!("unexpected content `{extra}` after mode keyword")));
    }
    Ok(ProblemInput {
        mode,
        matrix: IntMatrix::new(matrix, cols)?,
        lattice_mode: LatticeMode::AmbientLattice,
        options: RunOptions::default(),
    })
}

pub fn read_input(path: &Path) -> Result<ProblemInput> {
    parse_input(&std::fs::read_to_string(path)?)
}

/// The matrix layout shared by input and result files (no keyword).
pub fn format_matrix(rows: &[IntVector], ncols: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", rows.len());
    let _ = writeln!(out, "{ncols}");
    for row in rows {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// Reads back a result matrix.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let last_line = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let (line, s) = lines
        .next()
        .ok_or_else(|| Error::parse(last_line, "missing row count"))?;
    let rows: usize = s
        .parse()
        .map_err(|_| Error::parse(line, format!("malformed row count `{s}`")))?;
    let (_, cols) = parse_count(lines.next(), "column count", last_line)?;
    let mut matrix = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (line, s) = lines
            .next()
            .ok_or_else(|| Error::parse(last_line, "missing row"))?;
        let row: IntVector = s
            .split_whitespace()
            .map(|tok| {
                BigInt::from_str(tok)
                    .map_err(|_| Error::parse(line, format!("`{tok}` is not an integer")))
            })
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(Error::parse(line, format!("expected {cols} entries")));
        }
        matrix.push(row);
    }
    if let Some((line, extra)) = lines.next() {
        return Err(Error::parse(line, format!("unexpected content `{extra}`")));
    }
    IntMatrix::new(matrix, cols)
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// Writes the result files for `report` next to `prefix` and returns their
/// paths. With `json_only` only the JSON report is written.
pub fn emit(report: &Report, prefix: &Path, json_only: bool) -> Result<Vec<PathBuf>> {
    let mut files: Vec<(PathBuf, String)> = Vec::new();
    if !json_only {
        let d = report.ambient_dim;
        files.push((with_extension(prefix, "hilb"), format_matrix(&report.hilbert_basis, d)));
        files.push((with_extension(prefix, "ext"), format_matrix(&report.extreme_rays, d)));
        files.push((
            with_extension(prefix, "supp"),
            format_matrix(&report.support_hyperplanes, d),
        ));
        if let Some(h) = &report.h_vector {
            let row: Vec<String> = h.coefficients.iter().map(ToString::to_string).collect();
            let poly: Vec<String> = h.polynomial.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect();
            files.push((
                with_extension(prefix, "hvec"),
                format!("{}\n{}\n", row.join(" "), poly.join(" ")),
            ));
        }
    }
    let json = serde_json::to_string_pretty(&report.to_json())
        .expect("report serializes to JSON");
    files.push((with_extension(prefix, "json"), json + "\n"));
    let mut written = Vec::with_capacity(files.len());
    for (path, content) in files {
        std::fs::write(&path, content)?;
        written.push(path);
    }
    Ok(written)
}
