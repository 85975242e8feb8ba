//! The "alist" sparse text format for parity-check matrices, plus a paired
//! container for stabilizer codes.
//!
//! Layout of a single alist block:
//!
//! ```text
//! N M                  (columns, rows)
//! maxcol maxrow        (largest column / row degree)
//! d_1 ... d_N          (column degrees)
//! e_1 ... e_M          (row degrees)
//! N lines of 1-based row indices, one line per column
//! M lines of 1-based column indices, one line per row
//! ```
//!
//! The parser tolerates zero padding (entries of `0` are ignored) and
//! arbitrary whitespace; the writer emits the unpadded canonical form so
//! that write -> parse -> write is byte-identical.

use crate::gf2::BinaryMatrix;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlistError {
    #[error("unexpected end of input while reading {context}")]
    UnexpectedEnd { context: &'static str },
    #[error("invalid integer '{token}' while reading {context}")]
    InvalidInteger { token: String, context: &'static str },
    #[error("index {index} out of range 1..={max} while reading {context}")]
    IndexOutOfRange {
        index: usize,
        max: usize,
        context: &'static str,
    },
    #[error("inconsistent alist: {reason}")]
    Inconsistent { reason: String },
}

struct LineReader<'a> {
    lines: std::str::Lines<'a>,
    consumed_any: bool,
}

impl<'a> LineReader<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            lines: text.lines(),
            consumed_any: false,
        }
    }

    /// Next line as integers. Leading blank lines are skipped only between
    /// blocks; inside a block an empty line is a valid degree-0 list.
    fn next_ints(
        &mut self,
        context: &'static str,
        skip_blank: bool,
    ) -> Result<Vec<usize>, AlistError> {
        loop {
            let line = self
                .lines
                .next()
                .ok_or(AlistError::UnexpectedEnd { context })?;
            if skip_blank && line.trim().is_empty() {
                continue;
            }
            self.consumed_any = true;
            return line
                .split_whitespace()
                .map(|token| {
                    token.parse().map_err(|_| AlistError::InvalidInteger {
                        token: token.to_string(),
                        context,
                    })
                })
                .collect();
        }
    }

    fn next_pair(&mut self, context: &'static str) -> Result<(usize, usize), AlistError> {
        let ints = self.next_ints(context, true)?;
        if ints.len() != 2 {
            return Err(AlistError::Inconsistent {
                reason: format!("expected two integers for {context}, got {}", ints.len()),
            });
        }
        Ok((ints[0], ints[1]))
    }
}

/// Parse one alist block into a matrix.
pub fn parse_alist(text: &str) -> Result<BinaryMatrix, AlistError> {
    let mut reader = LineReader::new(text);
    parse_block(&mut reader)
}

fn parse_block(reader: &mut LineReader) -> Result<BinaryMatrix, AlistError> {
    let (cols, rows) = reader.next_pair("size header")?;
    let _ = reader.next_pair("max-degree header")?;

    let col_degrees = reader.next_ints("column degrees", true)?;
    if col_degrees.len() != cols {
        return Err(AlistError::Inconsistent {
            reason: format!("{} column degrees for {} columns", col_degrees.len(), cols),
        });
    }
    let row_degrees = reader.next_ints("row degrees", true)?;
    if row_degrees.len() != rows {
        return Err(AlistError::Inconsistent {
            reason: format!("{} row degrees for {} rows", row_degrees.len(), rows),
        });
    }

    let mut m = BinaryMatrix::zeros(rows, cols);
    for (c, &deg) in col_degrees.iter().enumerate() {
        let entries = read_index_line(reader, "column entries", deg, rows)?;
        for idx in entries {
            m.set(idx - 1, c, true);
        }
    }
    // The row lists are redundant with the column lists; read them and
    // verify agreement.
    let mut check = BinaryMatrix::zeros(rows, cols);
    for (r, &deg) in row_degrees.iter().enumerate() {
        let entries = read_index_line(reader, "row entries", deg, cols)?;
        for idx in entries {
            check.set(r, idx - 1, true);
        }
    }
    if m != check {
        return Err(AlistError::Inconsistent {
            reason: "column lists and row lists disagree".to_string(),
        });
    }
    Ok(m)
}

/// One index line: zero padding is dropped, the nonzero count must match
/// the declared degree, and indices must fall in 1..=max.
fn read_index_line(
    reader: &mut LineReader,
    context: &'static str,
    degree: usize,
    max: usize,
) -> Result<Vec<usize>, AlistError> {
    let raw = reader.next_ints(context, false)?;
    let mut out = Vec::with_capacity(degree);
    for idx in raw {
        if idx == 0 {
            continue;
        }
        if idx > max {
            return Err(AlistError::IndexOutOfRange {
                index: idx,
                max,
                context,
            });
        }
        out.push(idx);
    }
    if out.len() != degree {
        return Err(AlistError::Inconsistent {
            reason: format!("{context}: {} entries declared, {} found", degree, out.len()),
        });
    }
    Ok(out)
}

/// Serialize a matrix as one canonical alist block.
pub fn write_alist(m: &BinaryMatrix) -> String {
    let mut out = String::new();
    write_block(&mut out, m);
    out
}

fn write_block(out: &mut String, m: &BinaryMatrix) {
    let (row_adj, col_adj) = m.adjacency();
    let max_col = col_adj.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_adj.iter().map(Vec::len).max().unwrap_or(0);
    writeln!(out, "{} {}", m.cols(), m.rows()).unwrap();
    writeln!(out, "{} {}", max_col, max_row).unwrap();
    write_degree_line(out, col_adj.iter().map(Vec::len));
    write_degree_line(out, row_adj.iter().map(Vec::len));
    for col in &col_adj {
        write_index_line(out, col);
    }
    for row in &row_adj {
        write_index_line(out, row);
    }
}

fn write_degree_line(out: &mut String, degrees: impl Iterator<Item = usize>) {
    let mut first = true;
    for d in degrees {
        if !first {
            out.push(' ');
        }
        write!(out, "{}", d).unwrap();
        first = false;
    }
    out.push('\n');
}

fn write_index_line(out: &mut String, indices: &[usize]) {
    let mut first = true;
    for &i in indices {
        if !first {
            out.push(' ');
        }
        write!(out, "{}", i + 1).unwrap();
        first = false;
    }
    out.push('\n');
}

/// Paired-alist container for a stabilizer code: an `N K` header line
/// followed by one alist block for the X-part matrix and one for the
/// Z-part matrix.
pub fn write_paired_alist(n: usize, k: usize, a1: &BinaryMatrix, a2: &BinaryMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", n, k).unwrap();
    write_block(&mut out, a1);
    write_block(&mut out, a2);
    out
}

/// Parse a paired-alist container; returns `(N, K, A1, A2)`.
pub fn parse_paired_alist(
    text: &str,
) -> Result<(usize, usize, BinaryMatrix, BinaryMatrix), AlistError> {
    let mut reader = LineReader::new(text);
    let (n, k) = reader.next_pair("code header")?;
    let a1 = parse_block(&mut reader)?;
    let a2 = parse_block(&mut reader)?;
    if a1.cols() != n || a2.cols() != n {
        return Err(AlistError::Inconsistent {
            reason: format!(
                "header says N={} but blocks have {} and {} columns",
                n,
                a1.cols(),
                a2.cols()
            ),
        });
    }
    if a1.rows() != a2.rows() {
        return Err(AlistError::Inconsistent {
            reason: format!(
                "X-part has {} rows but Z-part has {}",
                a1.rows(),
                a2.rows()
            ),
        });
    }
    Ok((n, k, a1, a2))
}
