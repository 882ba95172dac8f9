//! Plain-text matrix format.
//!
//! ```text
//! # comment lines start with '#'
//! 2 2
//! 16/5 1.5
//! -7/5 0
//! ```
//!
//! The first significant line holds `rows cols`; each following line is one
//! row. Entries are decimals or rationals `a/b` with integer `a`, `b`.

use super::RealMatrix;
use crate::{Error, Result};

/// Significant lines of a text document, with 1-based line numbers.
pub struct MatrixLines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last_line: usize,
}

impl<'a> MatrixLines<'a> {
    pub fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l))
                .filter(|(_, l)| {
                    let t = l.trim_start();
                    !t.is_empty() && !t.starts_with('#')
                }),
        );
        Self {
            inner: it.peekable(),
            last_line: text.lines().count(),
        }
    }

    pub fn next_line(&mut self) -> Option<(usize, &'a str)> {
        self.inner.next()
    }

    pub fn peek_line(&mut self) -> Option<(usize, &'a str)> {
        self.inner.peek().copied()
    }

    /// End-of-input position for diagnostics.
    pub fn eof_line(&self) -> usize {
        self.last_line + 1
    }

    /// Reads one `rows cols` header plus `rows` rows.
    pub fn read_matrix(&mut self) -> Result<RealMatrix> {
        let (hline, header) = self.next_line().ok_or_else(|| Error::Parse {
            line: self.eof_line(),
            column: 1,
            message: "expected `rows cols` header".into(),
        })?;
        let dims: Vec<(usize, &str)> = tokens(header).collect();
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: hline,
                column: 1,
                message: format!("header needs exactly 2 fields, found {}", dims.len()),
            });
        }
        let parse_dim = |(col, tok): (usize, &str)| -> Result<usize> {
            match tok.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(Error::Parse {
                    line: hline,
                    column: col,
                    message: format!("invalid dimension `{tok}`"),
                }),
            }
        };
        let rows = parse_dim(dims[0])?;
        let cols = parse_dim(dims[1])?;

        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (lno, line) = self.next_line().ok_or_else(|| Error::Parse {
                line: self.eof_line(),
                column: 1,
                message: format!("expected {rows} rows, found {r}"),
            })?;
            let mut count = 0;
            for (col, tok) in tokens(line) {
                count += 1;
                if count > cols {
                    return Err(Error::Parse {
                        line: lno,
                        column: col,
                        message: format!("row has more than {cols} entries"),
                    });
                }
                data.push(parse_entry(tok).map_err(|message| Error::Parse {
                    line: lno,
                    column: col,
                    message,
                })?);
            }
            if count < cols {
                return Err(Error::Parse {
                    line: lno,
                    column: line.len() + 1,
                    message: format!("row has {count} entries, expected {cols}"),
                });
            }
        }
        RealMatrix::new(rows, cols, data)
    }
}

/// Whitespace-separated tokens with their 1-based starting column.
pub(crate) fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}

/// Parses a decimal or an `a/b` rational.
pub fn parse_entry(tok: &str) -> std::result::Result<f64, String> {
    let value = if let Some((num, den)) = tok.split_once('/') {
        let a: i64 = num
            .parse()
            .map_err(|_| format!("invalid rational numerator `{num}`"))?;
        let b: i64 = den
            .parse()
            .map_err(|_| format!("invalid rational denominator `{den}`"))?;
        if b == 0 {
            return Err(format!("zero denominator in `{tok}`"));
        }
        a as f64 / b as f64
    } else {
        tok.parse::<f64>()
            .map_err(|_| format!("invalid number `{tok}`"))?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("non-finite entry `{tok}`"))
    }
}

pub fn parse_matrix(text: &str) -> Result<RealMatrix> {
    let mut lines = MatrixLines::new(text);
    let m = lines.read_matrix()?;
    if let Some((line, _)) = lines.next_line() {
        return Err(Error::Parse {
            line,
            column: 1,
            message: "unexpected content after matrix".into(),
        });
    }
    Ok(m)
}

/// 17 significant digits; parses back to the identical `f64`.
pub fn format_entry(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_matrix(m: &RealMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&x| format_entry(x)).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}
