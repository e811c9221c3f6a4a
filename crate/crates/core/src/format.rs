//! Plain-text Cayley table format.
//!
//! ```text
//! # optional comments
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! Lines whose first non-blank character is `#` are comments and blank lines
//! are ignored. The first remaining line is the decimal order `n`; exactly `n`
//! rows of `n` whitespace-separated symbols from `0..n` follow. A symbol's
//! decimal value is its element index.

use std::fmt::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::table::QuasigroupTable;

pub fn parse_table(text: &str) -> Result<QuasigroupTable> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedInput("missing order line".into()))?;
    let order: usize = header.parse().map_err(|_| {
        Error::MalformedInput(format!(
            "line {header_no}: expected an order, found {header:?}"
        ))
    })?;
    if order == 0 {
        return Err(Error::MalformedInput("order must be positive".into()));
    }
    if order > crate::MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            max: crate::MAX_ORDER,
        });
    }

    let mut rows = Vec::with_capacity(order);
    for (line_no, line) in lines {
        if rows.len() == order {
            return Err(Error::MalformedInput(format!(
                "line {line_no}: unexpected content after {order} rows"
            )));
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .ok()
                    .filter(|&v| v < order)
                    .ok_or_else(|| {
                        Error::MalformedInput(format!("line {line_no}: unknown symbol {tok:?}"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != order {
            return Err(Error::MalformedInput(format!(
                "line {line_no}: expected {order} symbols, found {}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != order {
        return Err(Error::MalformedInput(format!(
            "expected {order} rows, found {}",
            rows.len()
        )));
    }
    QuasigroupTable::from_rows(rows)
}

/// Renders `q` in the text format, with a trailing newline.
pub fn format_table(q: &QuasigroupTable) -> String {
    let mut out = String::new();
    writeln!(out, "{}", q.order()).unwrap();
    for x in 0..q.order() {
        let row: Vec<String> = q.row(x).map(|v| v.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

impl FromStr for QuasigroupTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_table(s)
    }
}

impl std::fmt::Display for QuasigroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_table(self))
    }
}
