//! Text instance files.
//!
//! Knapsack:
//!
//! ```text
//! kp n=<n> m=<m>
//! profits
//! <m lines of n values>
//! weights
//! <m lines of n values>
//! capacities
//! <one line of m values>
//! ```
//!
//! NK-landscape, one line per (objective, bit) in objective-major order,
//! neighbour indices before the colon and the `2^(k+1)` table entries after:
//!
//! ```text
//! nk n=<n> k=<k> m=<m>
//! <k indices> : <2^(k+1) values>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use super::{KnapsackInstance, NkInstance, ProblemInstance};
use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::str::FromStr;

pub fn instance_save(inst: &ProblemInstance) -> String {
    let mut out = String::new();
    match inst {
        ProblemInstance::Knapsack(kp) => {
            let n = kp.profits()[0].len();
            let m = kp.capacities().len();
            writeln!(out, "kp n={n} m={m}").unwrap();
            out.push_str("profits\n");
            kp.profits().iter().for_each(|row| push_row(&mut out, row));
            out.push_str("weights\n");
            kp.weights().iter().for_each(|row| push_row(&mut out, row));
            out.push_str("capacities\n");
            push_row(&mut out, kp.capacities());
        }
        ProblemInstance::Nk(nk) => {
            let n = nk.neighbors()[0].len();
            writeln!(out, "nk n={n} k={} m={}", nk.k(), nk.neighbors().len()).unwrap();
            for (obj_nb, obj_tables) in nk.neighbors().iter().zip(nk.tables()) {
                for (nb, table) in obj_nb.iter().zip(obj_tables) {
                    for x in nb {
                        write!(out, "{x} ").unwrap();
                    }
                    out.push(':');
                    for v in table {
                        write!(out, " {v}").unwrap();
                    }
                    out.push('\n');
                }
            }
        }
    }
    out
}

fn push_row(out: &mut String, row: &[f64]) {
    let line: Vec<String> = row.iter().map(f64::to_string).collect();
    out.push_str(&line.join(" "));
    out.push('\n');
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self { inner: text.lines().enumerate(), last: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        for (idx, line) in self.inner.by_ref() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            self.last = idx + 1;
            return Ok((idx + 1, trimmed));
        }
        Err(Error::Parse { line: self.last + 1, message: format!("unexpected end of file, expected {what}") })
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let (line, text) = self.next(word)?;
        if text != word {
            return Err(Error::Parse { line, message: format!("expected {word:?}, found {text:?}") });
        }
        Ok(())
    }

    fn row<T: FromStr>(&mut self, what: &str, len: usize) -> Result<Vec<T>>
    where
        T::Err: std::fmt::Display,
    {
        let (line, text) = self.next(what)?;
        parse_row(text, line, what, len)
    }
}

fn parse_row<T: FromStr>(text: &str, line: usize, what: &str, len: usize) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    let values = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<T>().map_err(|e| Error::Parse { line, message: format!("bad value {tok:?} in {what}: {e}") })
        })
        .collect::<Result<Vec<T>>>()?;
    if values.len() != len {
        return Err(Error::Parse { line, message: format!("{what}: expected {len} values, found {}", values.len()) });
    }
    Ok(values)
}

fn header_field(fields: &[(&str, &str)], key: &str, line: usize) -> Result<usize> {
    let raw = fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::Parse { line, message: format!("header lacks {key}=") })?;
    raw.parse().map_err(|_| Error::Parse { line, message: format!("bad {key} value {raw:?}") })
}

pub fn instance_load(text: &str) -> Result<ProblemInstance> {
    let mut lines = Lines::new(text);
    let (hline, header) = lines.next("header")?;
    let mut tokens = header.split_whitespace();
    let family = tokens.next().unwrap_or_default();
    let fields: Vec<(&str, &str)> = tokens
        .map(|t| {
            t.split_once('=').ok_or_else(|| Error::Parse { line: hline, message: format!("bad header field {t:?}") })
        })
        .collect::<Result<_>>()?;
    let to_parse = |e: Error| match e {
        Error::InvalidParameter(message) => Error::Parse { line: hline, message },
        other => other,
    };

    match family {
        "kp" => {
            let n = header_field(&fields, "n", hline)?;
            let m = header_field(&fields, "m", hline)?;
            lines.keyword("profits")?;
            let profits = (0..m).map(|_| lines.row("profit row", n)).collect::<Result<Vec<_>>>()?;
            lines.keyword("weights")?;
            let weights = (0..m).map(|_| lines.row("weight row", n)).collect::<Result<Vec<_>>>()?;
            lines.keyword("capacities")?;
            let capacities = lines.row("capacities", m)?;
            trailing(&mut lines)?;
            KnapsackInstance::new(profits, weights, capacities).map(ProblemInstance::Knapsack).map_err(to_parse)
        }
        "nk" => {
            let n = header_field(&fields, "n", hline)?;
            let k = header_field(&fields, "k", hline)?;
            let m = header_field(&fields, "m", hline)?;
            if k >= n || k > super::nk::MAX_K {
                return Err(Error::Parse { line: hline, message: format!("unsupported k={k} for n={n}") });
            }
            let width = 1usize << (k + 1);
            let mut neighbors = Vec::with_capacity(m);
            let mut tables = Vec::with_capacity(m);
            for _ in 0..m {
                let mut obj_nb = Vec::with_capacity(n);
                let mut obj_tables = Vec::with_capacity(n);
                for _ in 0..n {
                    let (line, text) = lines.next("NK bit line")?;
                    let (left, right) = text
                        .split_once(':')
                        .ok_or_else(|| Error::Parse { line, message: "missing ':' separator".into() })?;
                    obj_nb.push(parse_row::<usize>(left, line, "neighbour list", k)?);
                    obj_tables.push(parse_row::<f64>(right, line, "table", width)?);
                }
                neighbors.push(obj_nb);
                tables.push(obj_tables);
            }
            trailing(&mut lines)?;
            NkInstance::new(k, neighbors, tables).map(ProblemInstance::Nk).map_err(to_parse)
        }
        other => Err(Error::Parse { line: hline, message: format!("unknown problem family {other:?}") }),
    }
}

fn trailing(lines: &mut Lines<'_>) -> Result<()> {
    match lines.next("") {
        Ok((line, text)) => Err(Error::Parse { line, message: format!("unexpected trailing content {text:?}") }),
        Err(_) => Ok(()),
    }
}
