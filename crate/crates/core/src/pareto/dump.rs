//! Plain-text front dumps: a `# m=<m> count=<count>` header, then one
//! space-separated objective vector per line.

use crate::error::{Error, Result};
use std::fmt::Write as _;

pub fn write_dump<T: AsRef<[f64]>>(points: &[T], m: usize) -> String {
    let mut out = format!("# m={m} count={}\n", points.len());
    for p in points {
        let p = p.as_ref();
        debug_assert_eq!(p.len(), m);
        for (i, v) in p.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            // `{}` on f64 prints the shortest representation that round-trips.
            write!(out, "{v}").expect("write to String");
        }
        out.push('\n');
    }
    out
}

/// Returns `(m, points)`.
pub fn parse_dump(text: &str) -> Result<(usize, Vec<Vec<f64>>)> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty dump".into() })?;
    let bad_header = || Error::Parse { line: 1, message: format!("bad dump header {header:?}") };
    let rest = header.strip_prefix("# ").ok_or_else(bad_header)?;
    let mut m = None;
    let mut count = None;
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("m", v)) => m = v.parse::<usize>().ok(),
            Some(("count", v)) => count = v.parse::<usize>().ok(),
            _ => return Err(bad_header()),
        }
    }
    let (m, count) = (m.ok_or_else(bad_header)?, count.ok_or_else(bad_header)?);

    let mut points = Vec::with_capacity(count);
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let values = line
            .split_whitespace()
            .map(str::parse::<f64>)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse { line: idx + 1, message: e.to_string() })?;
        if values.len() != m {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected {m} values, found {}", values.len()),
            });
        }
        points.push(values);
    }
    if points.len() != count {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("header promises {count} points, found {}", points.len()),
        });
    }
    Ok((m, points))
}
