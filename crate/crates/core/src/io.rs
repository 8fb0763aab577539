//! Matrix files: a JSON document and a whitespace-separated text layout.
//!
//! JSON:
//!
//! ```text
//! {"mode": "float", "rows": 2, "cols": 2, "entries": [[1, 0], [2, 0], [3, 0], [4, 0]]}
//! {"mode": "exact", "rows": 1, "cols": 2, "entries": ["1/2", "3-1/4i"]}
//! ```
//!
//! Float entries are `[re, im]` pairs (a bare number is accepted as a real
//! entry), exact entries are strings in the scalar syntax `p/q`, `p/q+r/si`.
//!
//! Text: a header line `m n` with an optional third token `exact` or `float`,
//! then `m` lines of `n` entries. Entries are written `a`, `bi` or `a+bi`,
//! where `a` and `b` are integers, fractions or decimals. Without a mode tag
//! the matrix is exact when no entry uses decimal or exponent notation.
//! Lines starting with `#` are ignored.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{AnyMatrix, Matrix};
use crate::scalar::{format_exact, ExactComplex, Scalar};

/// Parse either layout; a document whose first non-blank character is `{`
/// is read as JSON.
pub fn parse_matrix(text: &str) -> Result<AnyMatrix> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_json(text: &str) -> Result<AnyMatrix> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| parse_err(1, 1, "expected a JSON object"))?;
    let field = |name: &str| {
        obj.get(name)
            .ok_or_else(|| parse_err(1, 1, format!("missing field \"{name}\"")))
    };
    let mode = field("mode")?
        .as_str()
        .ok_or_else(|| parse_err(1, 1, "\"mode\" must be a string"))?;
    let dim = |name: &str| -> Result<usize> {
        field(name)?
            .as_u64()
            .map(|v| v as usize)
            .ok_or_else(|| parse_err(1, 1, format!("\"{name}\" must be a non-negative integer")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let entries = field("entries")?
        .as_array()
        .ok_or_else(|| parse_err(1, 1, "\"entries\" must be an array"))?;
    if entries.len() != rows * cols {
        return Err(Error::Shape(format!(
            "{} entries for a {rows}x{cols} matrix",
            entries.len()
        )));
    }
    let bad = |i: usize, what: &str| {
        parse_err(
            1,
            1,
            format!(
                "entry {i} (row {}, column {}): {what}",
                i / cols.max(1) + 1,
                i % cols.max(1) + 1
            ),
        )
    };
    match mode {
        "float" => {
            let data = entries
                .iter()
                .enumerate()
                .map(|(i, e)| match e {
                    Value::Array(pair) if pair.len() == 2 => {
                        match (pair[0].as_f64(), pair[1].as_f64()) {
                            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                            _ => Err(bad(i, "expected [re, im] numbers")),
                        }
                    }
                    Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
                    _ => Err(bad(i, "expected [re, im]")),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyMatrix::Float(Matrix::new(rows, cols, data)?))
        }
        "exact" => {
            let data = entries
                .iter()
                .enumerate()
                .map(|(i, e)| match e {
                    Value::String(s) => {
                        parse_exact(s).ok_or_else(|| bad(i, "malformed exact scalar"))
                    }
                    Value::Number(n) if n.is_i64() => {
                        Ok(ExactComplex::from_i64(n.as_i64().unwrap_or(0)))
                    }
                    _ => Err(bad(i, "expected a string \"p/q\" or \"p/q+r/si\"")),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyMatrix::Exact(Matrix::new(rows, cols, data)?))
        }
        other => Err(parse_err(1, 1, format!("unknown mode \"{other}\""))),
    }
}

/// Split `a+bi` into its real and imaginary texts. A sign starts the
/// imaginary part unless it is leading or follows an exponent marker.
fn split_complex(token: &str) -> Option<(&str, &str)> {
    let Some(body) = token.strip_suffix('i') else {
        return Some((token, ""));
    };
    let bytes = body.as_bytes();
    let cut = (1..bytes.len())
        .rev()
        .find(|&p| (bytes[p] == b'+' || bytes[p] == b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let (re, im) = match cut {
        Some(p) => (&body[..p], &body[p..]),
        None => ("", body),
    };
    Some((
        re,
        if im.is_empty() || im == "+" || im == "-" {
            if im == "-" {
                "-1"
            } else {
                "1"
            }
        } else {
            im
        },
    ))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() || s.starts_with(['+', '/']) {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Exact scalar syntax: `p`, `p/q`, `bi`, `p/q+r/si`.
pub fn parse_exact(token: &str) -> Option<ExactComplex> {
    let (re, im) = split_complex(token.trim())?;
    let re = if re.is_empty() {
        BigRational::zero()
    } else {
        parse_rational(re)?
    };
    let im = if im.is_empty() {
        BigRational::zero()
    } else {
        parse_rational(im)?
    };
    Some(Complex::new(re, im))
}

/// Float scalar syntax: `a`, `bi`, `a+bi` with decimal parts; fractions are
/// accepted and evaluated.
pub fn parse_float(token: &str) -> Option<Complex64> {
    let part = |s: &str| -> Option<f64> {
        if s.is_empty() {
            return Some(0.0);
        }
        // decimals go through the correctly rounded float parser
        if let Ok(v) = f64::from_str(s) {
            return v.is_finite().then_some(v);
        }
        let r = parse_rational(s)?;
        Some(ExactComplex::new(r, BigRational::zero()).to_c64().re)
    };
    let (re, im) = split_complex(token.trim())?;
    Some(Complex64::new(part(re)?, part(im)?))
}

fn parse_text(text: &str) -> Result<AnyMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty input"))?;
    let head: Vec<(usize, &str)> = tokens(header);
    if head.len() < 2 || head.len() > 3 {
        return Err(parse_err(
            hline,
            1,
            "header must be \"m n\" or \"m n exact|float\"",
        ));
    }
    let dim = |(col, t): (usize, &str)| {
        t.parse::<usize>()
            .map_err(|_| parse_err(hline, col, format!("expected a dimension, found \"{t}\"")))
    };
    let (rows, cols) = (dim(head[0])?, dim(head[1])?);
    let mode = match head.get(2) {
        None => None,
        Some((_, "exact")) => Some(true),
        Some((_, "float")) => Some(false),
        Some(&(col, t)) => return Err(parse_err(hline, col, format!("unknown mode \"{t}\""))),
    };

    let mut cells: Vec<(usize, usize, &str)> = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0;
    for (lno, line) in lines {
        let toks = tokens(line);
        if seen_rows == rows {
            return Err(Error::Shape(format!("line {lno}: more than {rows} rows")));
        }
        if toks.len() != cols {
            return Err(Error::Shape(format!(
                "line {lno}: {} entries, expected {cols}",
                toks.len()
            )));
        }
        cells.extend(toks.into_iter().map(|(c, t)| (lno, c, t)));
        seen_rows += 1;
    }
    if seen_rows != rows {
        return Err(Error::Shape(format!("{seen_rows} rows, expected {rows}")));
    }

    let exact = match mode {
        Some(e) => e,
        None => cells.iter().all(|(_, _, t)| parse_exact(t).is_some()),
    };
    if exact {
        let data = cells
            .iter()
            .map(|&(l, c, t)| {
                parse_exact(t)
                    .ok_or_else(|| parse_err(l, c, format!("malformed exact scalar \"{t}\"")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AnyMatrix::Exact(Matrix::new(rows, cols, data)?))
    } else {
        let data = cells
            .iter()
            .map(|&(l, c, t)| {
                parse_float(t).ok_or_else(|| parse_err(l, c, format!("malformed scalar \"{t}\"")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AnyMatrix::Float(Matrix::new(rows, cols, data)?))
    }
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((pos + 1, byte)),
            (true, Some((col, b))) => {
                out.push((col, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((col, b)) = start {
        out.push((col, &line[b..]));
    }
    out
}

pub fn to_json(m: &AnyMatrix) -> Value {
    let (rows, cols) = m.dims();
    let entries: Vec<Value> = match m {
        AnyMatrix::Exact(a) => a.entries().iter().map(|z| json!(format_exact(z))).collect(),
        AnyMatrix::Float(a) => a.entries().iter().map(|z| json!([z.re, z.im])).collect(),
    };
    json!({"mode": m.mode(), "rows": rows, "cols": cols, "entries": entries})
}

/// Text layout with an explicit mode tag. Float parts use the shortest
/// representation that reads back to the same double.
pub fn to_text(m: &AnyMatrix) -> String {
    let (rows, cols) = m.dims();
    let mut out = format!("{rows} {cols} {}\n", m.mode());
    for i in 0..rows {
        let row: Vec<String> = match m {
            AnyMatrix::Exact(a) => a.row(i).iter().map(Scalar::to_text).collect(),
            AnyMatrix::Float(a) => a.row(i).iter().map(Scalar::to_text).collect(),
        };
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
