//! Plain-text matrix format.
//!
//! ```text
//! # optional comment lines anywhere
//! 7
//! 2 2
//! 0 1
//! 1
//! 0
//! 0 1
//! ```
//!
//! Line 1 holds the prime, line 2 the dimensions, then one line per entry in
//! row-major order listing coefficients from degree 0 upward. The zero
//! polynomial is written `0`. Coefficients may be any integers and are
//! reduced modulo p on input; output is canonical.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::polmat::{PolMat, Shift};
use crate::poly::Poly;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses a matrix in the text format.
pub fn parse_matrix(text: &str) -> Result<PolMat> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'));
    let mut next_line = |what: &str| -> Result<(usize, &str)> {
        lines
            .next()
            .ok_or_else(|| parse_err(0, format!("unexpected end of input, expected {what}")))
    };

    let (ln, l) = next_line("the prime")?;
    let p: u64 = l
        .parse()
        .map_err(|_| parse_err(ln, format!("invalid prime {l:?}")))?;
    let f = PrimeModulus::new(p).map_err(|e| parse_err(ln, e.to_string()))?;

    let (ln, l) = next_line("the dimensions")?;
    let dims: Vec<usize> = l
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| parse_err(ln, format!("invalid dimensions {l:?}")))?;
    let [m, n] = dims[..] else {
        return Err(parse_err(ln, "expected two dimensions \"m n\""));
    };

    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let mut row = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, l) = next_line("a matrix entry")?;
            row.push(parse_poly_line(f, ln, l)?);
        }
        rows.push(row);
    }
    if let Some((ln, l)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(parse_err(ln, format!("trailing content {l:?}")));
    }
    if m == 0 || n == 0 {
        return Ok(PolMat::zeros(f, m, n));
    }
    PolMat::from_rows(f, rows)
}

fn parse_poly_line(f: PrimeModulus, ln: usize, l: &str) -> Result<Poly> {
    if l.is_empty() {
        return Err(parse_err(
            ln,
            "empty entry line (write 0 for the zero polynomial)",
        ));
    }
    let coeffs = l
        .split(' ')
        .map(|t| {
            t.parse::<i128>()
                .map(|v| f.reduce_i128(v))
                .map_err(|_| parse_err(ln, format!("invalid coefficient {t:?}")))
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(Poly::from_coeffs(f, coeffs))
}

/// Writes a matrix in the text format, with a trailing newline.
pub fn write_matrix(a: &PolMat) -> String {
    let mut out = String::new();
    writeln!(out, "{}", a.modulus().value()).unwrap();
    writeln!(out, "{} {}", a.rows(), a.cols()).unwrap();
    for e in a.entries() {
        out.push_str(&poly_line(e));
        out.push('\n');
    }
    out
}

/// One entry line: space-separated coefficients, `0` for the zero polynomial.
pub fn poly_line(e: &Poly) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let parts: Vec<String> = e.coeffs().iter().map(u64::to_string).collect();
    parts.join(" ")
}

/// Parses a comma-separated list of integers.
pub fn parse_shift(text: &str) -> Result<Shift> {
    parse_int_list(text).map(Shift)
}

pub(crate) fn parse_int_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| parse_err(1, format!("invalid integer {t:?}")))
        })
        .collect()
}

/// Parses a comma-separated list of non-negative orders.
pub fn parse_orders(text: &str) -> Result<Vec<usize>> {
    parse_int_list(text)
}
