//! Complex literals: `a`, `bi`, `a+bi`, `a-bi`, `i`, and polar `r e θ i`
//! (`0.8e34i` is `0.8·e^{34i}`). A trailing `i` after an `e` always means polar.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn bad(s: &str, why: &str) -> Error {
    Error::InvalidInput(format!("cannot parse complex number {s:?}: {why}"))
}

fn plain_decimal(s: &str) -> Option<f64> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit() || c == '.') {
        return None;
    }
    s.parse().ok()
}

fn real(s: &str, whole: &str) -> Result<f64> {
    let v: f64 = s.parse().map_err(|_| bad(whole, "invalid real part"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad(whole, "not finite"))
    }
}

fn imag_coeff(s: &str, whole: &str) -> Result<f64> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(s, whole),
    }
}

pub fn parse_complex(input: &str) -> Result<Complex64> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad(input, "empty"));
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(real(&s, input)?, 0.0));
    };
    if let Some((r, t)) = body.split_once(['e', 'E']) {
        if let (Some(r), Some(t)) = (plain_decimal(r), plain_decimal(t)) {
            return Ok(Complex64::from_polar(r, t));
        }
    }
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(real(&body[..k], input)?, imag_coeff(&body[k..], input)?)),
        None => Ok(Complex64::new(0.0, imag_coeff(body, input)?)),
    }
}

/// Comma-, semicolon- or whitespace-separated list of complex literals.
pub fn parse_complex_list(input: &str) -> Result<Vec<Complex64>> {
    input
        .split([',', ';', ' ', '\t', '\n'])
        .filter(|t| !t.is_empty())
        .map(parse_complex)
        .collect()
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_matrix(input: &str) -> Result<Vec<Vec<Complex64>>> {
    input
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|row| row.split(',').map(parse_complex).collect())
        .collect()
}
