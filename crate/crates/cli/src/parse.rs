//! Complex numbers and lists of them on the command line.
//!
//! A complex number is written either `re,im` or in `a+bi` form (`2`, `-i`,
//! `1.5-2e-3i`). Lists separate entries by `;` or whitespace, so
//! `"1,0; -1,0"` and `"1 -1"` both denote `[1, −1]`.

use num_complex::Complex64;

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

/// Imaginary coefficient from the text before `i` (`""`, `"+"`, `"-"` mean ±1).
fn imaginary(s: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => finite(s),
    }
}

pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty complex number".into());
    }
    if let Some((re, im)) = s.split_once(',') {
        return Ok(Complex64::new(finite(re)?, finite(im)?));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(finite(s)?, 0.0));
    };
    // split at the last sign that is neither leading nor an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(finite(&body[..k])?, imaginary(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imaginary(body)?)),
    }
}

pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    text.split(|c: char| c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(parse_complex)
        .collect()
}
