//! Line-oriented pointset files.
//!
//! `#` starts a comment. Header directives `mode exact|float`, `dim <n>`,
//! and (float mode only) `tol <float>` must precede the first `point` line.
//! Each `point c_1 ... c_n` line gives one point; coordinates are `p/q`
//! fractions, integers, or decimal literals — decimals are illegal in exact
//! mode. Writers emit single spaces; readers accept arbitrary whitespace.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{ConfigError, PointConfiguration, PointSet, DEFAULT_TOLERANCE};
use crate::scalar::Rational;

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Exact,
    Float,
}

fn err(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Parse { line, message: message.into() }
}

/// Parses a pointset file into a validated configuration.
pub fn parse_config(text: &str) -> Result<PointConfiguration, ConfigError> {
    let mut mode: Option<Mode> = None;
    let mut dim: Option<usize> = None;
    let mut tol: Option<(usize, f64)> = None;
    let mut exact_points: Vec<Vec<Rational>> = Vec::new();
    let mut float_points: Vec<Vec<f64>> = Vec::new();
    let mut seen_point = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let keyword = fields.next().expect("non-empty line");
        match keyword {
            "mode" => {
                if seen_point {
                    return Err(err(line_no, "'mode' must precede the first point"));
                }
                if mode.is_some() {
                    return Err(err(line_no, "duplicate 'mode' directive"));
                }
                match fields.next() {
                    Some("exact") => mode = Some(Mode::Exact),
                    Some("float") => mode = Some(Mode::Float),
                    Some(other) => {
                        return Err(err(line_no, format!("unknown mode '{other}'")));
                    }
                    None => return Err(err(line_no, "expected 'exact' or 'float' after 'mode'")),
                }
                if fields.next().is_some() {
                    return Err(err(line_no, "trailing fields after mode"));
                }
            }
            "dim" => {
                if seen_point {
                    return Err(err(line_no, "'dim' must precede the first point"));
                }
                if dim.is_some() {
                    return Err(err(line_no, "duplicate 'dim' directive"));
                }
                let value = fields
                    .next()
                    .ok_or_else(|| err(line_no, "expected a dimension after 'dim'"))?;
                let n: usize = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad dimension '{value}'")))?;
                if fields.next().is_some() {
                    return Err(err(line_no, "trailing fields after dim"));
                }
                dim = Some(n);
            }
            "tol" => {
                if seen_point {
                    return Err(err(line_no, "'tol' must precede the first point"));
                }
                if tol.is_some() {
                    return Err(err(line_no, "duplicate 'tol' directive"));
                }
                if mode == Some(Mode::Exact) {
                    return Err(err(line_no, "'tol' applies to float mode only"));
                }
                let value = fields
                    .next()
                    .ok_or_else(|| err(line_no, "expected a tolerance after 'tol'"))?;
                let t: f64 = value
                    .parse()
                    .map_err(|_| err(line_no, format!("bad tolerance '{value}'")))?;
                if fields.next().is_some() {
                    return Err(err(line_no, "trailing fields after tol"));
                }
                tol = Some((line_no, t));
            }
            "point" => {
                let mode = mode.ok_or_else(|| err(line_no, "'mode' must precede points"))?;
                let dim = dim.ok_or_else(|| err(line_no, "'dim' must precede points"))?;
                seen_point = true;
                let coords: Vec<&str> = fields.collect();
                if coords.len() != dim {
                    return Err(err(
                        line_no,
                        format!("expected {dim} coordinates, found {}", coords.len()),
                    ));
                }
                match mode {
                    Mode::Exact => {
                        let point = coords
                            .iter()
                            .map(|c| parse_exact_coord(c, line_no))
                            .collect::<Result<Vec<_>, _>>()?;
                        exact_points.push(point);
                    }
                    Mode::Float => {
                        let point = coords
                            .iter()
                            .map(|c| parse_float_coord(c, line_no))
                            .collect::<Result<Vec<_>, _>>()?;
                        float_points.push(point);
                    }
                }
            }
            other => {
                return Err(err(line_no, format!("unknown directive '{other}'")));
            }
        }
    }

    let mode = mode.ok_or_else(|| err(text.lines().count() + 1, "missing 'mode' directive"))?;
    let dim = dim.ok_or_else(|| err(text.lines().count() + 1, "missing 'dim' directive"))?;
    match mode {
        Mode::Exact => {
            if let Some((line, _)) = tol {
                return Err(err(line, "'tol' applies to float mode only"));
            }
            Ok(PointConfiguration::Exact(PointSet::exact(dim, exact_points)?))
        }
        Mode::Float => {
            let tol = tol.map_or(DEFAULT_TOLERANCE, |(_, t)| t);
            Ok(PointConfiguration::Float(PointSet::float(dim, float_points, tol)?))
        }
    }
}

fn parse_exact_coord(text: &str, line: usize) -> Result<Rational, ConfigError> {
    if text.contains('.') {
        return Err(err(line, format!("decimal '{text}' is illegal in exact mode")));
    }
    if let Some((num, den)) = text.split_once('/') {
        let p: BigInt = num
            .parse()
            .map_err(|_| err(line, format!("bad numerator '{num}'")))?;
        let q: BigInt = den
            .parse()
            .map_err(|_| err(line, format!("bad denominator '{den}'")))?;
        if q.is_zero() {
            return Err(err(line, "zero denominator"));
        }
        Ok(Rational::new(p, q))
    } else {
        let p: BigInt = text
            .parse()
            .map_err(|_| err(line, format!("bad coordinate '{text}'")))?;
        Ok(Rational::from(p))
    }
}

fn parse_float_coord(text: &str, line: usize) -> Result<f64, ConfigError> {
    // Fractions are accepted in float files for convenience.
    if let Some((num, den)) = text.split_once('/') {
        let q = parse_exact_coord(text, line).map_err(|_| {
            err(line, format!("bad fraction '{num}/{den}'"))
        })?;
        return q
            .to_f64()
            .ok_or_else(|| err(line, format!("fraction '{text}' overflows f64")));
    }
    text.parse()
        .map_err(|_| err(line, format!("bad coordinate '{text}'")))
}

/// Renders a configuration in the pointset format; `parse_config` inverts
/// this exactly (f64 coordinates use the shortest round-tripping decimal).
pub fn write_config(config: &PointConfiguration) -> String {
    let mut out = String::new();
    match config {
        PointConfiguration::Exact(set) => {
            out.push_str("mode exact\n");
            out.push_str(&format!("dim {}\n", set.dim()));
            for point in set.points() {
                out.push_str("point");
                for c in point {
                    out.push_str(&format!(" {c}"));
                }
                out.push('\n');
            }
        }
        PointConfiguration::Float(set) => {
            out.push_str("mode float\n");
            out.push_str(&format!("dim {}\n", set.dim()));
            out.push_str(&format!("tol {}\n", set.tolerance()));
            for point in set.points() {
                out.push_str("point");
                for c in point {
                    out.push_str(&format!(" {c}"));
                }
                out.push('\n');
            }
        }
    }
    out
}
