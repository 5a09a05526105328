//! Text forms used on the command line and in fixture files.
//!
//! ```text
//! float    := "-"? "0." bit+ ("e" int)?      first bit is 1
//! special  := "nan" | "inf" | "+inf" | "-inf" | "0" | "+0" | "-0"
//! overflow := "overflow(+)" | "overflow(-)"
//! fixture  := float float prec mode "->" (float | overflow) ternary
//! ```
//!
//! The precision of a float is its digit count; the exponent is a decimal
//! power of two and defaults to 0. `#` starts a comment in fixture files.

use std::fmt;

use thiserror::Error;

use crate::float::{Context, Float, FloatError, Precision, RoundingMode, Sign, Ternary};
use crate::rounding::{Overflow, Rounded};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error in {0:?}")]
    Syntax(String),
    #[error(transparent)]
    Float(#[from] FloatError),
}

impl ParseError {
    fn syntax(token: &str) -> Self {
        ParseError::Syntax(token.to_owned())
    }
}

/// Values that have a text form but no place in the add core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Special {
    NaN,
    Inf(Sign),
    Zero(Sign),
}

impl fmt::Display for Special {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Special::NaN => f.write_str("nan"),
            Special::Inf(Sign::Pos) => f.write_str("inf"),
            Special::Inf(Sign::Neg) => f.write_str("-inf"),
            Special::Zero(Sign::Pos) => f.write_str("0"),
            Special::Zero(Sign::Neg) => f.write_str("-0"),
        }
    }
}

/// Any operand token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Finite(Float),
    Special(Special),
}

pub fn parse_float(token: &str) -> Result<Float, ParseError> {
    parse_float_in(&Context::DEFAULT, token)
}

pub fn parse_float_in(ctx: &Context, token: &str) -> Result<Float, ParseError> {
    let (sign, rest) = match token.strip_prefix('-') {
        Some(rest) => (Sign::Neg, rest),
        None => (Sign::Pos, token),
    };
    let body = rest
        .strip_prefix("0.")
        .ok_or_else(|| ParseError::syntax(token))?;
    let (digits, exp) = match body.split_once('e') {
        Some((d, e)) => (d, Some(e)),
        None => (body, None),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(ParseError::syntax(token));
    }
    let exponent = match exp {
        None => 0,
        Some(e) => parse_exponent(e).ok_or_else(|| ParseError::syntax(token))?,
    };
    // Shape errors take precedence over value errors.
    let prec = ctx.precision(digits.len() as u64)?;
    if !digits.starts_with('1') {
        return Err(FloatError::NotNormalized.into());
    }
    Ok(ctx.make_float(sign, exponent, prec.bits(), digits)?)
}

/// Decimal exponent; values beyond `i64` saturate so the range check reports
/// them.
fn parse_exponent(s: &str) -> Option<i64> {
    let (neg, digits) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some(match digits.parse::<i64>() {
        Ok(v) if neg => -v,
        Ok(v) => v,
        Err(_) if neg => i64::MIN,
        Err(_) => i64::MAX,
    })
}

pub fn parse_special(token: &str) -> Option<Special> {
    Some(match token {
        "nan" => Special::NaN,
        "inf" | "+inf" => Special::Inf(Sign::Pos),
        "-inf" => Special::Inf(Sign::Neg),
        "0" | "+0" => Special::Zero(Sign::Pos),
        "-0" => Special::Zero(Sign::Neg),
        _ => return None,
    })
}

/// Parses a float or a special tag.
pub fn parse_value(token: &str) -> Result<Value, ParseError> {
    match parse_special(token) {
        Some(s) => Ok(Value::Special(s)),
        None => parse_float(token).map(Value::Finite),
    }
}

/// Canonical text form, e.g. `0.1011e0`.
pub fn format_float(x: &Float) -> String {
    let neg = if x.sign() == Sign::Neg { "-" } else { "" };
    format!("{neg}0.{}e{}", x.bit_string(), x.exponent())
}

pub fn parse_ternary(token: &str) -> Option<Ternary> {
    match token {
        "+1" | "1" => Some(Ternary::Above),
        "0" => Some(Ternary::Exact),
        "-1" => Some(Ternary::Below),
        _ => None,
    }
}

pub fn parse_overflow(token: &str) -> Option<Sign> {
    match token {
        "overflow(+)" => Some(Sign::Pos),
        "overflow(-)" => Some(Sign::Neg),
        _ => None,
    }
}

/// Recorded outcome of one fixture case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expected {
    Value { result: Float, ternary: Ternary },
    Overflow { sign: Sign, ternary: Ternary },
}

impl Expected {
    pub fn from_outcome(outcome: &Result<Rounded, Overflow>) -> Self {
        match outcome {
            Ok(r) => Expected::Value {
                result: r.value.clone(),
                ternary: r.ternary,
            },
            Err(o) => Expected::Overflow {
                sign: o.sign,
                ternary: o.ternary,
            },
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Value { result, ternary } => write!(f, "{result} {ternary}"),
            Expected::Overflow { sign, ternary } => {
                write!(f, "overflow({}) {ternary}", sign.as_char())
            }
        }
    }
}

/// One line of a fixture file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureCase {
    pub x: Float,
    pub y: Float,
    pub prec: Precision,
    pub mode: RoundingMode,
    pub expected: Expected,
}

impl fmt::Display for FixtureCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} -> {}",
            self.x, self.y, self.prec, self.mode, self.expected
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FixtureError {
    pub line: usize,
    pub message: String,
}

/// Parses one fixture line. Returns `Ok(None)` for blank and comment lines.
pub fn parse_fixture_line(line: &str) -> Result<Option<FixtureCase>, String> {
    let content = match line.split_once('#') {
        Some((before, _)) => before,
        None => line,
    };
    let fields: Vec<&str> = content.split_whitespace().collect();
    if fields.is_empty() {
        return Ok(None);
    }
    let [x, y, p, mode, arrow, result, ternary] = fields[..] else {
        return Err(format!("expected 7 fields, found {}", fields.len()));
    };
    if arrow != "->" {
        return Err(format!("expected '->', found {arrow:?}"));
    }
    let x = parse_float(x).map_err(|e| e.to_string())?;
    let y = parse_float(y).map_err(|e| e.to_string())?;
    let prec = p
        .parse::<u64>()
        .map_err(|_| format!("invalid precision {p:?}"))
        .and_then(|v| Precision::new(v).map_err(|e| e.to_string()))?;
    let mode = RoundingMode::from_name(mode).ok_or_else(|| format!("unknown mode {mode:?}"))?;
    let ternary = parse_ternary(ternary).ok_or_else(|| format!("invalid ternary {ternary:?}"))?;
    let expected = match parse_overflow(result) {
        Some(sign) => Expected::Overflow { sign, ternary },
        None => Expected::Value {
            result: parse_float(result).map_err(|e| e.to_string())?,
            ternary,
        },
    };
    Ok(Some(FixtureCase {
        x,
        y,
        prec,
        mode,
        expected,
    }))
}

/// Parses a whole fixture file, keeping 1-based line numbers.
pub fn parse_fixtures(text: &str) -> Result<Vec<(usize, FixtureCase)>, FixtureError> {
    let mut cases = Vec::new();
    for (i, line) in text.lines().enumerate() {
        match parse_fixture_line(line) {
            Ok(Some(case)) => cases.push((i + 1, case)),
            Ok(None) => {}
            Err(message) => {
                return Err(FixtureError {
                    line: i + 1,
                    message,
                })
            }
        }
    }
    Ok(cases)
}
