//! CSV ingestion of `x,f` samples.

use crate::error::CliError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::path::Path;

/// One data row with the file line it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub line: u64,
    pub x: f64,
    pub f: f64,
}

/// Parses a decimal literal or an exact fraction `p/q`, rounding the
/// fraction to the nearest double.
pub fn parse_number(text: &str) -> Option<f64> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return BigRational::new(p, q).to_f64().filter(|v| v.is_finite());
    }
    text.parse::<f64>().ok().filter(|v| v.is_finite())
}

pub fn read_samples(path: &Path) -> Result<Vec<Sample>, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let bytes = std::fs::read(path).map_err(io)?;
    parse_samples(&bytes)
}

/// Reads two-column records. A first record whose `x` field is not numeric
/// is taken as a header.
pub fn parse_samples(bytes: &[u8]) -> Result<Vec<Sample>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let mut samples = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::Validation(format!("line {line}: {e}"))
        })?;
        let line = record.position().map_or(k as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 2 {
            return Err(CliError::Validation(format!(
                "line {line}: expected 2 fields `x,f`, found {}",
                record.len()
            )));
        }
        let x = parse_number(&record[0]);
        if k == 0 && x.is_none() && parse_number(&record[1]).is_none() {
            continue;
        }
        let field = |i: usize, name: &str, value: Option<f64>| {
            value
                .ok_or_else(|| CliError::Validation(format!("line {line}: cannot parse {name} value `{}`", &record[i])))
        };
        samples.push(Sample {
            line,
            x: field(0, "x", x)?,
            f: field(1, "f", parse_number(&record[1]))?,
        });
    }
    if samples.is_empty() {
        return Err(CliError::Validation("input contains no data rows".into()));
    }
    Ok(samples)
}
