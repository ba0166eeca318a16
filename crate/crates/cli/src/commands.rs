use crate::error::CliError;
use crate::input::{read_samples, Sample};
use crate::report::FitReport;
use bernfit::oracle::{chebyshev_vandermonde, condition_number, vandermonde};
use bernfit::{assemble_bv, exact_fit_f64, fit, relative_errors, Method, NodeSet};
use std::fmt::Write;
use std::path::Path;

/// Reads samples, optionally maps `[a, b]` onto `[0, 1]`, and validates the
/// nodes, naming the offending row on failure.
pub fn load_nodes(path: &Path, interval: Option<(f64, f64)>) -> Result<(NodeSet, Vec<f64>), CliError> {
    let samples = read_samples(path)?;
    let mut xs: Vec<f64> = samples.iter().map(|s| s.x).collect();
    if let Some((a, b)) = interval {
        let (lo, hi) = xs
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
        if !(a < lo && b > hi) {
            return Err(CliError::Validation(format!(
                "interval [{a}, {b}] must strictly contain the abscissas, which span [{lo}, {hi}]"
            )));
        }
        xs.iter_mut().for_each(|x| *x = (*x - a) / (b - a));
    }
    let nodes = NodeSet::new(xs).map_err(|e| name_row(e, &samples))?;
    Ok((nodes, samples.iter().map(|s| s.f).collect()))
}

fn name_row(e: bernfit::Error, samples: &[Sample]) -> CliError {
    match e {
        bernfit::Error::InvalidNode { index, reason } => CliError::Validation(format!(
            "row {} (line {}): node {reason}",
            index + 1,
            samples[index].line
        )),
        other => other.into(),
    }
}

pub struct FitOptions {
    pub degree: usize,
    pub method: Method,
    pub oracle: bool,
}

pub fn run_fit(nodes: &NodeSet, data: &[f64], opts: &FitOptions) -> Result<FitReport, CliError> {
    let result = fit(nodes, data, opts.degree, opts.method)?;
    let fitted_values = nodes.as_slice().iter().map(|&x| result.coefficients.eval(x)).collect();
    let mut report = FitReport {
        degree: opts.degree,
        basis: "bernstein".into(),
        coefficients: result.coefficients.as_slice().to_vec(),
        residual_norm: result.residual_norm,
        method: result.method.as_str().into(),
        fitted_values,
        kappa_bv: None,
        ec: None,
        er: None,
        er_is_absolute: false,
    };
    if opts.oracle {
        let exact = exact_fit_f64(nodes, data, opts.degree)?;
        let e = relative_errors(result.coefficients.as_slice(), &result.residual, &exact)?;
        report.kappa_bv = Some(condition_number(&assemble_bv(nodes, opts.degree)?));
        report.ec = Some(e.ec);
        report.er = Some(e.er);
        report.er_is_absolute = e.er_is_absolute;
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Basis {
    V,
    Tv,
    Bv,
}

impl Basis {
    fn label(self) -> &'static str {
        match self {
            Basis::V => "kappa_v",
            Basis::Tv => "kappa_tv",
            Basis::Bv => "kappa_bv",
        }
    }
}

pub fn run_cond(nodes: &NodeSet, degree: usize, bases: &[Basis], json: bool) -> Result<String, CliError> {
    bernfit::ProblemDims::for_nodes(nodes, degree)?;
    let mut values = Vec::new();
    for &basis in bases {
        let matrix = match basis {
            Basis::V => vandermonde(nodes, degree),
            Basis::Tv => chebyshev_vandermonde(nodes, degree),
            Basis::Bv => assemble_bv(nodes, degree)?,
        };
        values.push((basis.label(), condition_number(&matrix)));
    }
    if json {
        let map: serde_json::Map<String, serde_json::Value> = values
            .into_iter()
            .map(|(k, v)| (k.to_string(), serde_json::json!(v)))
            .collect();
        return Ok(serde_json::to_string_pretty(&map).expect("map serializes") + "\n");
    }
    let mut out = String::new();
    for (label, v) in values {
        let _ = writeln!(out, "{label:<9} {v:.6e}");
    }
    Ok(out)
}
