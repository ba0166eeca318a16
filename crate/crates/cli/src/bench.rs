//! Reproduction of the condition-number and accuracy tables on the built-in
//! examples, with pass/fail flags against the acceptance bands.

use bernfit::experiments::{self, Experiment};
use bernfit::{condition_numbers, exact_fit_f64, fit, relative_errors, Method};
use serde::Serialize;
use std::fmt::Write;
use std::time::Instant;

use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub examples: Vec<ExampleRow>,
}

#[derive(Debug, Serialize)]
pub struct ExampleRow {
    pub id: String,
    pub nodes: usize,
    pub degree: usize,
    pub kappa_v: f64,
    pub kappa_tv: f64,
    pub kappa_bv: f64,
    pub methods: Vec<MethodRow>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Serialize)]
pub struct MethodRow {
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ec: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub er: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_s: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub band: String,
    pub pass: bool,
}

struct Targets {
    kappa_v: f64,
    kappa_tv: f64,
    kappa_bv: f64,
    generic_ec_floor: f64,
}

fn targets(id: &str) -> Targets {
    match id {
        "5.1" => Targets {
            kappa_v: 1.7e12,
            kappa_tv: 1.7e12,
            kappa_bv: 2.0e5,
            generic_ec_floor: 1e-13,
        },
        _ => Targets {
            kappa_v: 2.5e14,
            kappa_tv: 4.0e14,
            kappa_bv: 5.3e8,
            generic_ec_floor: 1e-11,
        },
    }
}

fn within(name: &str, value: f64, target: f64, factor: f64) -> Check {
    Check {
        name: name.into(),
        value,
        band: format!("{target:.1e} within x{factor}"),
        pass: value >= target / factor && value <= target * factor,
    }
}

pub fn run_bench(ids: &[String], timing: bool) -> Result<BenchReport, CliError> {
    let mut examples = Vec::new();
    for id in ids {
        let ex = experiments::by_id(id)
            .ok_or_else(|| CliError::Validation(format!("unknown example `{id}` (expected 5.1 or 5.2)")))?;
        examples.push(bench_example(&ex, timing)?);
    }
    Ok(BenchReport { examples })
}

fn bench_example(ex: &Experiment, timing: bool) -> Result<ExampleRow, CliError> {
    let t = targets(ex.id);
    let kappa = condition_numbers(&ex.nodes, ex.degree)?;
    let exact = exact_fit_f64(&ex.nodes, &ex.data, ex.degree)?;
    let mut methods = Vec::new();
    let mut checks = vec![
        within("kappa_v", kappa.kappa_v, t.kappa_v, 2.0),
        within("kappa_tv", kappa.kappa_tv, t.kappa_tv, 4.0),
        within("kappa_bv", kappa.kappa_bv, t.kappa_bv, 2.0),
    ];
    for method in Method::ALL {
        let start = Instant::now();
        let outcome = fit(&ex.nodes, &ex.data, ex.degree, method);
        let runtime_s = timing.then(|| start.elapsed().as_secs_f64());
        let row = match outcome {
            Ok(result) => {
                let e = relative_errors(result.coefficients.as_slice(), &result.residual, &exact)?;
                match method {
                    Method::Structured => {
                        checks.push(Check {
                            name: "structured ec".into(),
                            value: e.ec,
                            band: "<= 1e-13".into(),
                            pass: e.ec <= 1e-13,
                        });
                        checks.push(Check {
                            name: "structured er".into(),
                            value: e.er,
                            band: "<= 1e-13".into(),
                            pass: e.er <= 1e-13,
                        });
                    }
                    Method::GenericQr => checks.push(Check {
                        name: "generic_qr ec".into(),
                        value: e.ec,
                        band: format!(">= {:.0e}", t.generic_ec_floor),
                        pass: e.ec >= t.generic_ec_floor,
                    }),
                    Method::NormalEquations => {}
                }
                MethodRow {
                    method: method.as_str().into(),
                    ec: Some(e.ec),
                    er: Some(e.er),
                    failure: None,
                    runtime_s,
                }
            }
            // The normal equations square the condition number and may break down.
            Err(e) if method == Method::NormalEquations => MethodRow {
                method: method.as_str().into(),
                ec: None,
                er: None,
                failure: Some(e.to_string()),
                runtime_s,
            },
            Err(e) => return Err(e.into()),
        };
        methods.push(row);
    }
    Ok(ExampleRow {
        id: ex.id.into(),
        nodes: ex.nodes.len(),
        degree: ex.degree,
        kappa_v: kappa.kappa_v,
        kappa_tv: kappa.kappa_tv,
        kappa_bv: kappa.kappa_bv,
        methods,
        checks,
    })
}

impl BenchReport {
    pub fn failures(&self) -> Vec<String> {
        self.examples
            .iter()
            .flat_map(|ex| {
                ex.checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(move |c| format!("{} {}", ex.id, c.name))
            })
            .collect()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for ex in &self.examples {
            let timed = ex.methods.iter().any(|m| m.runtime_s.is_some());
            let _ = writeln!(out, "Example {} ({} nodes, degree {})", ex.id, ex.nodes, ex.degree);
            let _ = write!(out, "  {:<18} {:>10} {:>10}", "method", "ec", "er");
            let _ = writeln!(
                out,
                "{}",
                if timed {
                    format!(" {:>10}", "runtime")
                } else {
                    String::new()
                }
            );
            for m in &ex.methods {
                let fmt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.1e}"));
                let _ = write!(out, "  {:<18} {:>10} {:>10}", m.method, fmt(m.ec), fmt(m.er));
                if let Some(s) = m.runtime_s {
                    let _ = write!(out, " {:>10}", format!("{s:.2e}s"));
                }
                if let Some(why) = &m.failure {
                    let _ = write!(out, "  failed: {why}");
                }
                out.push('\n');
            }
            let _ = writeln!(out, "  {:<18} {:>10}  {:<22} status", "check", "value", "band");
            for c in &ex.checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "  {:<18} {:>10.2e}  {:<22} {status}", c.name, c.value, c.band);
            }
            out.push('\n');
        }
        out
    }
}
