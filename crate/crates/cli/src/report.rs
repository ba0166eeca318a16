//! Machine-readable and plain-table renderings of a fit.

use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub degree: usize,
    pub basis: String,
    pub coefficients: Vec<f64>,
    pub residual_norm: f64,
    pub method: String,
    pub fitted_values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_bv: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ec: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub er: Option<f64>,
    /// Set when the exact residual vanishes and `er` is an absolute error.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub er_is_absolute: bool,
}

impl FitReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self, nodes: &[f64], data: &[f64]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "method         {}", self.method);
        let _ = writeln!(out, "basis          {} (degree {})", self.basis, self.degree);
        let _ = writeln!(out, "residual_norm  {:.16e}", self.residual_norm);
        if let Some(k) = self.kappa_bv {
            let _ = writeln!(out, "kappa_bv       {k:.6e}");
        }
        if let Some(ec) = self.ec {
            let _ = writeln!(out, "ec             {ec:.6e}");
        }
        if let Some(er) = self.er {
            let tag = if self.er_is_absolute { " (absolute)" } else { "" };
            let _ = writeln!(out, "er             {er:.6e}{tag}");
        }
        let _ = writeln!(out, "\ncoefficients");
        for (j, c) in self.coefficients.iter().enumerate() {
            let _ = writeln!(out, "  c[{j:>2}]  {c:>24.16e}");
        }
        let _ = writeln!(out, "\n{:>24}  {:>24}  {:>24}", "x", "f", "fitted");
        for ((x, f), p) in nodes.iter().zip(data).zip(&self.fitted_values) {
            let _ = writeln!(out, "{x:>24.16e}  {f:>24.16e}  {p:>24.16e}");
        }
        out
    }
}
