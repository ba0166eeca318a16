//! Least-squares fitting in the Bernstein basis: the structured pipeline and
//! two dense baselines.

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::bvcore::{assemble_bv, CoefficientVector, NodeSet, ProblemDims};
use crate::error::{Error, Result};
use crate::matrix::{norm2, DenseMatrix};
use crate::tnbdbv::{tnbdbv, BDForm};
use crate::tnqr::{tnqr, tnsolve};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Bidiagonal factorization, structured QR and factored triangular solve.
    Structured,
    /// Dense Householder QR with column pivoting.
    GenericQr,
    /// Cholesky factorization of `AᵀA`.
    NormalEquations,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Structured, Method::GenericQr, Method::NormalEquations];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Structured => "structured",
            Method::GenericQr => "generic_qr",
            Method::NormalEquations => "normal_equations",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub coefficients: CoefficientVector,
    /// `f − A c`, one entry per node.
    pub residual: Vec<f64>,
    pub residual_norm: f64,
    pub method: Method,
}

/// Intermediate quantities of the structured pipeline.
#[derive(Clone, Debug)]
pub struct Diagnostics {
    pub bd: BDForm,
    pub q: DenseMatrix,
    pub r_bd: BDForm,
    /// First `n+1` entries of `Qᵀ f`.
    pub d1: Vec<f64>,
    /// Remaining `l−n` entries of `Qᵀ f`.
    pub d2: Vec<f64>,
}

fn check_inputs(nodes: &NodeSet, f: &[f64], n: usize) -> Result<ProblemDims> {
    if f.len() != nodes.len() {
        return Err(Error::Dimension(format!(
            "{} data values for {} nodes",
            f.len(),
            nodes.len()
        )));
    }
    ProblemDims::for_nodes(nodes, n)
}

/// Fits with any of the three methods.
pub fn fit(nodes: &NodeSet, f: &[f64], n: usize, method: Method) -> Result<FitResult> {
    match method {
        Method::Structured => fit_bernstein(nodes, f, n),
        Method::GenericQr => fit_generic_qr(nodes, f, n),
        Method::NormalEquations => fit_normal_equations(nodes, f, n),
    }
}

/// Structured least-squares fit; the collocation matrix is never formed.
pub fn fit_bernstein(nodes: &NodeSet, f: &[f64], n: usize) -> Result<FitResult> {
    fit_bernstein_with_diagnostics(nodes, f, n).map(|(fit, _)| fit)
}

pub fn fit_bernstein_with_diagnostics(nodes: &NodeSet, f: &[f64], n: usize) -> Result<(FitResult, Diagnostics)> {
    let dims = check_inputs(nodes, f, n)?;
    let k = dims.cols();

    let bd = tnbdbv(nodes, n)?;
    let qr = tnqr(&bd)?;
    let d = qr.q.tr_mul_vec(f)?;
    let (d1, d2) = (d[..k].to_vec(), d[k..].to_vec());
    let c = tnsolve(&qr.r_bd, &d1)?;

    // r = Q [0; d2]
    let residual: Vec<f64> = (0..dims.rows())
        .map(|i| qr.q.row(i)[k..].iter().zip(&d2).map(|(a, b)| a * b).sum())
        .collect();
    let fit = FitResult {
        coefficients: CoefficientVector(c),
        residual_norm: norm2(&residual),
        residual,
        method: Method::Structured,
    };
    Ok((
        fit,
        Diagnostics {
            bd,
            q: qr.q,
            r_bd: qr.r_bd,
            d1,
            d2,
        },
    ))
}

fn dense_result(a: &DenseMatrix, f: &[f64], c: Vec<f64>, method: Method) -> Result<FitResult> {
    let fitted = a.mul_vec(&c)?;
    let residual: Vec<f64> = f.iter().zip(fitted).map(|(fi, pi)| fi - pi).collect();
    Ok(FitResult {
        coefficients: CoefficientVector(c),
        residual_norm: norm2(&residual),
        residual,
        method,
    })
}

/// Dense baseline: Householder QR with column pivoting of the assembled matrix.
pub fn fit_generic_qr(nodes: &NodeSet, f: &[f64], n: usize) -> Result<FitResult> {
    let dims = check_inputs(nodes, f, n)?;
    let k = dims.cols();
    let a = assemble_bv(nodes, n)?;
    let qr = a.to_nalgebra().col_piv_qr();
    let mut rhs = DVector::from_column_slice(f);
    qr.q_tr_mul(&mut rhs);
    let mut z = rhs.rows(0, k).into_owned();
    let r = qr.r();
    if !r.solve_upper_triangular_mut(&mut z) {
        let index = (0..k).find(|&i| r[(i, i)] == 0.0).unwrap_or(0);
        return Err(Error::Singular { index });
    }
    qr.p().inv_permute_rows(&mut z);
    dense_result(&a, f, z.iter().copied().collect(), Method::GenericQr)
}

/// Dense baseline: Cholesky solve of the normal equations `AᵀA c = Aᵀf`.
pub fn fit_normal_equations(nodes: &NodeSet, f: &[f64], n: usize) -> Result<FitResult> {
    check_inputs(nodes, f, n)?;
    let a = assemble_bv(nodes, n)?;
    let an = a.to_nalgebra();
    let gram: DMatrix<f64> = an.transpose() * &an;
    let rhs = an.transpose() * DVector::from_column_slice(f);
    let chol = gram.cholesky().ok_or(Error::Conditioning)?;
    let c = chol.solve(&rhs);
    dense_result(&a, f, c.iter().copied().collect(), Method::NormalEquations)
}
