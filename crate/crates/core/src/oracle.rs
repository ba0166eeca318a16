//! Exact rational references and the error metrics used to score the
//! floating-point solvers.

use nalgebra::SVD;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bvcore::{assemble_bv, binomial, NodeSet, ProblemDims};
use crate::error::{Error, Result};
use crate::matrix::{norm2, DenseMatrix, Matrix};

/// Exact least-squares coefficients and residual.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSolution {
    pub c_e: Vec<BigRational>,
    pub r_e: Vec<BigRational>,
}

impl ExactSolution {
    pub fn coefficients_f64(&self) -> Vec<f64> {
        to_f64(&self.c_e)
    }

    pub fn residual_f64(&self) -> Vec<f64> {
        to_f64(&self.r_e)
    }
}

/// Exact rational value of each machine number.
pub fn to_rational(values: &[f64]) -> Vec<BigRational> {
    values
        .iter()
        .map(|&v| BigRational::from_float(v).expect("finite value"))
        .collect()
}

fn to_f64(values: &[BigRational]) -> Vec<f64> {
    values.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
}

/// Solves the least-squares problem exactly through the normal equations,
/// using fraction-free (Bareiss) elimination on an integer scaling of
/// `AᵀA c = Aᵀf`.
pub fn exact_fit(nodes: &[BigRational], f: &[BigRational], n: usize) -> Result<ExactSolution> {
    if nodes.is_empty() {
        return Err(Error::EmptyNodes);
    }
    let (zero, one) = (BigRational::zero(), BigRational::one());
    for (index, x) in nodes.iter().enumerate() {
        if *x <= zero || *x >= one || (index > 0 && *x <= nodes[index - 1]) {
            return Err(Error::InvalidNode {
                index,
                reason: format!("{x} breaks strict ordering inside (0, 1)"),
            });
        }
    }
    if f.len() != nodes.len() {
        return Err(Error::Dimension(format!(
            "{} data values for {} nodes",
            f.len(),
            nodes.len()
        )));
    }
    ProblemDims::new(nodes.len() - 1, n)?;

    let rows = IntegerRows::new(nodes, n);
    // Scale AᵀA c = Aᵀf by the lcm of the row denominators so that both sides
    // are integral. Row i of A is N_i / q_i^n and f_i = u_i / v_i.
    let (u, v): (Vec<&BigInt>, Vec<&BigInt>) = f.iter().map(|x| (x.numer(), x.denom())).unzip();
    let scale = rows
        .denom
        .iter()
        .zip(&v)
        .fold(BigInt::one(), |acc, (d, vi)| acc.lcm(&(d * d)).lcm(&(d * *vi)));
    let k = n + 1;
    let mut system = vec![vec![BigInt::zero(); k + 1]; k];
    for (i, row) in rows.numer.iter().enumerate() {
        let d = &rows.denom[i];
        let w = &scale / (d * d);
        let wf = &scale / (d * v[i]) * u[i];
        for (equation, a_p) in system.iter_mut().zip(row) {
            let wp = &w * a_p;
            for (cell, a_q) in equation.iter_mut().zip(row) {
                *cell += &wp * a_q;
            }
            equation[k] += &wf * a_p;
        }
    }

    let (det, scaled) = solve_fraction_free(system);
    let c_e = scaled
        .iter()
        .map(|x| BigRational::new(x.clone(), det.clone()))
        .collect();
    // r_i = f_i - (N_i · scaled) / (q_i^n det)
    let r_e = rows
        .numer
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let dot: BigInt = row.iter().zip(&scaled).map(|(a, b)| a * b).sum();
            let den = &rows.denom[i] * &det;
            BigRational::new(u[i] * &den - v[i] * dot, v[i] * den)
        })
        .collect();
    Ok(ExactSolution { c_e, r_e })
}

/// Rows of the Bernstein-Vandermonde matrix at rational nodes `p/q`, kept as
/// integer numerators `C(n,j) (q-p)^(n-j) p^j` over the common row
/// denominator `q^n`.
struct IntegerRows {
    numer: Vec<Vec<BigInt>>,
    denom: Vec<BigInt>,
}

impl IntegerRows {
    fn new(nodes: &[BigRational], n: usize) -> Self {
        let binom: Vec<BigInt> = (0..=n).map(|j| binomial::<BigInt>(n, j)).collect();
        let mut numer = Vec::with_capacity(nodes.len());
        let mut denom = Vec::with_capacity(nodes.len());
        for x in nodes {
            let (p, q) = (x.numer(), x.denom());
            let rest = q - p;
            let p_pow: Vec<BigInt> = successors(p, n);
            let rest_pow: Vec<BigInt> = successors(&rest, n);
            numer.push((0..=n).map(|j| &binom[j] * &rest_pow[n - j] * &p_pow[j]).collect());
            denom.push(num_traits::pow(q.clone(), n));
        }
        IntegerRows { numer, denom }
    }
}

/// `[1, x, x², ..., xⁿ]`.
fn successors(x: &BigInt, n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for j in 0..n {
        let next = &out[j] * x;
        out.push(next);
    }
    out
}

/// Exact reference for a floating-point problem: nodes and data are taken as
/// the exact rationals of their machine values.
pub fn exact_fit_f64(nodes: &NodeSet, f: &[f64], n: usize) -> Result<ExactSolution> {
    exact_fit(&to_rational(nodes.as_slice()), &to_rational(f), n)
}

/// `Aᵀ r` in exact arithmetic; identically zero for the least-squares residual.
pub fn normal_residual(nodes: &[BigRational], n: usize, r: &[BigRational]) -> Result<Vec<BigRational>> {
    if r.len() != nodes.len() {
        return Err(Error::Dimension(format!(
            "{} residual entries for {} nodes",
            r.len(),
            nodes.len()
        )));
    }
    let rows = IntegerRows::new(nodes, n);
    let scale = rows
        .denom
        .iter()
        .zip(r)
        .fold(BigInt::one(), |acc, (d, ri)| acc.lcm(&(d * ri.denom())));
    let weights: Vec<BigInt> = rows
        .denom
        .iter()
        .zip(r)
        .map(|(d, ri)| &scale / (d * ri.denom()) * ri.numer())
        .collect();
    Ok((0..=n)
        .map(|j| {
            let sum: BigInt = rows.numer.iter().zip(&weights).map(|(row, w)| &row[j] * w).sum();
            BigRational::new(sum, scale.clone())
        })
        .collect())
}

/// Bareiss elimination on the augmented integer system `[G | h]`. Returns
/// `δ = ±det(G)` and the integer vector `δ · G⁻¹ h`.
fn solve_fraction_free(mut m: Vec<Vec<BigInt>>) -> (BigInt, Vec<BigInt>) {
    let k = m.len();
    let mut prev = BigInt::one();
    for p in 0..k {
        if m[p][p].is_zero() {
            let swap = (p + 1..k)
                .find(|&i| !m[i][p].is_zero())
                .expect("Gram matrix of a full-rank matrix is nonsingular");
            m.swap(p, swap);
        }
        for i in p + 1..k {
            for j in p + 1..=k {
                let v = (&m[i][j] * &m[p][p] - &m[i][p] * &m[p][j]) / &prev;
                m[i][j] = v;
            }
            m[i][p] = BigInt::zero();
        }
        prev = m[p][p].clone();
    }

    // The last pivot is ±det(G) and `det(G) · G⁻¹ h` is integral, so every
    // division below is exact.
    let det = m[k - 1][k - 1].clone();
    let mut x = vec![BigInt::zero(); k];
    for i in (0..k).rev() {
        let mut acc = &m[i][k] * &det;
        for j in i + 1..k {
            acc -= &m[i][j] * &x[j];
        }
        x[i] = acc / &m[i][i];
    }
    (det, x)
}

/// Relative errors of a computed solution against the exact one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelativeErrors {
    pub ec: f64,
    pub er: f64,
    /// Set when the exact residual vanishes; `er` is then `‖r‖₂`.
    pub er_is_absolute: bool,
}

/// `ec = ‖c − c_e‖₂ / ‖c_e‖₂` and `er = ‖r − r_e‖₂ / ‖r_e‖₂`, with the exact
/// vectors rounded to `f64` once.
pub fn relative_errors(c: &[f64], r: &[f64], exact: &ExactSolution) -> Result<RelativeErrors> {
    if c.len() != exact.c_e.len() || r.len() != exact.r_e.len() {
        return Err(Error::Dimension(format!(
            "solution of length ({}, {}) against exact ({}, {})",
            c.len(),
            r.len(),
            exact.c_e.len(),
            exact.r_e.len()
        )));
    }
    let ce = exact.coefficients_f64();
    let re = exact.residual_f64();
    let diff = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let ce_norm = norm2(&ce);
    let ec = if ce_norm > 0.0 {
        norm2(&diff(c, &ce)) / ce_norm
    } else {
        norm2(c)
    };
    let exact_residual_zero = exact.r_e.iter().all(|v| v.is_zero());
    let (er, er_is_absolute) = if exact_residual_zero {
        (norm2(r), true)
    } else {
        (norm2(&diff(r, &re)) / norm2(&re), false)
    };
    Ok(RelativeErrors { ec, er, er_is_absolute })
}

/// Spectral condition numbers of the monomial, Chebyshev and Bernstein
/// collocation matrices at the same nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionReport {
    pub kappa_v: f64,
    pub kappa_tv: f64,
    pub kappa_bv: f64,
}

/// Monomial Vandermonde matrix, entries `x_i^j`.
pub fn vandermonde(nodes: &NodeSet, n: usize) -> DenseMatrix {
    let x = nodes.as_slice();
    Matrix::from_fn(x.len(), n + 1, |i, j| x[i].powi(j as i32))
}

/// Chebyshev–Vandermonde matrix, entries `T_j(x_i)` by the three-term
/// recurrence, evaluated at the nodes themselves.
pub fn chebyshev_vandermonde(nodes: &NodeSet, n: usize) -> DenseMatrix {
    let rows: Vec<Vec<f64>> = nodes
        .as_slice()
        .iter()
        .map(|&x| {
            let mut t = Vec::with_capacity(n + 1);
            t.push(1.0);
            if n >= 1 {
                t.push(x);
            }
            for j in 2..=n {
                t.push(2.0 * x * t[j - 1] - t[j - 2]);
            }
            t
        })
        .collect();
    Matrix::from_rows(rows).expect("rectangular by construction")
}

pub fn condition_number(a: &DenseMatrix) -> f64 {
    let sv = SVD::new(a.to_nalgebra(), false, false).singular_values;
    let max = sv.max();
    let min = sv.min();
    max / min
}

pub fn condition_numbers(nodes: &NodeSet, n: usize) -> Result<ConditionReport> {
    ProblemDims::for_nodes(nodes, n)?;
    Ok(ConditionReport {
        kappa_v: condition_number(&vandermonde(nodes, n)),
        kappa_tv: condition_number(&chebyshev_vandermonde(nodes, n)),
        kappa_bv: condition_number(&assemble_bv(nodes, n)?),
    })
}

/// Absolute value helper used by tests comparing exact vectors.
pub fn max_abs_rational(v: &[BigRational]) -> BigRational {
    v.iter()
        .map(|x| x.abs())
        .fold(BigRational::zero(), |m, x| if x > m { x } else { m })
}
