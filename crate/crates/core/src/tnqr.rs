//! QR decomposition of a totally nonnegative matrix given by its bidiagonal
//! factorization, and triangular solves through a factored `R`.
//!
//! Givens rotations annihilate the lower multipliers column by column,
//! bottom-up. With columns `< j` and rows `> i` of column `j` already clear,
//! the elementary factor `Lo_{i-1}(t)` holding `m_{i,j}` can be moved to the
//! far left of the product, and the rotation with tangent `t` acts on it as
//!
//! ```text
//! Gᵀ · Lo(t) = Up(t) · diag(√(1+t²), 1/√(1+t²))
//! ```
//!
//! The pending `Up · diag` is then pushed right through the remaining lower
//! factors, past `D`, and merged into the upper factors. Every update is a
//! sum, product or quotient of positive numbers, so the factorization of `R`
//! retains high relative accuracy. Only the accumulation of `Q` subtracts.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::tnbdbv::BDForm;

/// `A = Q [R; 0]` with `Q` explicit and `R` kept as a bidiagonal factorization
/// whose lower multipliers are all zero.
#[derive(Clone, Debug)]
pub struct QRFactors {
    pub q: DenseMatrix,
    pub r_bd: BDForm,
}

/// Work counters of a [`tnqr_with_stats`] run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QrStats {
    pub rotations: u64,
    pub flops: u64,
}

pub fn tnqr(bd: &BDForm) -> Result<QRFactors> {
    tnqr_with_stats(bd).map(|(f, _)| f)
}

pub fn tnqr_with_stats(bd: &BDForm) -> Result<(QRFactors, QrStats)> {
    let (rows, cols) = (bd.rows(), bd.cols());
    // Off-diagonal zeros are legitimate (totally nonnegative input); negative
    // entries and vanishing pivots are not.
    let offending = bd.find_entry(|i, j, v| v < 0.0 || (i == j && v <= 0.0));
    if let Some((row, col, value)) = offending {
        return Err(Error::NotTotallyPositive { row, col, value });
    }

    let mut b = bd.compact().clone();
    let mut q = DenseMatrix::identity(rows);
    let mut stats = QrStats::default();

    for j in 0..cols.min(rows - 1) {
        for i in (j + 1..rows).rev() {
            let t = b[(i, j)];
            if t == 0.0 {
                continue;
            }
            b[(i, j)] = 0.0;
            let h = 1f64.hypot(t);
            let (c, s) = (1.0 / h, t / h);
            rotate_columns(&mut q, i - 1, c, s);
            stats.rotations += 1;
            stats.flops += 6 * rows as u64 + 4;
            stats.flops += push_through(&mut b, i, j, t, h);
        }
    }

    let r = b.leading_block(cols, cols);
    Ok((
        QRFactors {
            q,
            r_bd: BDForm::from_matrix(r)?,
        },
        stats,
    ))
}

/// Right-multiplies columns `p, p+1` of `q` by `[[c, -s], [s, c]]`.
fn rotate_columns(q: &mut DenseMatrix, p: usize, c: f64, s: f64) {
    for row in 0..q.rows() {
        let (a, b) = (q[(row, p)], q[(row, p + 1)]);
        q[(row, p)] = c * a + s * b;
        q[(row, p + 1)] = c * b - s * a;
    }
}

/// Moves `Up_r(t) · diag(h, 1/h)` (on rows `r = i-1, i`) from the left end of
/// the product through every later lower factor, into `D` and the upper
/// factors. Returns a flop count.
fn push_through(b: &mut DenseMatrix, i: usize, j: usize, t: f64, h: f64) -> u64 {
    let (rows, cols) = (b.rows(), b.cols());
    let r = i - 1;
    let mut v = t;
    let (mut dr, mut dr1) = (h, 1.0 / h);
    let mut flops = 0u64;

    // Entry of Lo_q inside F_s, if it is stored.
    let slot = |q: usize, s: usize| -> Option<(usize, usize)> {
        if q + 1 < s || q + 1 >= rows {
            return None;
        }
        let col = q + 1 - s;
        (col < cols).then_some((q + 1, col))
    };

    // Rest of F_{i-j}: only Lo_{r+1} follows the removed factor.
    if let Some(pos) = slot(r + 1, i - j) {
        b[pos] /= dr1;
        flops += 1;
    }
    for s in (1..i - j).rev() {
        for qi in [r.checked_sub(1), Some(r), Some(r + 1)].into_iter().flatten() {
            let Some(pos) = slot(qi, s) else { continue };
            if qi + 1 == r {
                b[pos] *= dr;
                flops += 1;
            } else if qi == r {
                // Up(v) Lo(x) = Lo(x/δ) Up(vδ) diag(δ, 1/δ), δ = 1 + v x.
                let x = b[pos] * dr1 / dr;
                let delta = 1.0 + v * x;
                b[pos] = x / delta;
                v *= delta;
                dr *= delta;
                dr1 /= delta;
                flops += 9;
            } else {
                b[pos] /= dr1;
                flops += 1;
            }
        }
    }

    if r < cols {
        b[(r, r)] *= dr;
        flops += 1;
    }
    if r + 1 < cols {
        b[(r + 1, r + 1)] *= dr1;
        let w = v * b[(r + 1, r + 1)] / b[(r, r)];
        flops += 3 + merge_upper(b, r, w);
    }
    flops
}

/// Replaces the upper factors `U` by the factorization of `Up_r(w) · U`.
///
/// Works on `V = Uᵀ`, a product of lower factors, computing `V · Lo_r(w)`:
/// the new factor travels left through `F_1, F_2, …` of `V`, each level using
/// `Lo_p(α) Lo_{p+1}(β) Lo_p(w) = Lo_{p+1}(βw/(α+w)) Lo_p(α+w) Lo_{p+1}(αβ/(α+w))`.
fn merge_upper(b: &mut DenseMatrix, r: usize, mut w: f64) -> u64 {
    let cols = b.cols();
    let (mut p, mut s) = (r, 1usize);
    let mut flops = 0u64;
    // V's entry for Lo_p in F_s is V[(p+1, p+1-s)] = b[(p+1-s, p+1)].
    while w != 0.0 {
        let alpha_pos = (p + 1 - s, p + 1);
        if p + 2 >= cols {
            b[alpha_pos] += w;
            return flops + 1;
        }
        let beta_pos = (p + 2 - s, p + 2);
        let (alpha, beta) = (b[alpha_pos], b[beta_pos]);
        let sum = alpha + w;
        b[alpha_pos] = sum;
        b[beta_pos] = alpha * beta / sum;
        w = beta * w / sum;
        p += 1;
        s += 1;
        flops += 5;
    }
    flops
}

/// Solves `R c = d` for an upper triangular `R` given as a bidiagonal
/// factorization `R = D · G_1 ⋯ G_n`: scale by `D⁻¹`, then undo `G_1`, `G_2`,
/// … by back-substitution through each unit upper bidiagonal factor.
pub fn tnsolve(r_bd: &BDForm, d: &[f64]) -> Result<Vec<f64>> {
    let k = r_bd.cols();
    if r_bd.rows() != k || d.len() != k {
        return Err(Error::Dimension(format!(
            "triangular solve needs a square factor matching the right-hand side: {}x{} vs {}",
            r_bd.rows(),
            k,
            d.len()
        )));
    }
    let m = r_bd.compact();
    let mut y = Vec::with_capacity(k);
    for (idx, &di) in d.iter().enumerate() {
        let p = m[(idx, idx)];
        if p == 0.0 {
            return Err(Error::Singular { index: idx });
        }
        y.push(di / p);
    }
    for s in 1..k {
        for q in (s - 1..k - 1).rev() {
            let g = m[(q + 1 - s, q + 1)];
            y[q] -= g * y[q + 1];
        }
    }
    Ok(y)
}
