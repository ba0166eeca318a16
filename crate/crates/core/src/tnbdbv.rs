//! Closed-form bidiagonal factorization of the Bernstein–Vandermonde matrix.
//!
//! The factorization reads `A = F_l ⋯ F_1 · D · G_1 ⋯ G_n` and is stored as a
//! single `(l+1) × (n+1)` matrix `M`:
//!
//! * `M[(i, i)]` is the diagonal pivot `p_{i,i}`;
//! * `M[(i, j)]`, `i > j`, is the multiplier `m_{i,j}` of the Neville
//!   elimination of `A`;
//! * `M[(i, j)]`, `i < j`, is the multiplier `m̃_{j,i}` of the Neville
//!   elimination of `Aᵀ`.
//!
//! Storage is 0-based. With `Lo_q(x) = I + x e_{q+1} e_qᵀ` and
//! `Up_q(x) = I + x e_q e_{q+1}ᵀ`, the factor `F_s` (`s = 1..l`) is the product
//! over increasing `q = s-1..l-1` of `Lo_q(M[(q+1, q+1-s)])`, and `G_s`
//! (`s = 1..n`) is the product over decreasing `q = n-1..s-1` of
//! `Up_q(M[(q+1-s, q+1)])`. Entries outside the stored region are zero.

use crate::bvcore::{binomial, NodeSet, ProblemDims};
use crate::error::{Error, Result};
use crate::matrix::{pow, DenseMatrix, Matrix, Scalar};

/// Compact bidiagonal factorization of a totally nonnegative matrix with
/// `rows >= cols`.
#[derive(Clone, Debug, PartialEq)]
pub struct BDForm {
    m: DenseMatrix,
}

impl BDForm {
    /// Wraps a compact matrix; requires `rows >= cols` and finite entries.
    pub fn from_matrix(m: DenseMatrix) -> Result<Self> {
        if m.rows() < m.cols() {
            return Err(Error::Dimension(format!(
                "bidiagonal form needs rows >= cols, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if let Some(pos) = m.as_slice().iter().position(|v| !v.is_finite()) {
            return Err(Error::NotTotallyPositive {
                row: pos / m.cols(),
                col: pos % m.cols(),
                value: m.as_slice()[pos],
            });
        }
        Ok(Self { m })
    }

    pub fn rows(&self) -> usize {
        self.m.rows()
    }

    pub fn cols(&self) -> usize {
        self.m.cols()
    }

    pub fn diag(&self, i: usize) -> f64 {
        self.m[(i, i)]
    }

    pub fn compact(&self) -> &DenseMatrix {
        &self.m
    }

    pub fn into_compact(self) -> DenseMatrix {
        self.m
    }

    /// True when every stored entry is strictly positive, as for STP matrices.
    pub fn is_positive(&self) -> bool {
        self.find_entry(|_, _, v| v <= 0.0).is_none()
    }

    /// First stored entry, in row-major order, satisfying `pred(i, j, value)`.
    pub(crate) fn find_entry(&self, pred: impl Fn(usize, usize, f64) -> bool) -> Option<(usize, usize, f64)> {
        let (rows, cols) = (self.rows(), self.cols());
        (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.m[(i, j)]))
            .find(|&(i, j, v)| pred(i, j, v))
    }

    pub fn expand(&self) -> DenseMatrix {
        expand_bd_generic(&self.m)
    }
}

/// Bidiagonal factorization of the `(l+1) × (n+1)` Bernstein–Vandermonde
/// matrix at `nodes`, entry by entry from the closed forms. O(l·n) work and
/// no subtraction other than differences of input nodes.
pub fn tnbdbv(nodes: &NodeSet, n: usize) -> Result<BDForm> {
    ProblemDims::for_nodes(nodes, n)?;
    BDForm::from_matrix(tnbdbv_generic(nodes.as_slice(), n))
}

/// The closed forms over any scalar field. `nodes` must be strictly
/// increasing in `(0, 1)` with `nodes.len() > n`.
pub fn tnbdbv_generic<T: Scalar>(nodes: &[T], n: usize) -> Matrix<T> {
    let rows = nodes.len();
    let cols = n + 1;
    assert!(rows >= cols, "degree exceeds node count");
    // Formulas below use 1-based (i, j); x(i) and c(i) map to storage.
    let x = |i: usize| nodes[i - 1].clone();
    let c = |i: usize| T::one() - nodes[i - 1].clone();
    let int = |v: usize| T::from_usize(v).expect("small integer");

    let mut m = Matrix::zeros(rows, cols);

    for j in 1..=cols {
        for i in j + 1..=rows {
            let mut num = pow(&c(i), n + 1 - j) * c(i - j);
            for k in 1..j {
                num = num * (x(i) - x(i - k));
            }
            let mut den = pow(&c(i - 1), n + 2 - j);
            for k in 2..=j {
                den = den * (x(i - 1) - x(i - k));
            }
            m[(i - 1, j - 1)] = num / den;
        }
    }

    // m̃_{i,j} = (n - i + 2) x_j / ((i - 1)(1 - x_j)), stored transposed.
    for j in 1..=n {
        for i in j + 1..=n + 1 {
            let num = int(n + 2 - i) * x(j);
            let den = int(i - 1) * c(j);
            m[(j - 1, i - 1)] = num / den;
        }
    }

    for i in 1..=cols {
        let mut num = binomial::<T>(n, i - 1) * pow(&c(i), n + 1 - i);
        let mut den = T::one();
        for k in 1..i {
            num = num * (x(i) - x(k));
            den = den * c(k);
        }
        m[(i - 1, i - 1)] = num / den;
    }
    m
}

/// Multiplies out `F_l ⋯ F_1 · D · G_1 ⋯ G_n`.
pub fn expand_bd(bd: &BDForm) -> DenseMatrix {
    bd.expand()
}

/// Dense product encoded by a compact factorization matrix. Only products and
/// sums of the stored entries occur.
pub fn expand_bd_generic<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..cols {
        out[(i, i)] = m[(i, i)].clone();
    }
    // D · G_1 ⋯ G_n: right-multiplying by Up_q(g) adds g·col q to col q+1.
    for s in 1..cols {
        for q in (s - 1..cols - 1).rev() {
            let g = m[(q + 1 - s, q + 1)].clone();
            if g.is_zero() {
                continue;
            }
            for r in 0..rows {
                let v = out[(r, q + 1)].clone() + g.clone() * out[(r, q)].clone();
                out[(r, q + 1)] = v;
            }
        }
    }
    // F_l ⋯ F_1 applied right to left: Lo_q(x) adds x·row q to row q+1.
    for s in 1..rows {
        for q in (s - 1..rows - 1).rev() {
            let col = q + 1 - s;
            if col >= cols {
                continue;
            }
            let f = m[(q + 1, col)].clone();
            if f.is_zero() {
                continue;
            }
            for c in 0..cols {
                let v = out[(q + 1, c)].clone() + f.clone() * out[(q, c)].clone();
                out[(q + 1, c)] = v;
            }
        }
    }
    out
}
