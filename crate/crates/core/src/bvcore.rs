//! Bernstein basis, node sets and the Bernstein–Vandermonde collocation matrix.

use crate::error::{Error, Result};
use crate::matrix::{pow, DenseMatrix, Matrix, Scalar};

/// Strictly increasing abscissas inside the open unit interval.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet {
    values: Vec<f64>,
}

impl NodeSet {
    /// Validates ordering and range. Equality is exact: duplicates are rejected,
    /// never merged.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyNodes);
        }
        for (index, &x) in values.iter().enumerate() {
            if !(x > 0.0 && x < 1.0) {
                return Err(Error::InvalidNode {
                    index,
                    reason: format!("{x} is not inside (0, 1)"),
                });
            }
            if index > 0 && x <= values[index - 1] {
                return Err(Error::InvalidNode {
                    index,
                    reason: format!("{x} does not exceed the previous node {}", values[index - 1]),
                });
            }
        }
        Ok(Self { values })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of rows minus one.
    pub fn l(&self) -> usize {
        self.values.len() - 1
    }
}

/// Row count and degree of a least-squares problem; `n <= l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProblemDims {
    pub l: usize,
    pub n: usize,
}

impl ProblemDims {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        if n > l {
            return Err(Error::Dimension(format!(
                "degree {n} needs at least {} nodes, got {}",
                n + 1,
                l + 1
            )));
        }
        Ok(Self { l, n })
    }

    pub fn for_nodes(nodes: &NodeSet, n: usize) -> Result<Self> {
        Self::new(nodes.l(), n)
    }

    pub fn rows(&self) -> usize {
        self.l + 1
    }

    pub fn cols(&self) -> usize {
        self.n + 1
    }
}

/// Bernstein coefficients `c_0..c_n`; entry `k` multiplies `b_k^{(n)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVector(pub Vec<f64>);

impl CoefficientVector {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn eval(&self, x: f64) -> f64 {
        de_casteljau_eval(&self.0, x)
    }
}

/// `C(n, j)` by the multiplicative recurrence `C(n, i) = C(n, i-1) (n-i+1) / i`,
/// carried in exact integers while they fit in `u128` (every `n <= 130`) and
/// in `T` beyond that.
pub fn binomial<T: Scalar>(n: usize, j: usize) -> T {
    if j > n {
        return T::zero();
    }
    let mut exact: u128 = 1;
    for i in 1..=j {
        match exact.checked_mul((n - i + 1) as u128) {
            Some(v) => exact = v / i as u128,
            None => {
                let mut c = T::from_u128(exact).expect("u128 converts");
                for k in i..=j {
                    c = c * T::from_usize(n - k + 1).expect("small integer") / T::from_usize(k).expect("small integer");
                }
                return c;
            }
        }
    }
    T::from_u128(exact).expect("u128 converts")
}

/// `b_j^{(n)}(x) = C(n, j) (1-x)^(n-j) x^j`.
pub fn bernstein_eval(n: usize, j: usize, x: f64) -> Result<f64> {
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, degree: n });
    }
    Ok(bernstein_generic(n, j, &x))
}

/// [`bernstein_eval`] over any scalar field, without index validation.
pub fn bernstein_generic<T: Scalar>(n: usize, j: usize, x: &T) -> T {
    let one_minus = T::one() - x.clone();
    binomial::<T>(n, j) * pow(&one_minus, n - j) * pow(x, j)
}

/// Dense `(l+1) × (n+1)` Bernstein–Vandermonde matrix.
pub fn assemble_bv(nodes: &NodeSet, n: usize) -> Result<DenseMatrix> {
    ProblemDims::for_nodes(nodes, n)?;
    Ok(assemble_bv_generic(nodes.as_slice(), n))
}

/// Collocation matrix over any scalar field; no validation of the nodes.
pub fn assemble_bv_generic<T: Scalar>(nodes: &[T], n: usize) -> Matrix<T> {
    Matrix::from_fn(nodes.len(), n + 1, |i, j| bernstein_generic(n, j, &nodes[i]))
}

/// Determinant of the square Bernstein–Vandermonde matrix:
/// `Π_j C(n,j) · Π_{i<j} (x_j - x_i)`.
pub fn bv_determinant(nodes: &NodeSet, n: usize) -> Result<f64> {
    if nodes.len() != n + 1 {
        return Err(Error::Dimension(format!(
            "determinant needs a square matrix: {} nodes for degree {n}",
            nodes.len()
        )));
    }
    Ok(bv_determinant_generic(nodes.as_slice()))
}

pub fn bv_determinant_generic<T: Scalar>(nodes: &[T]) -> T {
    let n = nodes.len() - 1;
    let mut det = T::one();
    for j in 0..=n {
        det = det * binomial::<T>(n, j);
    }
    for j in 1..nodes.len() {
        for i in 0..j {
            det = det * (nodes[j].clone() - nodes[i].clone());
        }
    }
    det
}

/// Evaluates `Σ_j c_j b_j^{(n)}(x)` by repeated convex combinations.
pub fn de_casteljau_eval(c: &[f64], x: f64) -> f64 {
    if c.is_empty() {
        return 0.0;
    }
    let mut work = c.to_vec();
    let t = 1.0 - x;
    for level in (1..work.len()).rev() {
        for k in 0..level {
            work[k] = t * work[k] + x * work[k + 1];
        }
    }
    work[0]
}
