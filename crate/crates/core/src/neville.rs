//! Neville elimination: zeros are produced by subtracting a multiple of the
//! row immediately above. The engine is generic over the scalar so the exact
//! rational run follows the same control flow as the floating-point one.
//!
//! Convention for vanishing pivots: when `p_{i,j} = 0` the multiplier
//! `m_{i,j}` is `0`. Elimination fails only when a zero pivot sits above a
//! nonzero entry, which would call for a row exchange.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Scalar};

/// Pivots, multipliers and the terminal upper factor of a Neville elimination.
/// All indices are 0-based; `pivots[(i, j)]` is meaningful for `i >= j`,
/// `multipliers[(i, j)]` for `i > j`.
#[derive(Clone, Debug, PartialEq)]
pub struct NevilleTrace<T> {
    pub pivots: Matrix<T>,
    pub multipliers: Matrix<T>,
    pub upper: Matrix<T>,
}

impl<T: Scalar> NevilleTrace<T> {
    pub fn diagonal_pivots(&self) -> Vec<T> {
        let k = self.pivots.rows().min(self.pivots.cols());
        (0..k).map(|i| self.pivots[(i, i)].clone()).collect()
    }
}

/// Runs Neville elimination on a matrix with `rows >= cols`.
pub fn neville_eliminate<T: Scalar>(a: &Matrix<T>) -> Result<NevilleTrace<T>> {
    let (rows, cols) = (a.rows(), a.cols());
    if rows < cols {
        return Err(Error::Dimension(format!(
            "Neville elimination needs rows >= cols, got {rows}x{cols}"
        )));
    }
    let mut work = a.clone();
    let mut pivots = Matrix::zeros(rows, cols);
    let mut multipliers = Matrix::zeros(rows, cols);

    for t in 0..cols {
        for i in t..rows {
            pivots[(i, t)] = work[(i, t)].clone();
        }
        // Bottom-up so that row i-1 still holds step-t values when row i is updated.
        for i in (t + 1..rows).rev() {
            let below = work[(i, t)].clone();
            let above = work[(i - 1, t)].clone();
            if above.is_zero() {
                if below.is_zero() {
                    continue;
                }
                return Err(Error::ZeroPivot { row: i - 1, col: t });
            }
            let m = below / above;
            for j in t + 1..cols {
                let v = work[(i, j)].clone() - m.clone() * work[(i - 1, j)].clone();
                work[(i, j)] = v;
            }
            work[(i, t)] = T::zero();
            multipliers[(i, t)] = m;
        }
    }
    Ok(NevilleTrace {
        pivots,
        multipliers,
        upper: work,
    })
}

/// Packs the complete Neville elimination of `a` into the compact layout:
/// diagonal pivots on the diagonal, multipliers of `a` below it and
/// multipliers of the transposed upper factor above it.
pub fn complete_neville<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let trace = neville_eliminate(a)?;
    let k = a.cols();
    let upper_t = trace.upper.leading_block(k, k).transpose();
    let trace_t = neville_eliminate(&upper_t)?;
    let mut m = trace.multipliers.clone();
    for i in 0..k {
        m[(i, i)] = trace.pivots[(i, i)].clone();
        for j in i + 1..k {
            m[(i, j)] = trace_t.multipliers[(j, i)].clone();
        }
    }
    Ok(m)
}

/// Why a matrix failed the strict total positivity test. Indices are 0-based
/// positions in the compact layout of [`complete_neville`] (for the matrix
/// oriented with `rows >= cols`).
#[derive(Clone, Debug, PartialEq)]
pub enum StpWitness<T> {
    /// Elimination needed a row exchange at this pivot.
    ZeroPivot { row: usize, col: usize },
    /// A diagonal pivot or multiplier that should be positive.
    NonPositive { row: usize, col: usize, value: T },
}

#[derive(Clone, Debug, PartialEq)]
pub struct StpVerdict<T> {
    pub witness: Option<StpWitness<T>>,
}

impl<T> StpVerdict<T> {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Strict total positivity via complete Neville elimination: it must run
/// without exchanges and produce positive multipliers and diagonal pivots.
pub fn is_strictly_totally_positive<T: Scalar>(a: &Matrix<T>) -> StpVerdict<T> {
    let oriented = if a.rows() >= a.cols() { a.clone() } else { a.transpose() };
    check_compact(&oriented, |_, _| true)
}

/// Total positivity test for upper triangular matrices: every minor that is
/// not forced to vanish by the triangular shape is positive. Equivalent to
/// positive diagonal pivots and upper multipliers with all lower multipliers
/// zero.
pub fn is_triangular_totally_positive<T: Scalar>(a: &Matrix<T>) -> StpVerdict<T> {
    let k = a.cols();
    if a.rows() != k {
        return StpVerdict {
            witness: Some(StpWitness::ZeroPivot {
                row: a.rows().min(k),
                col: 0,
            }),
        };
    }
    for i in 0..k {
        for j in 0..i {
            if !a[(i, j)].is_zero() {
                return StpVerdict {
                    witness: Some(StpWitness::NonPositive {
                        row: i,
                        col: j,
                        value: a[(i, j)].clone(),
                    }),
                };
            }
        }
    }
    check_compact(a, |i, j| i <= j)
}

fn check_compact<T: Scalar>(a: &Matrix<T>, required: impl Fn(usize, usize) -> bool) -> StpVerdict<T> {
    let compact = match complete_neville(a) {
        Ok(m) => m,
        Err(Error::ZeroPivot { row, col }) => {
            return StpVerdict {
                witness: Some(StpWitness::ZeroPivot { row, col }),
            }
        }
        Err(_) => unreachable!("orientation guarantees rows >= cols"),
    };
    for i in 0..compact.rows() {
        for j in 0..compact.cols() {
            let v = &compact[(i, j)];
            if required(i, j) && *v <= T::zero() {
                return StpVerdict {
                    witness: Some(StpWitness::NonPositive {
                        row: i,
                        col: j,
                        value: v.clone(),
                    }),
                };
            }
        }
    }
    StpVerdict { witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvcore::{assemble_bv_generic, bv_determinant_generic};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    /// Determinant by cofactor expansion, the independent route for minors.
    fn det(a: &Matrix<BigRational>) -> BigRational {
        let n = a.rows();
        if n == 0 {
            return q(1, 1);
        }
        let mut acc = q(0, 1);
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| a[(r + 1, if c < j { c } else { c + 1 })].clone());
            let term = a[(0, j)].clone() * det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn sub(a: &Matrix<BigRational>, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix<BigRational> {
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(rows.len(), cols.len(), |i, j| a[(r0 + i, c0 + j)].clone())
    }

    #[test]
    fn identity_has_zero_multipliers() {
        let t = neville_eliminate(&Matrix::<f64>::identity(3)).unwrap();
        assert!(t.multipliers.as_slice().iter().all(|&m| m == 0.0));
        assert_eq!(t.diagonal_pivots(), vec![1.0; 3]);
    }

    #[test]
    fn two_by_two_bv_multiplier() {
        let a = assemble_bv_generic(&[q(1, 4), q(1, 2)], 1);
        let t = neville_eliminate(&a).unwrap();
        assert_eq!(t.multipliers[(1, 0)], q(2, 3));
        let m = complete_neville(&a).unwrap();
        assert_eq!(m[(0, 1)], q(1, 3));
        assert_eq!(m[(1, 1)], q(1, 3));
    }

    #[test]
    fn pivots_are_ratios_of_consecutive_minors() {
        let a = assemble_bv_generic(&[q(1, 5), q(2, 5), q(3, 5)], 2);
        let t = neville_eliminate(&a).unwrap();
        for j in 0..3 {
            for i in j..3 {
                let num = det(&sub(&a, i - j..i + 1, 0..j + 1));
                let den = det(&sub(&a, i - j..i, 0..j));
                assert_eq!(t.pivots[(i, j)], num / den, "pivot ({i},{j})");
            }
        }
    }

    #[test]
    fn diagonal_compact() {
        let a = Matrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, 3.0]]).unwrap();
        let m = complete_neville(&a).unwrap();
        assert_eq!(m.as_slice(), &[2.0, 0.0, 0.0, 3.0]);
    }

    #[test]
    fn zero_pivot_needs_exchange() {
        let a = Matrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(neville_eliminate(&a), Err(Error::ZeroPivot { row: 0, col: 0 }));
        let wide = Matrix::<f64>::zeros(2, 3);
        assert!(matches!(neville_eliminate(&wide), Err(Error::Dimension(_))));
    }

    #[test]
    fn stp_predicate() {
        let yes = Matrix::from_rows(vec![vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert!(is_strictly_totally_positive(&yes).holds());
        let no = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        let verdict = is_strictly_totally_positive(&no);
        assert!(matches!(
            verdict.witness,
            Some(StpWitness::NonPositive { row: 1, col: 1, .. })
        ));
        let wide = Matrix::from_rows(vec![vec![1.0, 1.0, 1.0], vec![1.0, 2.0, 3.0]]).unwrap();
        assert!(is_strictly_totally_positive(&wide).holds());
    }

    #[test]
    fn triangular_predicate() {
        let r = Matrix::from_rows(vec![vec![2.0, 2.0], vec![0.0, 4.0]]).unwrap();
        assert!(is_triangular_totally_positive(&r).holds());
        assert!(!is_strictly_totally_positive(&r).holds());
        let bad = Matrix::from_rows(vec![vec![2.0, -1.0], vec![0.0, 4.0]]).unwrap();
        assert!(!is_triangular_totally_positive(&bad).holds());
    }

    #[test]
    fn square_determinant_is_pivot_product() {
        let nodes = [q(1, 7), q(2, 7), q(4, 7), q(5, 7)];
        let a = assemble_bv_generic(&nodes, 3);
        let t = neville_eliminate(&a).unwrap();
        let prod = t.diagonal_pivots().into_iter().fold(q(1, 1), |acc, p| acc * p);
        assert_eq!(prod, bv_determinant_generic(&nodes));
        assert_eq!(prod, det(&a));
    }
}
