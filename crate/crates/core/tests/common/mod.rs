#![allow(dead_code)]

use bernfit::{Matrix, NodeSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::prelude::*;
use std::collections::HashMap;

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

/// Exact determinant by Laplace expansion along rows, memoized on the set of
/// columns still available.
pub fn det_cofactor(a: &Matrix<BigRational>) -> BigRational {
    fn go(a: &Matrix<BigRational>, row: usize, used: u32, memo: &mut HashMap<u32, BigRational>) -> BigRational {
        let n = a.rows();
        if row == n {
            return BigRational::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = BigRational::zero();
        let mut sign_pos = true;
        for j in 0..n {
            if used & (1 << j) != 0 {
                continue;
            }
            if !a[(row, j)].is_zero() {
                let term = a[(row, j)].clone() * go(a, row + 1, used | (1 << j), memo);
                acc = if sign_pos { acc + term } else { acc - term };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(used, acc.clone());
        acc
    }
    assert_eq!(a.rows(), a.cols());
    go(a, 0, 0, &mut HashMap::new())
}

pub fn submatrix<T: Clone>(a: &Matrix<T>, rows: &[usize], cols: &[usize]) -> Matrix<T> {
    Matrix::from_fn(rows.len(), cols.len(), |i, j| a[(rows[i], cols[j])].clone())
}

/// Sorted distinct nodes in (0, 1), kept at least `gap` apart.
pub fn random_nodes(rng: &mut impl Rng, count: usize, gap: f64) -> NodeSet {
    loop {
        let mut v: Vec<f64> = (0..count).map(|_| rng.gen_range(0.001..0.999)).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if v.windows(2).all(|w| w[1] - w[0] >= gap) {
            return NodeSet::new(v).unwrap();
        }
    }
}

/// Sorted distinct rationals `p/den` in (0, 1).
pub fn random_rational_nodes(rng: &mut impl Rng, count: usize, den: i64) -> Vec<BigRational> {
    let mut picks: Vec<i64> = (1..den).collect();
    picks.shuffle(rng);
    let mut chosen: Vec<i64> = picks.into_iter().take(count).collect();
    chosen.sort_unstable();
    chosen.into_iter().map(|p| q(p, den)).collect()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

pub fn max_entry_rel_err(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| rel_err(*x, *y))
        .fold(0.0, f64::max)
}
