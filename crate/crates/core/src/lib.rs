//! Polynomial least-squares fitting in the Bernstein basis with high relative
//! accuracy.
//!
//! The collocation matrix of the Bernstein basis at nodes `0 < x_1 < … < x_{l+1} < 1`
//! is strictly totally positive. Its bidiagonal factorization is known in
//! closed form ([`tnbdbv`]), a QR decomposition can be computed directly from
//! that factorization without subtractive cancellation ([`tnqr`]), and the
//! triangular solve runs through the factored `R` ([`tnsolve`]). The
//! resulting pipeline ([`fit_bernstein`]) keeps its accuracy as the
//! conditioning of the problem deteriorates, unlike dense solvers
//! ([`fit_generic_qr`], [`fit_normal_equations`]).
//!
//! Exact rational references live in [`oracle`].

pub mod bvcore;
pub mod error;
pub mod experiments;
pub mod lsq;
pub mod matrix;
pub mod neville;
pub mod oracle;
pub mod tnbdbv;
pub mod tnqr;

pub use bvcore::{
    assemble_bv, bernstein_eval, binomial, bv_determinant, de_casteljau_eval, CoefficientVector, NodeSet, ProblemDims,
};
pub use error::{Error, Result};
pub use lsq::{
    fit, fit_bernstein, fit_bernstein_with_diagnostics, fit_generic_qr, fit_normal_equations, Diagnostics, FitResult,
    Method,
};
pub use matrix::{DenseMatrix, Matrix, Scalar};
pub use neville::{complete_neville, is_strictly_totally_positive, neville_eliminate, NevilleTrace};
pub use oracle::{
    condition_numbers, exact_fit, exact_fit_f64, relative_errors, ConditionReport, ExactSolution, RelativeErrors,
};
pub use tnbdbv::{expand_bd, tnbdbv, BDForm};
pub use tnqr::{tnqr, tnqr_with_stats, tnsolve, QRFactors, QrStats};
