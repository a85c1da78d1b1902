//! Reproducing-kernel collocation for the one-dimensional sine-Gordon
//! equation
//!
//! ```text
//! u_tt = u_xx - N(u) + s(x, t),   a <= x <= b,  0 <= t <= T,
//! u(x, 0) = f(x),  u_t(x, 0) = g(x),  u(a, t) = h1(t),  u(b, t) = h2(t),
//! ```
//!
//! with `N = sin` (sine-Gordon) or `N = 0` (linear wave).
//!
//! The problem is lifted to homogeneous data on the unit square, and the
//! remainder `v` is expanded in the representers `Psi_i = L* phi_i` of the
//! wave operator inside the tensor-product Sobolev space whose kernel is
//! `K((x, t), (y, s)) = R(x, y) r(t, s)`. The representers are orthonormalized
//! through a Cholesky factor of their Gram matrix and the series coefficients
//! are built by the sequential recursion
//! `B_i = sum_{k <= i} beta_ik M(p_k, v_{k-1}(p_k))`.
//!
//! Module map:
//!
//! - [`kernels`]: univariate piecewise-polynomial kernels, their derivation
//!   from the space definition, and quadrature inner products.
//! - [`tensor`]: product kernels on the unit square.
//! - [`operator`]: the scaled wave operator, representers and Gram entries.
//! - [`orthonormalize`]: Gram factorization into orthonormalization weights.
//! - [`collocation`], [`solver`]: point sets, the coefficient recursion and
//!   series evaluation.
//! - [`problems`]: problem data, lifting, built-in examples, error tables.
//! - [`config`], [`report`]: run configuration and CSV/markdown output used
//!   by the `rkhs-sg` binary.

// `!(x > y)` is used on purpose so that NaN takes the error branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod collocation;
pub mod config;
pub mod error;
pub mod expr;
pub mod kernels;
pub mod operator;
pub mod orthonormalize;
pub mod problems;
pub mod quadrature;
pub mod report;
pub mod solver;
pub mod tensor;

pub use collocation::{CollocationSet, Ordering};
pub use error::{Error, Result};
pub use kernels::{PiecewiseKernel, SpaceId, SpaceSpec};
pub use operator::{RepresenterBasis, WaveOperator};
pub use orthonormalize::BetaFactor;
pub use problems::{builtin, BuiltinId, ErrorReport, HomogenizedProblem, ProblemSpec};
pub use solver::{solve, SolveOptions, Solution};
pub use tensor::{TensorKernel, TensorSpace};
