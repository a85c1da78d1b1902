//! The coefficient recursion.
//!
//! With `Ψ̂ⱼ` the orthonormalized representers and `mᵢ = M(pᵢ, vᵢ₋₁(pᵢ))`,
//! the first sweep computes
//!
//! ```text
//! Bᵢ = Σ_{k≤i} βᵢₖ mₖ,   vᵢ = Σ_{j≤i} Bⱼ Ψ̂ⱼ,
//! ```
//!
//! which for a source that does not depend on `v` is the minimum-norm
//! collocant of `Lv = M`. Further sweeps repeat the pass Gauss–Seidel style:
//! when point `i` is visited the coefficients `j < i` are already updated and
//! `j ≥ i` still hold the previous sweep. A sweep starting from all-zero
//! coefficients is exactly the first-sweep recursion.

use nalgebra::DMatrix;

use crate::collocation::CollocationSet;
use crate::error::{Error, Result};
use crate::operator::RepresenterBasis;
use crate::orthonormalize::{factor, BetaFactor};
use crate::problems::HomogenizedProblem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// upper bound on passes over the collocation points
    pub outer_sweeps: usize,
    /// stop once a sweep moves both `v` at the collocation points and the
    /// coefficients `B` by at most this
    pub tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { outer_sweeps: 5, tol: 1e-10 }
    }
}

#[derive(Clone)]
pub struct Solution {
    basis: RepresenterBasis,
    beta: BetaFactor,
    coefficients: Vec<f64>,
    /// `c = βᵀB`, so that `v = Σ cₖ Ψₖ`
    expansion: Vec<f64>,
    problem: HomogenizedProblem,
    sweep_changes: Vec<f64>,
    coefficient_changes: Vec<f64>,
    converged: bool,
}

pub fn solve(hp: &HomogenizedProblem, pts: &CollocationSet, opts: SolveOptions) -> Result<Solution> {
    let basis = RepresenterBasis::new(hp.operator, pts);
    let gram = basis.gram_matrix();
    let beta = factor(&gram)?;
    let n = basis.len();
    // H[(i, j)] = Ψ̂ⱼ(pᵢ)
    let h: DMatrix<f64> = basis.sample_matrix(pts.points()) * beta.beta().transpose();
    let b_mat = beta.beta();

    let mut b = vec![0.0; n];
    let mut m = vec![0.0; n];
    let mut previous = vec![0.0; n];
    let mut sweep_changes = Vec::new();
    let mut coefficient_changes = Vec::new();
    let mut converged = false;

    for _ in 0..opts.outer_sweeps.max(1) {
        let before = b.clone();
        for i in 0..n {
            let (xi, tau) = pts.points()[i];
            let v: f64 = (0..n).map(|j| h[(i, j)] * b[j]).sum();
            let mi = hp.source_term(xi, tau, v);
            if !mi.is_finite() || !v.is_finite() {
                let (x, t) = hp.map.to_physical(xi, tau);
                return Err(Error::NonFiniteValue { x, t });
            }
            m[i] = mi;
            b[i] = (0..=i).map(|k| b_mat[(i, k)] * m[k]).sum();
        }
        let current: Vec<f64> = (0..n).map(|i| (0..n).map(|j| h[(i, j)] * b[j]).sum()).collect();
        let change = max_abs_diff(&current, &previous);
        let b_change = max_abs_diff(&b, &before);
        sweep_changes.push(change);
        coefficient_changes.push(b_change);
        previous = current;
        // a source that ignores v makes every further sweep a no-op
        if (change <= opts.tol && b_change <= opts.tol) || hp.is_linear() {
            converged = true;
            break;
        }
    }

    let expansion = (0..n)
        .map(|k| (k..n).map(|i| b_mat[(i, k)] * b[i]).sum())
        .collect();
    Ok(Solution {
        basis,
        beta,
        coefficients: b,
        expansion,
        problem: hp.clone(),
        sweep_changes,
        coefficient_changes,
        converged,
    })
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// `sqrt(Σ Bᵢ²)`, the `W` norm of `Σ Bᵢ Ψ̂ᵢ`.
pub fn solution_norm(b: &[f64]) -> f64 {
    b.iter().map(|b| b * b).sum::<f64>().sqrt()
}

impl Solution {
    pub fn basis(&self) -> &RepresenterBasis {
        &self.basis
    }

    pub fn beta(&self) -> &BetaFactor {
        &self.beta
    }

    /// `Bᵢ`, the coordinates of `v` in the orthonormal basis.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Weights of `v` on the raw representers.
    pub fn expansion(&self) -> &[f64] {
        &self.expansion
    }

    pub fn problem(&self) -> &HomogenizedProblem {
        &self.problem
    }

    pub fn sweeps_used(&self) -> usize {
        self.sweep_changes.len()
    }

    /// Max change of `v` at the collocation points, per sweep. The first
    /// entry is measured from `v = 0`.
    pub fn sweep_changes(&self) -> &[f64] {
        &self.sweep_changes
    }

    /// Max change of `B` per sweep.
    pub fn coefficient_changes(&self) -> &[f64] {
        &self.coefficient_changes
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    /// `‖v‖_W = sqrt(Σ Bᵢ²)`.
    pub fn norm(&self) -> f64 {
        solution_norm(&self.coefficients)
    }

    /// `‖vₖ‖_W` for `k = 1, ..., n`.
    pub fn norm_history(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.coefficients
            .iter()
            .map(|b| {
                acc += b * b;
                acc.sqrt()
            })
            .collect()
    }

    /// `∂_ξ^dx ∂_τ^dt v` on the unit square.
    pub fn evaluate_canonical(&self, xi: f64, tau: f64, dx: usize, dt: usize) -> f64 {
        // Every member of W vanishes identically on these edges. Summing the
        // expansion there would leave rounding amplified by the weights.
        if (dx == 0 && (xi == 0.0 || xi == 1.0)) || (dt <= 1 && tau == 0.0) {
            return 0.0;
        }
        self.expansion
            .iter()
            .enumerate()
            .map(|(k, c)| c * self.basis.psi_derivative_unchecked(k, xi, tau, dx, dt))
            .sum()
    }

    fn check(&self, x: f64, t: f64) -> Result<(f64, f64)> {
        if !x.is_finite() || !t.is_finite() || !self.problem.map.contains(x, t) {
            return Err(Error::OutOfDomain { x, t });
        }
        let (xi, tau) = self.problem.map.to_canonical(x, t);
        Ok((xi.clamp(0.0, 1.0), tau.clamp(0.0, 1.0)))
    }

    /// `u(x, t) = v(ξ, τ) + w(x, t)` at a physical point.
    pub fn evaluate(&self, x: f64, t: f64) -> Result<f64> {
        let (xi, tau) = self.check(x, t)?;
        Ok(self.evaluate_canonical(xi, tau, 0, 0) + self.problem.lifting.value(x, t))
    }

    /// `∂ₓu(x, t)`.
    pub fn evaluate_dx(&self, x: f64, t: f64) -> Result<f64> {
        let (xi, tau) = self.check(x, t)?;
        let v = self.evaluate_canonical(xi, tau, 1, 0) / self.problem.map.width();
        Ok(v + self.problem.lifting.dx(x, t))
    }
}
