//! The scaled wave operator `L = α∂ₜ² − γ∂ₓ²` and its representers.
//!
//! For a collocation point `pᵢ = (xᵢ, tᵢ)` the representer is
//! `Ψᵢ(x, t) = L_(y,s) K((x, t), (y, s))` at `(y, s) = pᵢ`, so that
//! `<u, Ψᵢ>_W = (Lu)(pᵢ)` for every `u` in `W`. In particular
//! `<Ψⱼ, Ψᵢ>_W = (LΨⱼ)(pᵢ)`, which gives the Gram matrix in closed form
//! without any quadrature.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::collocation::CollocationSet;
use crate::error::Result;
use crate::kernels::{closed_form_kernel, PiecewiseKernel, SpaceId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveOperator {
    /// coefficient of `∂ₜ²` (`1/T²` after rescaling time)
    pub alpha: f64,
    /// coefficient of `∂ₓ²` (`1/(b−a)²` after rescaling space)
    pub gamma: f64,
}

impl WaveOperator {
    pub fn new(alpha: f64, gamma: f64) -> Self {
        assert!(alpha > 0.0 && gamma > 0.0, "wave operator coefficients must be positive");
        Self { alpha, gamma }
    }

    /// `∂ₜ² − ∂ₓ²`
    pub fn unit() -> Self {
        Self::new(1.0, 1.0)
    }

    pub fn scaled(self, c: f64) -> Self {
        Self::new(self.alpha * c, self.gamma * c)
    }
}

/// Central-difference application of `L` to `f` at `(x, t)`.
pub fn apply_l_numeric(op: WaveOperator, f: impl Fn(f64, f64) -> f64, x: f64, t: f64, h: f64) -> f64 {
    let c = f(x, t);
    let ftt = (f(x, t + h) - 2.0 * c + f(x, t - h)) / (h * h);
    let fxx = (f(x + h, t) - 2.0 * c + f(x - h, t)) / (h * h);
    op.alpha * ftt - op.gamma * fxx
}

#[derive(Debug, Clone)]
pub struct RepresenterBasis {
    operator: WaveOperator,
    space_kernel: PiecewiseKernel,
    time_kernel: PiecewiseKernel,
    points: Vec<(f64, f64)>,
}

impl RepresenterBasis {
    pub fn new(operator: WaveOperator, points: &CollocationSet) -> Self {
        Self::from_points(operator, points.points().to_vec())
    }

    /// Basis over arbitrary points, without the checks `CollocationSet`
    /// performs.
    pub fn from_points(operator: WaveOperator, points: Vec<(f64, f64)>) -> Self {
        Self::with_kernels(
            operator,
            closed_form_kernel(SpaceId::SpatialW3),
            closed_form_kernel(SpaceId::TemporalW3),
            points,
        )
    }

    pub fn with_kernels(
        operator: WaveOperator,
        space_kernel: PiecewiseKernel,
        time_kernel: PiecewiseKernel,
        points: Vec<(f64, f64)>,
    ) -> Self {
        // Gram entries take up to two derivatives per slot on the diagonal.
        assert!(
            space_kernel.diagonal_smoothness() >= 4 && time_kernel.diagonal_smoothness() >= 4,
            "representer kernels must be C⁴ across the diagonal"
        );
        Self { operator, space_kernel, time_kernel, points }
    }

    pub fn operator(&self) -> WaveOperator {
        self.operator
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn space_kernel(&self) -> &PiecewiseKernel {
        &self.space_kernel
    }

    pub fn time_kernel(&self) -> &PiecewiseKernel {
        &self.time_kernel
    }

    /// `∂ₓ^dx Ψᵢ(x, t)`.
    pub fn psi(&self, i: usize, x: f64, t: f64, dx: usize) -> Result<f64> {
        self.psi_derivative(i, x, t, dx, 0)
    }

    /// `∂ₓ^dx ∂ₜ^dt Ψᵢ(x, t)`.
    pub fn psi_derivative(&self, i: usize, x: f64, t: f64, dx: usize, dt: usize) -> Result<f64> {
        let (xi, ti) = self.points[i];
        let WaveOperator { alpha, gamma } = self.operator;
        let (rk, tk) = (&self.space_kernel, &self.time_kernel);
        Ok(alpha * rk.eval(x, xi, dx, 0)? * tk.eval(t, ti, dt, 2)?
            - gamma * rk.eval(x, xi, dx, 2)? * tk.eval(t, ti, dt, 0)?)
    }

    /// Same as [`psi_derivative`](Self::psi_derivative) but taking the lower
    /// branch on the kernel diagonals; for quadrature, where nodes never sit
    /// on a breakpoint.
    pub fn psi_derivative_unchecked(&self, i: usize, x: f64, t: f64, dx: usize, dt: usize) -> f64 {
        let (xi, ti) = self.points[i];
        let WaveOperator { alpha, gamma } = self.operator;
        let (rk, tk) = (&self.space_kernel, &self.time_kernel);
        alpha * rk.eval_unchecked(x, xi, dx, 0) * tk.eval_unchecked(t, ti, dt, 2)
            - gamma * rk.eval_unchecked(x, xi, dx, 2) * tk.eval_unchecked(t, ti, dt, 0)
    }

    /// `Aᵢⱼ = <Ψᵢ, Ψⱼ>_W = (LΨⱼ)(pᵢ)`.
    pub fn gram_entry(&self, i: usize, j: usize) -> f64 {
        let (xi, ti) = self.points[i];
        let (xj, tj) = self.points[j];
        let WaveOperator { alpha, gamma } = self.operator;
        let r = |a: usize, b: usize| self.space_kernel.eval_unchecked(xi, xj, a, b);
        let q = |a: usize, b: usize| self.time_kernel.eval_unchecked(ti, tj, a, b);
        // at most two derivatives per slot: total order 4 = 2m − 2 for m = 3,
        // so both branches agree even when xi == xj or ti == tj
        alpha * alpha * r(0, 0) * q(2, 2)
            - alpha * gamma * r(2, 0) * q(0, 2)
            - alpha * gamma * r(0, 2) * q(2, 0)
            + gamma * gamma * r(2, 2) * q(0, 0)
    }

    pub fn gram_matrix(&self) -> DMatrix<f64> {
        let n = self.len();
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|i| (0..=i).map(|j| self.gram_entry(i, j)).collect())
            .collect();
        let mut a = DMatrix::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                a[(i, j)] = v;
                a[(j, i)] = v;
            }
        }
        a
    }

    /// `P[(r, k)] = Ψₖ(x_r, t_r)` for the given evaluation points.
    pub fn sample_matrix(&self, at: &[(f64, f64)]) -> DMatrix<f64> {
        let n = self.len();
        let rows: Vec<Vec<f64>> = at
            .par_iter()
            .map(|&(x, t)| (0..n).map(|k| self.psi_derivative_unchecked(k, x, t, 0, 0)).collect())
            .collect();
        DMatrix::from_fn(at.len(), n, |r, k| rows[r][k])
    }
}
