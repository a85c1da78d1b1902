//! Product kernels on the unit square.
//!
//! `W` is the tensor product of the spatial and temporal third-order spaces
//! with kernel `K((x,t),(y,s)) = R(x,y) r(t,s)`. `Ŵ` is the product of the
//! two first-order spaces with kernel `G((x,t),(y,s)) = Q(x,y) q(t,s)`.

use crate::error::Result;
use crate::kernels::{closed_form_kernel, PiecewiseKernel, SpaceId, SpaceSpec};
use crate::quadrature::Rule;

/// A function on the square that can report mixed partial derivatives.
pub trait Bivariate {
    fn deriv(&self, x: f64, t: f64, dx: usize, dt: usize) -> f64;
}

impl<F: Fn(f64, f64, usize, usize) -> f64> Bivariate for F {
    fn deriv(&self, x: f64, t: f64, dx: usize, dt: usize) -> f64 {
        self(x, t, dx, dt)
    }
}

/// Derivative orders `(∂ₓ, ∂ₜ)` on the argument and `(∂_y, ∂_s)` on the
/// parameter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Orders {
    pub dx: usize,
    pub dt: usize,
    pub dy: usize,
    pub ds: usize,
}

impl Orders {
    pub const ZERO: Orders = Orders { dx: 0, dt: 0, dy: 0, ds: 0 };

    pub fn new(dx: usize, dt: usize, dy: usize, ds: usize) -> Self {
        Self { dx, dt, dy, ds }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorSpace {
    W,
    WHat,
}

impl TensorSpace {
    pub fn factor_ids(self) -> (SpaceId, SpaceId) {
        match self {
            TensorSpace::W => (SpaceId::SpatialW3, SpaceId::TemporalW3),
            TensorSpace::WHat => (SpaceId::SpatialW1, SpaceId::TemporalW1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorKernel {
    pub space_factor: PiecewiseKernel,
    pub time_factor: PiecewiseKernel,
}

impl TensorKernel {
    pub fn new(space_factor: PiecewiseKernel, time_factor: PiecewiseKernel) -> Self {
        Self { space_factor, time_factor }
    }

    pub fn of(space: TensorSpace) -> Self {
        let (xs, ts) = space.factor_ids();
        Self::new(closed_form_kernel(xs), closed_form_kernel(ts))
    }

    pub fn eval(&self, arg: (f64, f64), param: (f64, f64), o: Orders) -> Result<f64> {
        let sx = self.space_factor.eval(arg.0, param.0, o.dx, o.dy)?;
        let st = self.time_factor.eval(arg.1, param.1, o.dt, o.ds)?;
        Ok(sx * st)
    }

    /// `(x, t) ↦ K((x, t), param)` with any argument derivatives, picking the
    /// lower branch on the diagonals.
    pub fn section(&self, param: (f64, f64)) -> impl Bivariate + '_ {
        move |x: f64, t: f64, dx: usize, dt: usize| {
            self.space_factor.eval_unchecked(x, param.0, dx, 0)
                * self.time_factor.eval_unchecked(t, param.1, dt, 0)
        }
    }
}

/// Inner product of the tensor product of two univariate spaces.
///
/// With boundary functionals `Bₐ` and `C_b` of the factor spaces and
/// integral orders `m`, `n`:
///
/// ```text
/// <u, g> = Σₐ Σ_b BₐC_b u · BₐC_b g
///        + Σₐ ∫ Bₐ ∂ₜⁿ u · Bₐ ∂ₜⁿ g dt
///        + Σ_b ∫ ∂ₓᵐ C_b u · ∂ₓᵐ C_b g dx
///        + ∫∫ ∂ₓᵐ∂ₜⁿ u · ∂ₓᵐ∂ₜⁿ g dx dt
/// ```
///
/// Integrals use a 64-node Gauss–Legendre panel between consecutive
/// breakpoints in each direction. Verification only.
pub fn inner_product_numeric_2d(
    space: TensorSpace,
    u: &impl Bivariate,
    g: &impl Bivariate,
    breaks_x: &[f64],
    breaks_t: &[f64],
) -> f64 {
    inner_product_2d_with_rule(space, u, g, breaks_x, breaks_t, &Rule::default())
}

pub fn inner_product_2d_with_rule(
    space: TensorSpace,
    u: &impl Bivariate,
    g: &impl Bivariate,
    breaks_x: &[f64],
    breaks_t: &[f64],
    rule: &Rule,
) -> f64 {
    let (xs, ts) = space.factor_ids();
    let (sx, st) = (SpaceSpec::of(xs), SpaceSpec::of(ts));
    let (m, n) = (sx.integral_order, st.integral_order);

    let mut total = 0.0;
    for &(a, e) in &sx.discrete {
        let x = e.coordinate();
        for &(b, f) in &st.discrete {
            let t = f.coordinate();
            total += u.deriv(x, t, a, b) * g.deriv(x, t, a, b);
        }
        total += rule.integrate_unit(breaks_t, |t| u.deriv(x, t, a, n) * g.deriv(x, t, a, n));
    }
    for &(b, f) in &st.discrete {
        let t = f.coordinate();
        total += rule.integrate_unit(breaks_x, |x| u.deriv(x, t, m, b) * g.deriv(x, t, m, b));
    }
    total += rule.integrate_square(breaks_x, breaks_t, |x, t| {
        u.deriv(x, t, m, n) * g.deriv(x, t, m, n)
    });
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishes_on_constrained_edges() {
        let k = TensorKernel::of(TensorSpace::W);
        for p in [(0.2, 0.9), (0.7, 0.3)] {
            assert_eq!(k.eval((0.0, 0.4), p, Orders::ZERO).unwrap(), 0.0);
            assert_eq!(k.eval((0.3, 0.0), p, Orders::ZERO).unwrap(), 0.0);
            assert!(k.eval((1.0, 0.4), p, Orders::ZERO).unwrap().abs() < 1e-16);
        }
    }

    #[test]
    fn argument_parameter_symmetry() {
        let k = TensorKernel::of(TensorSpace::W);
        let a = k.eval((0.2, 0.7), (0.6, 0.1), Orders::ZERO).unwrap();
        let b = k.eval((0.6, 0.1), (0.2, 0.7), Orders::ZERO).unwrap();
        assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300));
    }

    #[test]
    fn factorizes_exactly() {
        let k = TensorKernel::of(TensorSpace::W);
        let o = Orders::new(1, 2, 2, 0);
        let v = k.eval((0.25, 0.8), (0.5, 0.3), o).unwrap();
        let w = k.space_factor.eval(0.25, 0.5, 1, 2).unwrap()
            * k.time_factor.eval(0.8, 0.3, 2, 0).unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn zero_function_has_zero_inner_product() {
        let zero = |_: f64, _: f64, _: usize, _: usize| 0.0;
        let k = TensorKernel::of(TensorSpace::W);
        let g = k.section((0.5, 0.5));
        assert_eq!(inner_product_numeric_2d(TensorSpace::W, &zero, &g, &[0.5], &[0.5]), 0.0);
    }
}
