//! Problem data, reduction to the unit square, and error tables.
//!
//! A problem on `[a, b] × [0, T]` is reduced to homogeneous data by the
//! lifting
//!
//! ```text
//! w(x, t) = f(x) + t g(x) + (b − x)/(b − a) ρ(t) + (x − a)/(b − a) σ(t),
//! ρ(t) = h1(t) − f(a) − t g(a),   σ(t) = h2(t) − f(b) − t g(b),
//! ```
//!
//! and the remainder `v = u − w` solves `α v_ττ − γ v_ξξ = M(ξ, τ, v)` on the
//! unit square with
//! `M = −N(v + w) + s − (w_tt − w_xx)`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::operator::WaveOperator;
use crate::solver::Solution;

/// A data function of one variable: `profile(x, k)` is the `k`-th
/// derivative, `k ≤ 2`.
pub type Profile = Arc<dyn Fn(f64, usize) -> f64 + Send + Sync>;

/// A function of `(x, t)`.
pub type Field = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

const CORNER_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub a: f64,
    pub b: f64,
    pub t_end: f64,
}

impl Domain {
    pub fn new(a: f64, b: f64, t_end: f64) -> Self {
        Self { a, b, t_end }
    }

    pub fn unit() -> Self {
        Self::new(0.0, 1.0, 1.0)
    }
}

/// Affine map between `[a, b] × [0, T]` and the unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainMap {
    domain: Domain,
}

impl DomainMap {
    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn width(&self) -> f64 {
        self.domain.b - self.domain.a
    }

    pub fn to_canonical(&self, x: f64, t: f64) -> (f64, f64) {
        ((x - self.domain.a) / self.width(), t / self.domain.t_end)
    }

    pub fn to_physical(&self, xi: f64, tau: f64) -> (f64, f64) {
        (self.domain.a + xi * self.width(), tau * self.domain.t_end)
    }

    pub fn contains(&self, x: f64, t: f64) -> bool {
        let eps = 1e-12 * (1.0 + self.width().abs() + self.domain.t_end.abs());
        let d = self.domain;
        x >= d.a - eps && x <= d.b + eps && t >= -eps && t <= d.t_end + eps
    }
}

/// `ξ = (x − a)/(b − a)`, `τ = t/T`; the wave operator picks up
/// `α = 1/T²` and `γ = 1/(b − a)²`.
pub fn canonicalize(domain: Domain) -> Result<(DomainMap, WaveOperator)> {
    let Domain { a, b, t_end } = domain;
    if !(b > a) || !(t_end > 0.0) || !a.is_finite() || !b.is_finite() || !t_end.is_finite() {
        return Err(Error::DegenerateDomain { a, b, t_end });
    }
    let op = WaveOperator::new(1.0 / (t_end * t_end), 1.0 / ((b - a) * (b - a)));
    Ok((DomainMap { domain }, op))
}

#[derive(Clone, Default)]
pub enum Nonlinearity {
    /// linear wave equation
    #[default]
    Zero,
    /// sine-Gordon
    Sine,
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Nonlinearity {
    pub fn apply(&self, u: f64) -> f64 {
        match self {
            Nonlinearity::Zero => 0.0,
            Nonlinearity::Sine => u.sin(),
            Nonlinearity::Custom(f) => f(u),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Nonlinearity::Zero)
    }
}

impl fmt::Debug for Nonlinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nonlinearity::Zero => f.write_str("Zero"),
            Nonlinearity::Sine => f.write_str("Sine"),
            Nonlinearity::Custom(_) => f.write_str("Custom"),
        }
    }
}

#[derive(Clone)]
pub struct ExactSolution {
    pub value: Field,
    pub dx: Option<Field>,
}

/// `u_tt = u_xx − N(u) + s` with Cauchy data `f`, `g` and Dirichlet data
/// `h1`, `h2`.
#[derive(Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub domain: Domain,
    pub f: Profile,
    pub g: Profile,
    pub h1: Profile,
    pub h2: Profile,
    pub nonlinearity: Nonlinearity,
    pub source: Option<Field>,
    pub exact: Option<ExactSolution>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("nonlinearity", &self.nonlinearity)
            .field("has_source", &self.source.is_some())
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

fn zero_profile() -> Profile {
    Arc::new(|_, _| 0.0)
}

impl ProblemSpec {
    /// Homogeneous data on `domain`; fill in with the `with_*` builders.
    pub fn new(name: impl Into<String>, domain: Domain) -> Self {
        Self {
            name: name.into(),
            domain,
            f: zero_profile(),
            g: zero_profile(),
            h1: zero_profile(),
            h2: zero_profile(),
            nonlinearity: Nonlinearity::Zero,
            source: None,
            exact: None,
        }
    }

    pub fn with_initial(mut self, f: Profile, g: Profile) -> Self {
        self.f = f;
        self.g = g;
        self
    }

    pub fn with_boundary(mut self, h1: Profile, h2: Profile) -> Self {
        self.h1 = h1;
        self.h2 = h2;
        self
    }

    pub fn with_nonlinearity(mut self, n: Nonlinearity) -> Self {
        self.nonlinearity = n;
        self
    }

    pub fn with_source(mut self, s: Field) -> Self {
        self.source = Some(s);
        self
    }

    pub fn with_exact(mut self, exact: ExactSolution) -> Self {
        self.exact = Some(exact);
        self
    }

    /// `h1(0) = f(a)`, `h2(0) = f(b)`, `h1'(0) = g(a)`, `h2'(0) = g(b)`.
    pub fn check_corners(&self) -> Result<()> {
        let Domain { a, b, .. } = self.domain;
        let checks = [
            ("h1(0) = f(a)", (self.h1)(0.0, 0), (self.f)(a, 0)),
            ("h2(0) = f(b)", (self.h2)(0.0, 0), (self.f)(b, 0)),
            ("h1'(0) = g(a)", (self.h1)(0.0, 1), (self.g)(a, 0)),
            ("h2'(0) = g(b)", (self.h2)(0.0, 1), (self.g)(b, 0)),
        ];
        for (what, lhs, rhs) in checks {
            if !((lhs - rhs).abs() <= CORNER_TOLERANCE) {
                return Err(Error::IncompatibleCorners(format!("{what}: {lhs} vs {rhs}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum LiftingMode {
    /// Initial and boundary data.
    #[default]
    Full,
    /// `w = f + t g` only; boundary data is left in `v`. Does not require
    /// compatible corners and does not yield homogeneous boundary values.
    InitialOnly,
}

#[derive(Clone)]
pub struct Lifting {
    domain: Domain,
    f: Profile,
    g: Profile,
    h1: Profile,
    h2: Profile,
    mode: LiftingMode,
}

impl Lifting {
    fn weights(&self, x: f64) -> (f64, f64) {
        let Domain { a, b, .. } = self.domain;
        ((b - x) / (b - a), (x - a) / (b - a))
    }

    /// `ρ⁽ᵏ⁾(t)` and `σ⁽ᵏ⁾(t)`.
    fn strips(&self, t: f64, k: usize) -> (f64, f64) {
        if self.mode == LiftingMode::InitialOnly {
            return (0.0, 0.0);
        }
        let Domain { a, b, .. } = self.domain;
        let edge = |h: &Profile, at: f64| {
            let base = match k {
                0 => (self.f)(at, 0) + t * (self.g)(at, 0),
                1 => (self.g)(at, 0),
                _ => 0.0,
            };
            h(t, k) - base
        };
        (edge(&self.h1, a), edge(&self.h2, b))
    }

    pub fn value(&self, x: f64, t: f64) -> f64 {
        let (wl, wr) = self.weights(x);
        let (rho, sigma) = self.strips(t, 0);
        (self.f)(x, 0) + t * (self.g)(x, 0) + wl * rho + wr * sigma
    }

    pub fn dx(&self, x: f64, t: f64) -> f64 {
        let (rho, sigma) = self.strips(t, 0);
        (self.f)(x, 1) + t * (self.g)(x, 1) + (sigma - rho) / (self.domain.b - self.domain.a)
    }

    pub fn dxx(&self, x: f64, t: f64) -> f64 {
        (self.f)(x, 2) + t * (self.g)(x, 2)
    }

    pub fn dt(&self, x: f64, t: f64) -> f64 {
        let (wl, wr) = self.weights(x);
        let (rho, sigma) = self.strips(t, 1);
        (self.g)(x, 0) + wl * rho + wr * sigma
    }

    pub fn dtt(&self, x: f64, t: f64) -> f64 {
        let (wl, wr) = self.weights(x);
        let (rho, sigma) = self.strips(t, 2);
        wl * rho + wr * sigma
    }
}

/// `α v_ττ − γ v_ξξ = M(ξ, τ, v)` with homogeneous data on the unit square.
#[derive(Clone)]
pub struct HomogenizedProblem {
    pub operator: WaveOperator,
    pub map: DomainMap,
    pub lifting: Lifting,
    pub nonlinearity: Nonlinearity,
    pub source: Option<Field>,
    pub exact: Option<ExactSolution>,
    pub name: String,
}

impl HomogenizedProblem {
    /// `M(ξ, τ, v)`.
    pub fn source_term(&self, xi: f64, tau: f64, v: f64) -> f64 {
        let (x, t) = self.map.to_physical(xi, tau);
        let w = &self.lifting;
        let s = self.source.as_ref().map_or(0.0, |s| s(x, t));
        -self.nonlinearity.apply(v + w.value(x, t)) + s - (w.dtt(x, t) - w.dxx(x, t))
    }

    pub fn is_linear(&self) -> bool {
        self.nonlinearity.is_zero()
    }
}

pub fn homogenize(p: &ProblemSpec) -> Result<HomogenizedProblem> {
    homogenize_with(p, LiftingMode::Full)
}

pub fn homogenize_with(p: &ProblemSpec, mode: LiftingMode) -> Result<HomogenizedProblem> {
    let (map, operator) = canonicalize(p.domain)?;
    if mode == LiftingMode::Full {
        p.check_corners()?;
    }
    Ok(HomogenizedProblem {
        operator,
        map,
        lifting: Lifting {
            domain: p.domain,
            f: p.f.clone(),
            g: p.g.clone(),
            h1: p.h1.clone(),
            h2: p.h2.clone(),
            mode,
        },
        nonlinearity: p.nonlinearity.clone(),
        source: p.source.clone(),
        exact: p.exact.clone(),
        name: p.name.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinId {
    /// linear standing wave `sin(πx) cos(πt)` on the unit square
    Ex51,
    /// sine-Gordon breather-like solution `4 arctan(t sech x)` on `[−1, 1] × [0, 1]`
    Ex52,
}

pub fn builtin(id: BuiltinId) -> ProblemSpec {
    match id {
        BuiltinId::Ex51 => standing_wave(),
        BuiltinId::Ex52 => sine_gordon_sech(-1.0, 1.0),
    }
}

/// `u = sin(πx) cos(πt)` for the linear wave equation on the unit square.
pub fn standing_wave() -> ProblemSpec {
    let f: Profile = Arc::new(|x, k| match k {
        0 => (PI * x).sin(),
        1 => PI * (PI * x).cos(),
        _ => -PI * PI * (PI * x).sin(),
    });
    ProblemSpec::new("ex51", Domain::unit())
        .with_initial(f, zero_profile())
        .with_exact(ExactSolution {
            value: Arc::new(|x, t| (PI * x).sin() * (PI * t).cos()),
            dx: Some(Arc::new(|x, t| PI * (PI * x).cos() * (PI * t).cos())),
        })
}

fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

/// `u* = 4 arctan(t sech x)` for the sine-Gordon equation on `[a, b] × [0, 1]`,
/// with Dirichlet data read off `u*`.
pub fn sine_gordon_sech(a: f64, b: f64) -> ProblemSpec {
    let g: Profile = Arc::new(|x, k| {
        let (s, th) = (sech(x), x.tanh());
        match k {
            0 => 4.0 * s,
            1 => -4.0 * s * th,
            _ => 4.0 * s * (th * th - s * s),
        }
    });
    let edge = |x: f64| -> Profile {
        let c = sech(x);
        Arc::new(move |t, k| {
            let q = 1.0 + c * c * t * t;
            match k {
                0 => 4.0 * (c * t).atan(),
                1 => 4.0 * c / q,
                _ => -8.0 * c * c * c * t / (q * q),
            }
        })
    };
    ProblemSpec::new("ex52", Domain::new(a, b, 1.0))
        .with_initial(zero_profile(), g)
        .with_boundary(edge(a), edge(b))
        .with_nonlinearity(Nonlinearity::Sine)
        .with_exact(ExactSolution {
            value: Arc::new(|x, t| 4.0 * (t * sech(x)).atan()),
            dx: Some(Arc::new(|x, t| {
                let s = sech(x);
                -4.0 * t * s * x.tanh() / (1.0 + t * t * s * s)
            })),
        })
}

/// The ten diagonal points `x = t = 0.1, ..., 1.0`.
pub fn diagonal_points() -> Vec<(f64, f64)> {
    (1..=10).map(|k| (k as f64 / 10.0, k as f64 / 10.0)).collect()
}

/// `x ∈ {−0.8, −0.4, 0, 0.4, 0.8}` at `t = 1`.
pub fn final_time_points() -> Vec<(f64, f64)> {
    [-0.8, -0.4, 0.0, 0.4, 0.8].iter().map(|&x| (x, 1.0)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub x: f64,
    pub t: f64,
    pub exact: f64,
    pub approx: f64,
    pub abs_err: f64,
    /// infinite where the exact value is zero
    pub rel_err: f64,
    pub seconds: f64,
}

impl ErrorRow {
    pub fn new(x: f64, t: f64, exact: f64, approx: f64, seconds: f64) -> Self {
        let abs_err = (exact - approx).abs();
        let rel_err = if abs_err == 0.0 {
            0.0
        } else if exact == 0.0 {
            f64::INFINITY
        } else {
            abs_err / exact.abs()
        };
        Self { x, t, exact, approx, abs_err, rel_err, seconds }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ErrorReport {
    pub rows: Vec<ErrorRow>,
}

impl ErrorReport {
    pub fn max_abs_error(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_err).fold(0.0, f64::max)
    }

    /// Largest finite relative error; rows with a zero exact value are skipped.
    pub fn max_rel_error(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.rel_err)
            .filter(|v| v.is_finite())
            .fold(0.0, f64::max)
    }
}

pub fn error_table(sol: &Solution, eval_points: &[(f64, f64)]) -> Result<ErrorReport> {
    let exact = sol.problem().exact.as_ref().ok_or(Error::NoExactSolution)?;
    let mut rows = Vec::with_capacity(eval_points.len());
    for &(x, t) in eval_points {
        let start = Instant::now();
        let approx = sol.evaluate(x, t)?;
        let seconds = start.elapsed().as_secs_f64();
        rows.push(ErrorRow::new(x, t, (exact.value)(x, t), approx, seconds));
    }
    Ok(ErrorReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_operator_coefficients() {
        let (_, op) = canonicalize(Domain::unit()).unwrap();
        assert_eq!((op.alpha, op.gamma), (1.0, 1.0));
        let (_, op) = canonicalize(Domain::new(0.0, 2.0, 4.0)).unwrap();
        assert_eq!((op.alpha, op.gamma), (1.0 / 16.0, 0.25));
        assert!(canonicalize(Domain::new(1.0, 1.0, 1.0)).is_err());
        assert!(canonicalize(Domain::new(0.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn map_round_trip() {
        let (map, _) = canonicalize(Domain::new(-1.0, 1.0, 2.5)).unwrap();
        for &(x, t) in &[(-1.0, 0.0), (0.3, 1.7), (1.0, 2.5), (-0.77, 0.01)] {
            let (xi, tau) = map.to_canonical(x, t);
            let (x2, t2) = map.to_physical(xi, tau);
            assert!((x2 - x).abs() <= 1e-15 && (t2 - t).abs() <= 1e-15);
        }
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn exact_values_of_builtins() {
        let e51 = builtin(BuiltinId::Ex51).exact.unwrap();
        assert!(((e51.value)(0.3, 0.3) - 0.4755282582).abs() < 1e-10);
        let e52 = builtin(BuiltinId::Ex52).exact.unwrap();
        assert!(((e52.value)(0.0, 1.0) - 3.141592654).abs() < 1e-9);
        assert!(((e52.value)(-0.8, 1.0) - 2.568109722).abs() < 1e-9);
    }

    #[test]
    fn standing_wave_source_is_independent_of_v() {
        let hp = homogenize(&builtin(BuiltinId::Ex51)).unwrap();
        for &(xi, tau) in &[(0.2, 0.3), (0.5, 0.9)] {
            let m = -PI * PI * (PI * xi).sin();
            for v in [-1.0, 0.0, 2.5] {
                assert!((hp.source_term(xi, tau, v) - m).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn homogeneous_data_gives_bare_nonlinearity() {
        let p = ProblemSpec::new("zero", Domain::unit()).with_nonlinearity(Nonlinearity::Sine);
        let hp = homogenize(&p).unwrap();
        assert_eq!(hp.lifting.value(0.3, 0.4), 0.0);
        assert_eq!(hp.source_term(0.3, 0.4, 0.7), -(0.7f64).sin());
    }

    #[test]
    fn incompatible_corners_are_rejected() {
        let bad: Profile = Arc::new(|_, k| if k == 0 { 1.0 } else { 0.0 });
        let p = ProblemSpec::new("bad", Domain::unit()).with_boundary(bad, zero_profile());
        assert!(matches!(homogenize(&p), Err(Error::IncompatibleCorners(_))));
    }

    #[test]
    fn relative_error_conventions() {
        let r = ErrorRow::new(0.0, 0.0, 0.5, 0.5, 0.0);
        assert_eq!((r.abs_err, r.rel_err), (0.0, 0.0));
        let r = ErrorRow::new(0.0, 0.0, 0.0, 1e-5, 0.0);
        assert_eq!(r.rel_err, f64::INFINITY);
        let report = ErrorReport { rows: vec![r, ErrorRow::new(0.0, 0.0, 2.0, 2.5, 0.0)] };
        assert_eq!(report.max_rel_error(), 0.25);
    }
}
