//! Run configuration, read from a single TOML file.
//!
//! ```toml
//! refinement_levels = 0
//!
//! [problem]
//! builtin = "ex51"
//!
//! [grid]
//! nx = 9
//! nt = 9
//! ordering = "time_major"
//!
//! [solver]
//! outer_sweeps = 5
//! tol = 1e-10
//!
//! [eval]
//! diagonal = 10
//!
//! [output]
//! format = "csv"
//! path = "ex51.csv"
//! ```
//!
//! A custom problem replaces `builtin` with expression strings. One-variable
//! data are given as `[value, first derivative, second derivative]`:
//!
//! ```toml
//! [problem]
//! a = 0.0
//! b = 1.0
//! t_end = 1.0
//! nonlinearity = "sin(u)"
//! f = ["sin(pi*x)", "pi*cos(pi*x)", "-pi^2*sin(pi*x)"]
//! source = "0"
//! exact = "sin(pi*x)*cos(pi*t)"
//! ```

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::collocation::Ordering;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::problems::{
    builtin, diagonal_points, final_time_points, sine_gordon_sech, BuiltinId, Domain,
    ExactSolution, Field, Nonlinearity, Profile, ProblemSpec,
};
use crate::solver::SolveOptions;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub refinement_levels: usize,
    #[serde(default = "ProblemConfig::standing_wave")]
    pub problem: ProblemConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub eval: EvalConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub builtin: Option<BuiltinId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    /// `"zero"`, `"sine"`, or an expression in `u`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonlinearity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h2: Option<[String; 3]>,
    /// in `x` and `t`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_dx: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub nx: usize,
    pub nt: usize,
    pub ordering: Ordering,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { nx: 9, nt: 9, ordering: Ordering::TimeMajor }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub outer_sweeps: usize,
    pub tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let o = SolveOptions::default();
        Self { outer_sweeps: o.outer_sweeps, tol: o.tol }
    }
}

impl From<SolverConfig> for SolveOptions {
    fn from(c: SolverConfig) -> Self {
        SolveOptions { outer_sweeps: c.outer_sweeps, tol: c.tol }
    }
}

/// Evaluation points; at most one of the fields may be set. With none set
/// the built-ins use their reference points and custom problems a 5×5 grid.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 2]>>,
    /// `x = t = k/n`, `k = 1..n`, on the unit square
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<usize>,
    /// uniform grid over the physical domain, edges included
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<[usize; 2]>,
    /// `x ∈ {−0.8, −0.4, 0, 0.4, 0.8}` at `t = 1`
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub final_time: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: Format,
    /// standard output when absent
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            refinement_levels: 0,
            problem: ProblemConfig::standing_wave(),
            grid: GridConfig::default(),
            solver: SolverConfig::default(),
            eval: EvalConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| cfg_err(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| cfg_err(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run config is always representable")
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.nx == 0 || self.grid.nt == 0 {
            return Err(cfg_err(format!(
                "grid needs nx, nt >= 1 (got {} x {})",
                self.grid.nx, self.grid.nt
            )));
        }
        if self.solver.outer_sweeps == 0 {
            return Err(cfg_err("solver.outer_sweeps must be >= 1"));
        }
        if !(self.solver.tol >= 0.0) {
            return Err(cfg_err("solver.tol must be >= 0"));
        }
        if self.refinement_levels > 8 {
            return Err(cfg_err("refinement_levels above 8 is not supported"));
        }
        let e = &self.eval;
        let chosen = [e.points.is_some(), e.diagonal.is_some(), e.grid.is_some(), e.final_time]
            .iter()
            .filter(|&&b| b)
            .count();
        if chosen > 1 {
            return Err(cfg_err("eval: set at most one of points, diagonal, grid, final_time"));
        }
        if e.diagonal == Some(0) || e.grid.is_some_and(|[a, b]| a == 0 || b == 0) {
            return Err(cfg_err("eval: point counts must be >= 1"));
        }
        // catches bad expressions and domains before any work is done
        let spec = self.problem_spec()?;
        if spec.exact.is_none() {
            return Err(cfg_err("problem: an exact solution is needed for the error table"));
        }
        let (map, _) = crate::problems::canonicalize(spec.domain)?;
        for (x, t) in self.eval_points(&spec) {
            if !map.contains(x, t) {
                return Err(cfg_err(format!("eval point ({x}, {t}) is outside the domain")));
            }
        }
        Ok(())
    }

    /// `(nx, nt)` at refinement level `k`.
    pub fn grid_at(&self, level: usize) -> (usize, usize) {
        (self.grid.nx << level, self.grid.nt << level)
    }

    pub fn problem_spec(&self) -> Result<ProblemSpec> {
        self.problem.build()
    }

    pub fn eval_points(&self, spec: &ProblemSpec) -> Vec<(f64, f64)> {
        let e = &self.eval;
        let d = spec.domain;
        if let Some(points) = &e.points {
            return points.iter().map(|&[x, t]| (x, t)).collect();
        }
        if let Some(n) = e.diagonal {
            return (1..=n).map(|k| (k as f64 / n as f64, k as f64 / n as f64)).collect();
        }
        if e.final_time {
            return final_time_points();
        }
        let [nx, nt] = match (e.grid, self.problem.builtin) {
            (Some(g), _) => g,
            (None, Some(BuiltinId::Ex51)) => return diagonal_points(),
            (None, Some(BuiltinId::Ex52)) => return final_time_points(),
            (None, None) => [5, 5],
        };
        let along = |lo: f64, hi: f64, n: usize, k: usize| {
            if n == 1 {
                0.5 * (lo + hi)
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        };
        (0..nt)
            .flat_map(|j| (0..nx).map(move |i| (i, j)))
            .map(|(i, j)| (along(d.a, d.b, nx, i), along(0.0, d.t_end, nt, j)))
            .collect()
    }
}

fn profile(exprs: &Option<[String; 3]>, var: &str) -> Result<Option<Profile>> {
    let Some(list) = exprs else { return Ok(None) };
    let parsed: Vec<Expr> = list
        .iter()
        .map(|s| Expr::parse(s, &[var]))
        .collect::<Result<_>>()?;
    Ok(Some(Arc::new(move |x, k| parsed[k.min(2)].eval(&[x]))))
}

fn field(expr: &Option<String>) -> Result<Option<Field>> {
    let Some(s) = expr else { return Ok(None) };
    let e = Expr::parse(s, &["x", "t"])?;
    Ok(Some(Arc::new(move |x, t| e.eval(&[x, t]))))
}

fn nonlinearity(s: &Option<String>) -> Result<Nonlinearity> {
    Ok(match s.as_deref().map(str::trim) {
        None | Some("zero") | Some("0") => Nonlinearity::Zero,
        Some("sine") | Some("sin(u)") => Nonlinearity::Sine,
        Some(other) => {
            let e = Expr::parse(other, &["u"])?;
            Nonlinearity::Custom(Arc::new(move |u| e.eval(&[u])))
        }
    })
}

impl ProblemConfig {
    fn standing_wave() -> Self {
        Self { builtin: Some(BuiltinId::Ex51), ..Default::default() }
    }

    fn custom_fields_set(&self) -> bool {
        self.nonlinearity.is_some()
            || self.f.is_some()
            || self.g.is_some()
            || self.h1.is_some()
            || self.h2.is_some()
            || self.source.is_some()
            || self.exact.is_some()
            || self.exact_dx.is_some()
    }

    pub fn build(&self) -> Result<ProblemSpec> {
        match self.builtin {
            Some(id) => {
                if self.custom_fields_set() || self.t_end.is_some() {
                    return Err(cfg_err("problem: a builtin takes only `a` and `b` (ex52)"));
                }
                let mut spec = match (id, self.a, self.b) {
                    (BuiltinId::Ex51, None, None) => builtin(id),
                    (BuiltinId::Ex51, _, _) => {
                        return Err(cfg_err("problem: ex51 has a fixed domain"));
                    }
                    (BuiltinId::Ex52, a, b) => sine_gordon_sech(a.unwrap_or(-1.0), b.unwrap_or(1.0)),
                };
                if let Some(name) = &self.name {
                    spec.name = name.clone();
                }
                Ok(spec)
            }
            None => {
                let domain = Domain::new(
                    self.a.unwrap_or(0.0),
                    self.b.unwrap_or(1.0),
                    self.t_end.unwrap_or(1.0),
                );
                let mut spec = ProblemSpec::new(self.name.clone().unwrap_or("custom".into()), domain)
                    .with_nonlinearity(nonlinearity(&self.nonlinearity)?);
                if let Some(f) = profile(&self.f, "x")? {
                    spec.f = f;
                }
                if let Some(g) = profile(&self.g, "x")? {
                    spec.g = g;
                }
                if let Some(h1) = profile(&self.h1, "t")? {
                    spec.h1 = h1;
                }
                if let Some(h2) = profile(&self.h2, "t")? {
                    spec.h2 = h2;
                }
                spec.source = field(&self.source)?;
                if let Some(value) = field(&self.exact)? {
                    spec.exact = Some(ExactSolution { value, dx: field(&self.exact_dx)? });
                } else if self.exact_dx.is_some() {
                    return Err(cfg_err("problem: exact_dx without exact"));
                }
                Ok(spec)
            }
        }
    }
}
