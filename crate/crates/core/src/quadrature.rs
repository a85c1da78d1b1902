//! Gauss–Legendre rules on panels of `[0, 1]` split at kernel breakpoints.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

/// Default nodes per panel for verification quadrature.
pub const DEFAULT_NODES: usize = 64;

/// A Gauss–Legendre rule on `[-1, 1]` kept as plain node/weight vectors so
/// that it can be tensorized.
#[derive(Debug, Clone)]
pub struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    pub fn new(n: usize) -> Self {
        let n = NonZeroUsize::new(n).expect("quadrature rule needs at least one node");
        let rule = GaussLegendre::new(n);
        let (nodes, weights) = rule.as_node_weight_pairs().iter().copied().unzip();
        Self { nodes, weights }
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    /// Integral over `[0, 1]`, one panel per interval between breakpoints.
    pub fn integrate_unit(&self, breaks: &[f64], mut f: impl FnMut(f64) -> f64) -> f64 {
        panels(breaks)
            .windows(2)
            .map(|p| self.integrate(p[0], p[1], &mut f))
            .sum()
    }

    /// Tensor-product integral over the unit square.
    pub fn integrate_square(
        &self,
        breaks_x: &[f64],
        breaks_t: &[f64],
        mut f: impl FnMut(f64, f64) -> f64,
    ) -> f64 {
        let px = panels(breaks_x);
        let pt = panels(breaks_t);
        let mut total = 0.0;
        for wx in px.windows(2) {
            for wt in pt.windows(2) {
                for (x, u) in self.mapped(wx[0], wx[1]) {
                    for (t, v) in self.mapped(wt[0], wt[1]) {
                        total += u * v * f(x, t);
                    }
                }
            }
        }
        total
    }
}

impl Default for Rule {
    fn default() -> Self {
        Self::new(DEFAULT_NODES)
    }
}

/// Sorted panel endpoints `0 = p_0 < ... < p_k = 1` from interior breakpoints.
pub fn panels(breaks: &[f64]) -> Vec<f64> {
    let mut p: Vec<f64> = std::iter::once(0.0)
        .chain(breaks.iter().copied().filter(|&b| b > 0.0 && b < 1.0))
        .chain(std::iter::once(1.0))
        .collect();
    p.sort_by(f64::total_cmp);
    p.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    p
}
