//! Collocation point sets on the canonical square.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Order in which basis points enter the coefficient recursion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    /// All `ξ` at `τ₁`, then all `ξ` at `τ₂`, ...
    #[default]
    TimeMajor,
    /// All `τ` at `ξ₁`, then all `τ` at `ξ₂`, ...
    SpaceMajor,
    /// Anti-diagonals `i + j = const`, earlier times first within each.
    Diagonal,
}

/// The origin anchor followed by the basis points `(ξ_i, τ_i)`.
///
/// The anchor is where the homogenized solution is known to vanish; it
/// carries no representer (its `Ψ` is identically zero) and is kept only
/// conceptually. Basis points are distinct and avoid `ξ ∈ {0, 1}` and
/// `τ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationSet {
    points: Vec<(f64, f64)>,
    ordering: Ordering,
}

impl CollocationSet {
    pub const ANCHOR: (f64, f64) = (0.0, 0.0);

    /// Tensor grid `ξ_i = i/(nx+1)`, `τ_j = j/(nt+1)` in the requested order.
    pub fn grid(nx: usize, nt: usize, ordering: Ordering) -> Result<Self> {
        if nx == 0 || nt == 0 {
            return Err(Error::InvalidCollocation(format!(
                "grid needs nx, nt >= 1 (got {nx} x {nt})"
            )));
        }
        let mut idx: Vec<(usize, usize)> = (1..=nt)
            .flat_map(|j| (1..=nx).map(move |i| (i, j)))
            .collect();
        match ordering {
            Ordering::TimeMajor => {}
            Ordering::SpaceMajor => idx.sort_by_key(|&(i, j)| (i, j)),
            Ordering::Diagonal => idx.sort_by_key(|&(i, j)| (i + j, j)),
        }
        let (hx, ht) = ((nx + 1) as f64, (nt + 1) as f64);
        let points = idx
            .into_iter()
            .map(|(i, j)| (i as f64 / hx, j as f64 / ht))
            .collect();
        Ok(Self { points, ordering })
    }

    /// Caller-supplied basis points, used in the given order.
    pub fn from_points(points: Vec<(f64, f64)>) -> Result<Self> {
        for (n, &(x, t)) in points.iter().enumerate() {
            if !(x > 0.0 && x < 1.0 && t > 0.0 && t <= 1.0) {
                return Err(Error::InvalidCollocation(format!(
                    "point {n} = ({x}, {t}) is not inside (0,1) x (0,1]"
                )));
            }
            if points[..n].contains(&(x, t)) {
                return Err(Error::InvalidCollocation(format!(
                    "point {n} = ({x}, {t}) is repeated"
                )));
            }
        }
        Ok(Self { points, ordering: Ordering::TimeMajor })
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

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    pub fn includes_origin_anchor(&self) -> bool {
        true
    }

    /// Largest distance from a `samples × samples` probe grid on the square
    /// to the nearest point (anchor included).
    pub fn fill_distance(&self, samples: usize) -> f64 {
        let step = 1.0 / (samples.max(2) - 1) as f64;
        let mut worst = 0.0f64;
        for a in 0..samples.max(2) {
            for b in 0..samples.max(2) {
                let (x, t) = (a as f64 * step, b as f64 * step);
                let nearest = std::iter::once(&Self::ANCHOR)
                    .chain(&self.points)
                    .map(|&(px, pt)| (px - x).hypot(pt - t))
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(nearest);
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_time_major() {
        let c = CollocationSet::grid(2, 2, Ordering::TimeMajor).unwrap();
        let third = 1.0 / 3.0;
        let two = 2.0 / 3.0;
        assert_eq!(c.points(), &[(third, third), (two, third), (third, two), (two, two)]);
    }

    #[test]
    fn single_point() {
        let c = CollocationSet::grid(1, 1, Ordering::TimeMajor).unwrap();
        assert_eq!(c.points(), &[(0.5, 0.5)]);
    }

    #[test]
    fn orderings_are_permutations() {
        let base = CollocationSet::grid(3, 4, Ordering::TimeMajor).unwrap();
        for o in [Ordering::SpaceMajor, Ordering::Diagonal] {
            let c = CollocationSet::grid(3, 4, o).unwrap();
            let mut a = base.points().to_vec();
            let mut b = c.points().to_vec();
            a.sort_by(|p, q| p.partial_cmp(q).unwrap());
            b.sort_by(|p, q| p.partial_cmp(q).unwrap());
            assert_eq!(a, b);
        }
        let s = CollocationSet::grid(2, 2, Ordering::SpaceMajor).unwrap();
        assert_eq!(s.points()[1], (1.0 / 3.0, 2.0 / 3.0));
    }

    #[test]
    fn grid_avoids_degenerate_lines() {
        let c = CollocationSet::grid(7, 5, Ordering::Diagonal).unwrap();
        assert!(c.points().iter().all(|&(x, t)| x > 0.0 && x < 1.0 && t > 0.0));
    }

    #[test]
    fn rejects_empty_grid_and_bad_points() {
        assert!(CollocationSet::grid(0, 3, Ordering::TimeMajor).is_err());
        assert!(CollocationSet::from_points(vec![(0.0, 0.5)]).is_err());
        assert!(CollocationSet::from_points(vec![(0.5, 0.0)]).is_err());
        assert!(CollocationSet::from_points(vec![(0.5, 0.5), (0.5, 0.5)]).is_err());
    }

    #[test]
    fn fill_distance_shrinks() {
        let coarse = CollocationSet::grid(3, 3, Ordering::TimeMajor).unwrap().fill_distance(41);
        let fine = CollocationSet::grid(9, 9, Ordering::TimeMajor).unwrap().fill_distance(41);
        assert!(fine < coarse);
    }
}
