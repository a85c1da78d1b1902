#![allow(dead_code)]

use std::f64::consts::PI;

use rkhs_sg::kernels::SpaceId;
use rkhs_sg::tensor::TensorSpace;

/// Polynomial with coefficients `c[k]` of `xᵏ`, differentiated exactly.
pub fn poly(c: &[f64]) -> impl Fn(f64, usize) -> f64 + Clone {
    let c = c.to_vec();
    move |x, k| {
        c.iter()
            .enumerate()
            .skip(k)
            .map(|(p, &a)| {
                let falling: f64 = (p - k + 1..=p).map(|v| v as f64).product();
                a * falling * x.powi((p - k) as i32)
            })
            .sum()
    }
}

pub type Fun1 = Box<dyn Fn(f64, usize) -> f64>;

/// Three smooth members of each univariate space, each with its name.
pub fn univariate_members(id: SpaceId) -> Vec<(&'static str, Fun1)> {
    match id {
        SpaceId::SpatialW3 => vec![
            ("x(1-x)", Box::new(poly(&[0.0, 1.0, -1.0]))),
            ("sin(pi x)", Box::new(|x: f64, k: usize| PI.powi(k as i32) * (PI * x + k as f64 * PI / 2.0).sin())),
            ("x - x^4", Box::new(poly(&[0.0, 1.0, 0.0, 0.0, -1.0]))),
        ],
        SpaceId::TemporalW3 => vec![
            ("t^2", Box::new(poly(&[0.0, 0.0, 1.0]))),
            ("t^3 + 2t^5", Box::new(poly(&[0.0, 0.0, 0.0, 1.0, 0.0, 2.0]))),
            (
                "1 - cos(2t)",
                Box::new(|t: f64, k: usize| {
                    if k == 0 {
                        1.0 - (2.0 * t).cos()
                    } else {
                        -(2.0f64).powi(k as i32) * (2.0 * t + k as f64 * PI / 2.0).cos()
                    }
                }),
            ),
        ],
        SpaceId::SpatialW1 | SpaceId::TemporalW1 => vec![
            ("exp", Box::new(|x: f64, _k: usize| x.exp())),
            ("1 + x^2", Box::new(poly(&[1.0, 0.0, 1.0]))),
            ("sin", Box::new(|x: f64, k: usize| (x + k as f64 * PI / 2.0).sin())),
        ],
    }
}

/// `n` points spread over `(0, 1)`, avoiding the ends.
pub fn sample_points(n: usize) -> Vec<f64> {
    (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect()
}

pub fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Scratch directory unique to this process and `tag`.
pub fn scratch_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("rkhs-sg-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

pub type Fun2 = Box<dyn Fn(f64, f64, usize, usize) -> f64>;

/// Products `a(x) b(t)` of univariate members: three in `W`, two in `Ŵ`.
pub fn product_members(space: TensorSpace) -> Vec<(String, Fun2)> {
    let (xs, ts) = space.factor_ids();
    let count = if space == TensorSpace::W { 3 } else { 2 };
    univariate_members(xs)
        .into_iter()
        .zip(univariate_members(ts).into_iter().rev())
        .take(count)
        .map(|((na, a), (nb, b))| {
            let f: Fun2 = Box::new(move |x, t, dx, dt| a(x, dx) * b(t, dt));
            (format!("{na} * {nb}"), f)
        })
        .collect()
}
