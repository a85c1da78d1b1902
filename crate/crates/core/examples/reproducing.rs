//! Checks the reproducing property `<u, K(., y)> = u(y)` by quadrature in
//! one and two dimensions.
//!
//! ```text
//! cargo run --release --example reproducing
//! ```

use std::f64::consts::PI;

use rkhs_sg::kernels::{closed_form_kernel, inner_product_numeric, SpaceId, SpaceSpec};
use rkhs_sg::tensor::{inner_product_numeric_2d, TensorKernel, TensorSpace};

fn main() {
    // x(1 - x) lies in the spatial space: u(0) = u(1) = 0
    let u = |x: f64, k: usize| [x - x * x, 1.0 - 2.0 * x, -2.0, 0.0][k.min(3)];
    let spec = SpaceSpec::of(SpaceId::SpatialW3);
    let r = closed_form_kernel(SpaceId::SpatialW3);
    for y in [0.1, 0.3, 0.5, 0.9] {
        let v = inner_product_numeric(&spec, &u, &r.section(y), &[y]);
        println!("1-D  <u, R_y> at y = {y}: {v:.12}   u(y) = {:.12}", u(y, 0));
    }

    // sin(pi x) t^2 lies in the product space W
    let w = |x: f64, t: f64, dx: usize, dt: usize| {
        let a = PI.powi(dx as i32) * (PI * x + dx as f64 * PI / 2.0).sin();
        let b = [t * t, 2.0 * t, 2.0, 0.0][dt.min(3)];
        a * b
    };
    let k = TensorKernel::of(TensorSpace::W);
    for (y, s) in [(0.5, 0.5), (0.25, 0.8)] {
        let v = inner_product_numeric_2d(TensorSpace::W, &w, &k.section((y, s)), &[y], &[s]);
        println!("2-D  <u, K_(y,s)> at ({y}, {s}): {v:.12}   u = {:.12}", w(y, s, 0, 0));
    }
}
