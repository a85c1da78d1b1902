//! The x-derivative of the collocation solution, evaluated from the same
//! coefficients by differentiating the basis, against the exact
//! `pi cos(pi x) cos(pi t)`.
//!
//! ```text
//! cargo run --release --example derivative
//! ```

use std::f64::consts::PI;

use rkhs_sg::problems::homogenize;
use rkhs_sg::{builtin, solve, BuiltinId, CollocationSet, Ordering, SolveOptions};

fn main() -> rkhs_sg::Result<()> {
    let hp = homogenize(&builtin(BuiltinId::Ex51))?;
    let probes = [(0.5, 0.0), (0.25, 0.5), (0.1, 0.1), (0.7, 0.3)];
    for n in [3, 6, 9, 12] {
        let sol = solve(&hp, &CollocationSet::grid(n, n, Ordering::TimeMajor)?, SolveOptions::default())?;
        let mut line = format!("{n:>2}x{n:<2}");
        for (x, t) in probes {
            let exact = PI * (PI * x).cos() * (PI * t).cos();
            line += &format!("  du/dx({x}, {t}) err {:.2e}", (sol.evaluate_dx(x, t)? - exact).abs());
        }
        println!("{line}");
    }
    Ok(())
}
