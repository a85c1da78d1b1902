//! The sine-Gordon problem with exact solution `4 atan(t sech x)` on
//! [-1, 1] x [0, 1], showing how the outer sweeps settle the nonlinearity.
//!
//! ```text
//! cargo run --release --example sine_gordon -- 9
//! ```

use rkhs_sg::problems::{error_table, final_time_points, homogenize};
use rkhs_sg::{builtin, solve, BuiltinId, CollocationSet, Ordering, SolveOptions};

fn main() -> rkhs_sg::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(9);
    let hp = homogenize(&builtin(BuiltinId::Ex52))?;
    let pts = CollocationSet::grid(n, n, Ordering::TimeMajor)?;

    for sweeps in [1, 2, 5, 50] {
        let sol = solve(&hp, &pts, SolveOptions { outer_sweeps: sweeps, tol: 1e-10 })?;
        let report = error_table(&sol, &final_time_points())?;
        println!(
            "sweeps <= {sweeps:>2}: used {:>2}, converged {:5}, last change {:.2e}, max error at t = 1: {:.3e}",
            sol.sweeps_used(),
            sol.converged(),
            sol.sweep_changes().last().copied().unwrap_or(0.0),
            report.max_abs_error()
        );
    }

    let sol = solve(&hp, &pts, SolveOptions::default())?;
    for r in error_table(&sol, &final_time_points())?.rows {
        println!("u({:+.1}, 1) = {:.9}   exact {:.9}", r.x, r.approx, r.exact);
    }
    Ok(())
}
