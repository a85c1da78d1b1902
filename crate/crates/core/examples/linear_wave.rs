//! The standing wave `u = sin(pi x) cos(pi t)` of the linear wave equation,
//! solved on a 9x9 grid and compared along the diagonal `x = t`.
//!
//! ```text
//! cargo run --release --example linear_wave
//! ```

use rkhs_sg::problems::{diagonal_points, error_table, homogenize};
use rkhs_sg::{builtin, solve, BuiltinId, CollocationSet, Ordering, SolveOptions};

fn main() -> rkhs_sg::Result<()> {
    let hp = homogenize(&builtin(BuiltinId::Ex51))?;
    let pts = CollocationSet::grid(9, 9, Ordering::TimeMajor)?;
    let sol = solve(&hp, &pts, SolveOptions::default())?;
    let report = error_table(&sol, &diagonal_points())?;
    println!("{:>5} {:>5} {:>14} {:>14} {:>11} {:>11}", "x", "t", "exact", "approx", "abs_err", "rel_err");
    for r in &report.rows {
        println!(
            "{:>5.2} {:>5.2} {:>14.10} {:>14.10} {:>11.3e} {:>11.3e}",
            r.x, r.t, r.exact, r.approx, r.abs_err, r.rel_err
        );
    }
    println!("max abs error {:.3e}, ||v|| = {:.6e}", report.max_abs_error(), sol.norm());
    Ok(())
}
