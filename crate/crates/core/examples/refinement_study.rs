//! Error, norm and conditioning of both built-in problems as the collocation
//! grid is refined.
//!
//! ```text
//! cargo run --release --example refinement_study -- 3 6 9 12
//! ```

use rkhs_sg::problems::{diagonal_points, error_table, final_time_points, homogenize};
use rkhs_sg::{builtin, solve, BuiltinId, CollocationSet, Ordering, SolveOptions};

fn main() -> rkhs_sg::Result<()> {
    let sizes: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let sizes = if sizes.is_empty() { vec![3, 6, 9, 12] } else { sizes };

    for (id, points) in [(BuiltinId::Ex51, diagonal_points()), (BuiltinId::Ex52, final_time_points())] {
        let hp = homogenize(&builtin(id))?;
        println!("{id:?}");
        println!("{:>4} {:>12} {:>12} {:>12} {:>12} {:>7}", "n", "max_err", "norm", "cond", "recon", "sweeps");
        for &n in &sizes {
            let pts = CollocationSet::grid(n, n, Ordering::TimeMajor)?;
            let sol = solve(&hp, &pts, SolveOptions::default())?;
            let report = error_table(&sol, &points)?;
            let recon = sol.beta().reconstruction_error(&sol.basis().gram_matrix());
            println!(
                "{n:>4} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>7}",
                report.max_abs_error(),
                sol.norm(),
                sol.beta().condition_estimate(),
                recon,
                sol.sweeps_used()
            );
        }
    }
    Ok(())
}
