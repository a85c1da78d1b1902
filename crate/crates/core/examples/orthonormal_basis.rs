//! Builds the representer basis on a collocation grid, factors its Gram
//! matrix and reports how well the resulting basis is orthonormal.
//!
//! ```text
//! cargo run --release --example orthonormal_basis -- 6
//! ```

use rkhs_sg::orthonormalize::factor;
use rkhs_sg::{CollocationSet, Ordering, RepresenterBasis, WaveOperator};

fn main() -> rkhs_sg::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let pts = CollocationSet::grid(n, n, Ordering::TimeMajor)?;
    let basis = RepresenterBasis::new(WaveOperator::unit(), &pts);
    let gram = basis.gram_matrix();
    let f = factor(&gram)?;
    println!("{n}x{n} grid, {} representers", basis.len());
    println!("Gram diagonal range   {:.3e} .. {:.3e}", gram.diagonal().min(), gram.diagonal().max());
    println!("condition estimate    {:.3e}", f.condition_estimate());
    println!("max |beta A beta^T - I| {:.3e}", f.reconstruction_error(&gram));

    // each Ψ vanishes where the data are imposed
    let psi = |x, t| basis.psi(0, x, t, 0).unwrap();
    println!("Psi_0 on x = 0, x = 1, t = 0: {:e} {:e} {:e}", psi(0.0, 0.4), psi(1.0, 0.4), psi(0.4, 0.0));
    Ok(())
}
