//! Derives the four univariate reproducing kernels from their defining
//! conditions, compares them with the closed forms and prints every
//! coefficient the closed form had to correct.
//!
//! ```text
//! cargo run --example kernels
//! cargo run --example kernels -- dump     # full coefficient tables
//! ```

use rkhs_sg::kernels::{closed_form_with_corrections, derive_kernel_oracle, SpaceId, SpaceSpec};

fn main() -> rkhs_sg::Result<()> {
    let dump = std::env::args().any(|a| a == "dump");
    for id in SpaceId::ALL {
        let oracle = derive_kernel_oracle(&SpaceSpec::of(id))?;
        let (closed, fixes) = closed_form_with_corrections(id);
        println!(
            "{id:?}: order {}, smooth to total order {} on the diagonal, max |oracle - closed form| = {:.2e}",
            oracle.order(),
            oracle.diagonal_smoothness(),
            oracle.max_abs_diff(&closed)
        );
        for f in fixes {
            println!(
                "  corrected {:?} x^{} y^{}: printed {:+.6e} = 1/{:.0}, derived {:+.6e} = 1/{:.0}",
                f.branch,
                f.x_power,
                f.y_power,
                f.printed,
                1.0 / f.printed,
                f.derived,
                1.0 / f.derived
            );
        }
        if dump {
            print!("{}", oracle.to_text());
        }
    }
    Ok(())
}
