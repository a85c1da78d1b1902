//! A problem defined entirely by expression strings, as a config file would
//! define it, then run through the same pipeline as the command line tool.
//!
//! The exact solution `u = x (1 - x) t^2` gives `u_tt - u_xx = 2x(1-x) + 2t^2`,
//! and with `N(u) = u^3` the source is that plus `u^3`.
//!
//! ```text
//! cargo run --release --example custom_problem
//! ```

use rkhs_sg::config::{Format, RunConfig};
use rkhs_sg::report::{execute, render_summary, render_table};

const CONFIG: &str = r#"
refinement_levels = 1

[problem]
name = "cubic"
nonlinearity = "u^3"
source = "2*x*(1-x) + 2*t^2 + (x*(1-x)*t^2)^3"
exact = "x*(1-x)*t^2"
exact_dx = "(1-2*x)*t^2"

[grid]
nx = 4
nt = 4

[solver]
outer_sweeps = 50

[eval]
grid = [3, 3]
"#;

fn main() -> rkhs_sg::Result<()> {
    let cfg = RunConfig::from_toml(CONFIG)?;
    let levels = execute(&cfg)?;
    print!("{}", render_table(Format::Markdown, &levels.last().unwrap().report));
    println!();
    print!("{}", render_summary(Format::Markdown, &levels));
    Ok(())
}
