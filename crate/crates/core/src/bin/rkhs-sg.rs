use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rkhs_sg::config::{Format, RunConfig};
use rkhs_sg::report;

#[derive(Parser)]
#[command(version, about = "Reproducing-kernel collocation for the sine-Gordon equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the solves described by a TOML config and write error tables.
    Solve {
        config: PathBuf,
        /// overrides `output.path`
        #[arg(long)]
        out: Option<PathBuf>,
        /// overrides `output.format`
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// print the resolved configuration and exit
        #[arg(long)]
        print_config: bool,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

fn main() -> ExitCode {
    let Command::Solve { config, out, format, print_config } = Cli::parse().command;
    let mut cfg = match RunConfig::load(&config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(report::exit_code(&e) as u8);
        }
    };
    if out.is_some() {
        cfg.output.path = out;
    }
    if let Some(f) = format {
        cfg.output.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Markdown => Format::Markdown,
        };
    }
    if print_config {
        print!("{}", cfg.to_toml());
        return ExitCode::SUCCESS;
    }
    ExitCode::from(report::run(&cfg) as u8)
}
