//! Batch runs: solve each refinement level, then write error tables and a
//! summary as CSV or Markdown.
//!
//! With `output.path = "run.csv"` and no refinement the table goes to
//! `run.csv` and the summary to `run.summary.csv`. With refinement, level
//! `k` goes to `run.level{k}.csv`. Without a path everything is printed to
//! standard output, blocks separated by a blank line.
//!
//! Exit codes: 0 on success, 2 for configuration errors, 3 for numerical
//! failures. Nothing is written unless every level succeeds.

use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::collocation::CollocationSet;
use crate::config::{Format, RunConfig};
use crate::error::{Error, Result};
use crate::problems::{error_table, homogenize, ErrorReport, ErrorRow};
use crate::solver::solve;

pub const TABLE_HEADER: [&str; 7] = ["x", "t", "exact", "approx", "abs_err", "rel_err", "seconds"];
pub const SUMMARY_HEADER: [&str; 9] = [
    "level",
    "nx",
    "nt",
    "n",
    "max_abs_err",
    "norm",
    "gram_condition",
    "sweeps",
    "seconds",
];

#[derive(Debug, Clone)]
pub struct LevelResult {
    pub level: usize,
    pub nx: usize,
    pub nt: usize,
    pub report: ErrorReport,
    pub norm: f64,
    pub gram_condition: f64,
    pub sweeps: usize,
    pub seconds: f64,
}

/// `{:.16e}` (17 significant digits), with `inf` / `-inf` / `nan`.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

fn row_fields(r: &ErrorRow) -> [String; 7] {
    [r.x, r.t, r.exact, r.approx, r.abs_err, r.rel_err, r.seconds].map(format_number)
}

fn summary_fields(l: &LevelResult) -> [String; 9] {
    [
        l.level.to_string(),
        l.nx.to_string(),
        l.nt.to_string(),
        (l.nx * l.nt).to_string(),
        format_number(l.report.max_abs_error()),
        format_number(l.norm),
        format_number(l.gram_condition),
        l.sweeps.to_string(),
        format_number(l.seconds),
    ]
}

fn render(format: Format, header: &[&str], rows: Vec<Vec<String>>) -> String {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header).expect("in-memory write");
            for r in rows {
                w.write_record(&r).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
        }
        Format::Markdown => {
            let mut s = format!("| {} |\n", header.join(" | "));
            s += &format!("|{}\n", "---|".repeat(header.len()));
            for r in rows {
                s += &format!("| {} |\n", r.join(" | "));
            }
            s
        }
    }
}

pub fn render_table(format: Format, report: &ErrorReport) -> String {
    render(format, &TABLE_HEADER, report.rows.iter().map(|r| row_fields(r).to_vec()).collect())
}

pub fn render_summary(format: Format, levels: &[LevelResult]) -> String {
    render(format, &SUMMARY_HEADER, levels.iter().map(|l| summary_fields(l).to_vec()).collect())
}

/// Solves every level; no output is produced.
pub fn execute(cfg: &RunConfig) -> Result<Vec<LevelResult>> {
    cfg.validate()?;
    let spec = cfg.problem_spec()?;
    let hp = homogenize(&spec)?;
    let points = cfg.eval_points(&spec);
    let mut out = Vec::with_capacity(cfg.refinement_levels + 1);
    for level in 0..=cfg.refinement_levels {
        let start = Instant::now();
        let (nx, nt) = cfg.grid_at(level);
        let pts = CollocationSet::grid(nx, nt, cfg.grid.ordering)?;
        let sol = solve(&hp, &pts, cfg.solver.into())?;
        let report = error_table(&sol, &points)?;
        out.push(LevelResult {
            level,
            nx,
            nt,
            norm: sol.norm(),
            gram_condition: sol.beta().condition_estimate(),
            sweeps: sol.sweeps_used(),
            report,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
    Ok(out)
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{suffix}"),
    };
    path.with_file_name(name)
}

/// Files written for `levels` results at `path`, in order: one table per
/// level, then the summary.
pub fn output_paths(path: &Path, levels: usize) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = if levels == 1 {
        vec![path.to_path_buf()]
    } else {
        (0..levels).map(|k| with_suffix(path, &format!("level{k}"))).collect()
    };
    v.push(with_suffix(path, "summary"));
    v
}

pub fn write_outputs(cfg: &RunConfig, results: &[LevelResult]) -> Result<()> {
    let format = cfg.output.format;
    let mut blocks: Vec<String> = results.iter().map(|l| render_table(format, &l.report)).collect();
    blocks.push(render_summary(format, results));
    match &cfg.output.path {
        Some(path) => {
            for (file, text) in output_paths(path, results.len()).iter().zip(&blocks) {
                std::fs::write(file, text)?;
            }
        }
        None => print!("{}", blocks.join("\n")),
    }
    Ok(())
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        3
    } else {
        2
    }
}

/// Executes `cfg`, writes the results and returns the process exit code.
/// Errors are reported on standard error.
pub fn run(cfg: &RunConfig) -> i32 {
    match execute(cfg).and_then(|r| write_outputs(cfg, &r)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
