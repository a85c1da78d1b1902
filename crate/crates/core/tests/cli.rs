mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::scratch_dir;

const BIN: &str = env!("CARGO_BIN_EXE_rkhs-sg");

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn solve(args: &[&str]) -> Output {
    Command::new(BIN).arg("solve").args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// CSV rows with the `seconds` column removed.
fn without_seconds(text: &str) -> Vec<String> {
    text.lines().map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head).to_string()).collect()
}

const EX51: &str = r#"
[problem]
builtin = "ex51"

[grid]
nx = 9
nt = 9

[eval]
diagonal = 10
"#;

#[test]
fn standing_wave_table_has_ten_rows() {
    let dir = scratch_dir("cli-ex51");
    let cfg = write_config(&dir, "ex51.toml", EX51);
    let out = dir.join("ex51.csv");
    let o = solve(&[cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,t,exact,approx,abs_err,rel_err,seconds");
    assert_eq!(lines.len(), 11);
    for (k, line) in lines[1..].iter().enumerate() {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(fields.len(), 7);
        let z = (k + 1) as f64 / 10.0;
        assert!((fields[0] - z).abs() < 1e-15 && (fields[1] - z).abs() < 1e-15);
        // full double precision: the text round-trips
        assert_eq!(fields[4], (fields[2] - fields[3]).abs());
    }
    let summary = std::fs::read_to_string(dir.join("ex51.summary.csv")).unwrap();
    assert!(summary.starts_with("level,nx,nt,n,max_abs_err,norm,gram_condition,sweeps,seconds\n"));
    assert_eq!(summary.lines().count(), 2);
}

#[test]
fn invalid_grid_exits_2_without_output() {
    let dir = scratch_dir("cli-nx0");
    let cfg = write_config(&dir, "bad.toml", &EX51.replace("nx = 9", "nx = 0"));
    let out = dir.join("bad.csv");
    let o = solve(&[cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(!String::from_utf8_lossy(&o.stderr).is_empty());
    assert!(!out.exists() && !dir.join("bad.summary.csv").exists());
}

#[test]
fn unreadable_or_malformed_configs_exit_2() {
    let dir = scratch_dir("cli-missing");
    assert_eq!(code(&solve(&[dir.join("nope.toml").to_str().unwrap()])), 2);
    let cfg = write_config(&dir, "typo.toml", "[grid]\nnxx = 3\n");
    assert_eq!(code(&solve(&[cfg.to_str().unwrap()])), 2);
    let cfg = write_config(&dir, "expr.toml", "[problem]\nnonlinearity = \"sin(u\"\nexact = \"0\"\n");
    assert_eq!(code(&solve(&[cfg.to_str().unwrap()])), 2);
}

#[test]
fn non_finite_source_exits_3() {
    let dir = scratch_dir("cli-nan");
    let cfg = write_config(
        &dir,
        "nan.toml",
        "[problem]\nnonlinearity = \"ln(u - 10)\"\nexact = \"0\"\n\n[grid]\nnx = 2\nnt = 2\n",
    );
    let out = dir.join("nan.csv");
    let o = solve(&[cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!out.exists());
}

#[test]
fn sine_gordon_refinement_writes_three_tables_and_a_summary() {
    let dir = scratch_dir("cli-ex52");
    let cfg = write_config(
        &dir,
        "ex52.toml",
        "refinement_levels = 2\n\n[problem]\nbuiltin = \"ex52\"\n\n[grid]\nnx = 4\nnt = 4\n",
    );
    let out = dir.join("ex52.csv");
    let o = solve(&[cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for k in 0..3 {
        let t = std::fs::read_to_string(dir.join(format!("ex52.level{k}.csv"))).unwrap();
        assert_eq!(t.lines().count(), 6, "level {k}");
    }
    let summary = std::fs::read_to_string(dir.join("ex52.summary.csv")).unwrap();
    let rows: Vec<Vec<String>> =
        summary.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 3);
    let grids: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(grids, ["4", "8", "16"]);
    let errors: Vec<f64> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
    assert!(errors.windows(2).all(|w| w[1] <= w[0]), "{errors:?}");
}

#[test]
fn identical_runs_agree_byte_for_byte_apart_from_timings() {
    let dir = scratch_dir("cli-determinism");
    let cfg = write_config(&dir, "ex51.toml", &format!("refinement_levels = 1\n{EX51}"));
    let mut runs = Vec::new();
    for k in 0..2 {
        let out = dir.join(format!("run{k}.csv"));
        assert_eq!(code(&solve(&[cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])), 0);
        runs.push((
            std::fs::read_to_string(dir.join(format!("run{k}.level0.csv"))).unwrap(),
            std::fs::read_to_string(dir.join(format!("run{k}.level1.csv"))).unwrap(),
            std::fs::read_to_string(dir.join(format!("run{k}.summary.csv"))).unwrap(),
        ));
    }
    assert_eq!(without_seconds(&runs[0].0), without_seconds(&runs[1].0));
    assert_eq!(without_seconds(&runs[0].1), without_seconds(&runs[1].1));
    assert_eq!(without_seconds(&runs[0].2), without_seconds(&runs[1].2));
}

#[test]
fn markdown_goes_to_stdout_without_a_path() {
    let dir = scratch_dir("cli-markdown");
    let cfg = write_config(&dir, "ex51.toml", &EX51.replace("nx = 9\nnt = 9", "nx = 3\nnt = 3"));
    let o = solve(&[cfg.to_str().unwrap(), "--format", "markdown"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("| x | t | exact | approx | abs_err | rel_err | seconds |"), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with('|')).count(), 12 + 3);
}

#[test]
fn print_config_emits_a_loadable_config() {
    let dir = scratch_dir("cli-print");
    let cfg = write_config(&dir, "min.toml", "[problem]\nbuiltin = \"ex52\"\n");
    let o = solve(&[cfg.to_str().unwrap(), "--print-config", "--out", "x.csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let parsed = rkhs_sg::config::RunConfig::from_toml(&text).unwrap();
    assert_eq!(parsed.grid.nx, 9);
    assert_eq!(parsed.solver.outer_sweeps, 5);
    assert_eq!(parsed.output.path.as_deref(), Some(Path::new("x.csv")));
    assert!(!dir.join("x.csv").exists());
}
