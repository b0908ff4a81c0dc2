use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use scvertex::cli::algebra_file;
use scvertex::cli::suite;
use scvertex::cli::{run_script, Settings};
use scvertex::render::{Format, SCHEMA};
use scvertex::Error;

#[derive(Parser)]
#[command(name = "scvertex", version, about = "Exact λ-bracket computations for vertex algebras and their SUSY versions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format: text, latex or json.
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    /// Load an algebra definition file; selectable in scripts with `use NAME;`.
    #[arg(long, global = true, value_name = "FILE")]
    algebra: Vec<PathBuf>,
    /// Fix a parameter, e.g. `--set t_a=0` or `--set t=-1/2`.
    #[arg(long = "set", global = true, value_name = "NAME=VALUE")]
    set: Vec<String>,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for suites.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a script.
    Run { file: PathBuf },
    /// Run a built-in suite: paper, axioms, brst or reduce.
    Check {
        #[arg(long, default_value = "paper")]
        suite: String,
    },
}

fn witness(v: serde_json::Value) {
    eprintln!("{}", json!({ "schema": SCHEMA, "witness": v }));
}

/// Ignores a closed pipe, as in `scvertex run f | head`.
fn out(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn settings(cli: &Cli, base_dir: PathBuf) -> Result<Settings, Error> {
    let mut s = Settings { seed: cli.seed, jobs: cli.jobs, base_dir, ..Default::default() };
    for kv in &cli.set {
        s.overrides.push(Settings::parse_override(kv)?);
    }
    for f in &cli.algebra {
        let alg = algebra_file::load_with(f, &s.overrides).map_err(|e| Error::Parse { line: 0, col: 0, msg: format!("{}: {e}", f.display()) })?;
        s.preloaded.push((alg.name.clone(), alg));
    }
    Ok(s)
}

fn run(cli: &Cli) -> Result<bool, Error> {
    match &cli.cmd {
        Cmd::Run { file } => {
            let src = std::fs::read_to_string(file).map_err(|e| Error::Eval(format!("{}: {e}", file.display())))?;
            let base = file.parent().map(PathBuf::from).unwrap_or_default();
            let report = run_script(&src, &settings(cli, base)?).map_err(|e| match e {
                Error::Parse { line, col, msg } => Error::Parse { line, col, msg: format!("{}:{line}:{col}: {msg}", file.display()) },
                e => e,
            })?;
            out(&report.render(cli.format));
            for o in report.failures() {
                witness(o.to_json());
            }
            Ok(report.passed())
        }
        Cmd::Check { suite: name } => {
            if !suite::SUITES.contains(&name.as_str()) {
                return Err(Error::Parse { line: 0, col: 0, msg: format!("unknown suite `{name}` (expected one of {})", suite::SUITES.join(", ")) });
            }
            let lines = suite::run(name, &settings(cli, PathBuf::new())?)?;
            let passed = lines.iter().all(|l| l.ok);
            match cli.format {
                Format::Json => {
                    let v = json!({
                        "schema": SCHEMA,
                        "suite": name,
                        "passed": passed,
                        "lines": lines.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
                    });
                    out(&(serde_json::to_string_pretty(&v).expect("json") + "\n"));
                }
                _ => out(&lines.iter().map(|l| l.text() + "\n").collect::<String>()),
            }
            for l in lines.iter().filter(|l| !l.ok) {
                witness(l.to_json());
            }
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Error::Parse { line, col, msg }) => {
            if line == 0 || msg.contains(&format!(":{line}:{col}:")) {
                eprintln!("error: {msg}");
            } else {
                eprintln!("error: {line}:{col}: {msg}");
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            witness(json!({ "error": e.to_string() }));
            ExitCode::from(1)
        }
    }
}
