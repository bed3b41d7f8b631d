//! Command-line driver: `run`, `verify`, `convergence`, `check-eos`, `resume`.
//!
//! Exit status 0 on success, 1 on bad input (configuration, files, flags),
//! 2 on numerical failure or a failed check.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::diagnostics::{identity_report, total_energy};
use crate::error::{Error, Result};
use crate::io::{
    parse_config, read_snapshot, run_to_dir, OutputDir, SimConfig, CONFIG_COPY, DIAGNOSTICS_CSV,
};
use crate::verification::{convergence_study, eos_property_sweep, MmsCase, StudySetup, SweepSettings};

#[derive(Debug, Parser)]
#[command(name = "twophase", version, about = "Viscous liquid-gas two-phase flow on periodic boxes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate from a configuration file.
    Run(RunArgs),
    /// Evaluate the identity residuals of a snapshot.
    Verify(SnapshotArgs),
    /// Manufactured-solution refinement study.
    Convergence(RunArgs),
    /// Property sweep of the configured pressure law.
    CheckEos(RunArgs),
    /// Continue a run from a snapshot.
    Resume(SnapshotArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Overrides `output.dir`.
    #[arg(long, value_name = "PATH")]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Args)]
struct SnapshotArgs {
    #[arg(long, value_name = "PATH")]
    snapshot: PathBuf,
    /// Defaults to the config copy next to the snapshot.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    quiet: bool,
}

/// Failed checks are reported with the numerical exit status.
struct CheckFailed(String);

enum Failure {
    Error(Error),
    Check(CheckFailed),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Runs the command line `argv` (including the program name) and returns
/// the process exit status.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Convergence(a) => cmd_convergence(a),
        Command::CheckEos(a) => cmd_check_eos(a),
        Command::Resume(a) => cmd_resume(a),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Check(CheckFailed(msg))) => {
            eprintln!("check failed: {msg}");
            2
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                2
            } else {
                1
            }
        }
    }
}

fn load_config(path: &Path) -> Result<(SimConfig, String)> {
    let text = fs::read_to_string(path).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })?;
    Ok((parse_config(&text)?, text))
}

fn out_dir_for(arg: &Option<PathBuf>, config: &SimConfig) -> Result<PathBuf> {
    arg.clone()
        .or_else(|| config.output.dir.clone())
        .ok_or_else(|| Error::Config(vec!["no output directory: pass --out-dir or set output.dir".to_string()]))
}

fn say(quiet: bool, line: impl AsRef<str>) {
    if !quiet {
        println!("{}", line.as_ref());
    }
}

fn cmd_run(a: &RunArgs) -> CliResult {
    let (config, text) = load_config(&a.config)?;
    let dir = out_dir_for(&a.out_dir, &config)?;
    finish_run(&config, &text, &dir, None, a.quiet)
}

fn finish_run(
    config: &SimConfig,
    text: &str,
    dir: &Path,
    initial: Option<crate::field::FlowState>,
    quiet: bool,
) -> CliResult {
    let outcome = run_to_dir(config, text, dir, initial)?;
    let first = outcome.records.first().expect("a run emits at least one record");
    let last = outcome.records.last().expect("a run emits at least one record");
    say(
        quiet,
        format!(
            "{} steps to t = {}; records in {}",
            outcome.steps,
            outcome.final_state.t,
            dir.join(DIAGNOSTICS_CSV).display()
        ),
    );
    say(quiet, format!("E0 = {:e}, E(t_end) = {:e}", first.E, last.E));
    say(
        quiet,
        format!(
            "smallness: A1 + A2 = {:e}, 2 E0^theta = {:e} (theta = {})",
            last.smallness_lhs,
            last.smallness_rhs,
            config.analysis.theta()
        ),
    );
    Ok(())
}

fn snapshot_config(a: &SnapshotArgs) -> Result<(SimConfig, String)> {
    let path = match &a.config {
        Some(p) => p.clone(),
        None => a
            .snapshot
            .parent()
            .unwrap_or_else(|| Path::new("."))
            .join(CONFIG_COPY),
    };
    load_config(&path)
}

fn cmd_verify(a: &SnapshotArgs) -> CliResult {
    let state = read_snapshot(&a.snapshot)?;
    let (config, _) = snapshot_config(a)?;
    if *state.grid() != config.grid {
        return Err(Error::Dimension(format!(
            "snapshot grid {:?} differs from configured grid {:?}",
            state.grid(),
            config.grid
        ))
        .into());
    }
    let model = config.model()?;
    let energy = total_energy(&state, &config.eos)?;
    let report = identity_report(&model, &state)?;
    say(a.quiet, format!("t = {}", state.t));
    say(a.quiet, format!("min_m = {:e}, min_n = {:e}", state.m.min(), state.n.min()));
    say(
        a.quiet,
        format!("E = {:e} (KE = {:e}, PE = {:e})", energy.total, energy.kinetic, energy.potential),
    );
    for (name, value) in report.entries() {
        say(a.quiet, format!("{name} = {value:e}"));
    }
    Ok(())
}

fn cmd_resume(a: &SnapshotArgs) -> CliResult {
    let state = read_snapshot(&a.snapshot)?;
    let (config, text) = snapshot_config(a)?;
    let dir = match &a.out_dir {
        Some(d) => d.clone(),
        None => a
            .snapshot
            .parent()
            .unwrap_or_else(|| Path::new("."))
            .join("resume"),
    };
    say(a.quiet, format!("resuming from t = {}", state.t));
    finish_run(&config, &text, &dir, Some(state), a.quiet)
}

fn cmd_convergence(a: &RunArgs) -> CliResult {
    let (config, _) = load_config(&a.config)?;
    let case = MmsCase::standard(&config.eos, config.grid.dim(), config.grid.length(), 0.5)?;
    let report = convergence_study(&case, &StudySetup::from_config(&config))?;
    if let Some(dir) = a.out_dir.clone().or_else(|| config.output.dir.clone()) {
        let lock = OutputDir::acquire(&dir)?;
        fs::write(lock.path().join("convergence.csv"), report.to_csv()).map_err(Error::from)?;
        fs::write(lock.path().join("convergence_summary.txt"), report.summary_line() + "\n")
            .map_err(Error::from)?;
    }
    for f in &report.fields {
        say(
            a.quiet,
            format!("{}: l2 {:?} order {:.3} (linf order {:.3})", f.field, f.l2, f.order_l2, f.order_linf),
        );
    }
    say(a.quiet, report.summary_line());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(CheckFailed(report.summary_line())))
    }
}

fn cmd_check_eos(a: &RunArgs) -> CliResult {
    let (config, _) = load_config(&a.config)?;
    let report = eos_property_sweep(&config.eos, &SweepSettings::default());
    for w in report.violations.iter().take(20) {
        say(a.quiet, format!("  {w}"));
    }
    say(a.quiet, report.summary_line());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(CheckFailed(report.summary_line())))
    }
}
