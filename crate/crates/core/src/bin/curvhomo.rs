use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use curvhomo::config::{parse_config, RunConfig};
use curvhomo::jacobi::CausalType;
use curvhomo::report::{Format, VerificationReport};
use curvhomo::suites::{run_invariants, run_scan, run_selected, SuiteId};

#[derive(Parser)]
#[command(name = "curvhomo", version, about = "Exact verification runs for the (2s,s) curvature homogeneous family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a report.
    Verify {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Restrict to these suites (repeatable).
        #[arg(long = "suite", value_parser = parse_suite)]
        suites: Vec<SuiteId>,
    },
    /// Print the alpha invariants at each configured point.
    Invariants { config: PathBuf },
    /// Run one Jordan-Osserman scan on the model space.
    Scan {
        config: PathBuf,
        #[arg(long = "type", value_parser = parse_type)]
        kind: CausalType,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Tsv,
}

fn parse_suite(s: &str) -> Result<SuiteId, String> {
    s.parse()
}

fn parse_type(s: &str) -> Result<CausalType, String> {
    s.parse()
}

fn load(path: &PathBuf, seed_override: Option<&str>) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut cfg = parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(seed) = seed_override {
        cfg.seed = seed.trim().parse().map_err(|_| format!("CURVHOMO_SEED: not an unsigned integer: `{seed}`"))?;
    }
    Ok(cfg)
}

fn finish(report: &VerificationReport, format: Format, out: &mut impl Write) -> u8 {
    // A closed stdout is not a verification failure.
    let _ = out.write_all(report.emit(format).as_bytes());
    if report.all_pass() {
        0
    } else {
        1
    }
}

/// Runs one command; returns the process exit code.
fn run(cli: Cli, seed_override: Option<&str>, out: &mut impl Write, err: &mut impl Write) -> u8 {
    let path = match &cli.command {
        Command::Verify { config, .. } | Command::Invariants { config } | Command::Scan { config, .. } => config,
    };
    let cfg = match load(path, seed_override) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let report = match cli.command {
        Command::Verify { format, suites, .. } => {
            let selected = if suites.is_empty() { SuiteId::ALL.to_vec() } else { suites };
            let format = match format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Tsv => Format::Tsv,
            };
            return finish(&run_selected(&cfg, &selected), format, out);
        }
        Command::Invariants { .. } => run_invariants(&cfg),
        Command::Scan { kind, k, .. } => run_scan(&cfg, kind, k),
    };
    match report {
        Ok(r) => finish(&r, Format::Text, out),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = std::env::var("CURVHOMO_SEED").ok();
    let code = run(cli, seed.as_deref(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}
