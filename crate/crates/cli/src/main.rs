use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use crossgeo::acceptance::{run_acceptance, AcceptanceOptions};
use crossgeo::crossmodel::{SpaceFamily, SpaceId};
use crossgeo::fixtures::{compute_fixtures, diff_fixtures, stored_fixtures};
use crossgeo::suites::{run, Format, RunConfig, Suite};
use crossgeo::ToleranceConfig;

#[derive(Parser, Debug)]
#[command(name = "crossgeo", version, about = "Verify contact structures on tangent sphere bundles of rank-one symmetric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// sphere | rp | cp | hp | cayley
    #[arg(long)]
    space: Option<String>,
    /// Dimension parameter (not needed for cayley).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Absolute tolerance; defaults to $CROSS_TOL, then 1e-9.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 5)]
    grid: usize,
    #[command(flatten)]
    out: OutputArgs,
    /// Recompute the frozen brute-force values and print the differences.
    #[arg(long)]
    refresh_fixtures: bool,
}

#[derive(clap::Args, Debug, Clone)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text, global = true)]
    format: FormatArg,
    /// Record wall time (makes JSON output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every acceptance criterion.
    Acceptance {
        /// Run the theorem grid over all tabulated spaces.
        #[arg(long)]
        all_spaces: bool,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Table1,
    Brackets,
    Metrics,
    Tashiro,
    Sasakian,
    Uniqueness,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Table1 => Suite::Table1,
            SuiteArg::Brackets => Suite::Brackets,
            SuiteArg::Metrics => Suite::Metrics,
            SuiteArg::Tashiro => Suite::Tashiro,
            SuiteArg::Sasakian => Suite::Sasakian,
            SuiteArg::Uniqueness => Suite::Uniqueness,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum FormatArg {
    Text,
    Json,
}

const USAGE_ERROR: u8 = 2;

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    eprintln!("see `crossgeo --help`");
    ExitCode::from(USAGE_ERROR)
}

fn tolerance(flag: Option<f64>) -> Result<f64, String> {
    let t = flag.unwrap_or_else(|| ToleranceConfig::from_env().abs);
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err(format!("tolerance must be positive, got {t}"))
    }
}

fn emit(out: &OutputArgs, text: String) -> Result<(), String> {
    match &out.output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn space_of(cli: &Cli) -> Result<SpaceId, String> {
    let name = cli.space.as_deref().ok_or("--space is required")?;
    let family: SpaceFamily = name.parse().map_err(|e: crossgeo::Error| e.to_string())?;
    let n = match (family, cli.n) {
        (SpaceFamily::CayleyPlane, _) => 2,
        (_, Some(n)) => n,
        (_, None) => return Err(format!("--n is required for --space {name}")),
    };
    SpaceId::new(family, n).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();

    if let Some(Command::Acceptance { all_spaces, tol }) = cli.command {
        let tol = match tolerance(tol.or(cli.tol)) {
            Ok(t) => t,
            Err(e) => return usage(e),
        };
        let opts = AcceptanceOptions { all_spaces, timing: cli.out.timing, tol: ToleranceConfig::with_abs(tol) };
        let report = run_acceptance(&opts);
        let text = if cli.out.format == FormatArg::Json { json(&report) } else { report.to_text() };
        if let Err(e) = emit(&cli.out, text) {
            return usage(e);
        }
        return if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    }

    let tol = match tolerance(cli.tol) {
        Ok(t) => t,
        Err(e) => return usage(e),
    };

    if cli.refresh_fixtures {
        let stored = match stored_fixtures() {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        };
        let computed = match compute_fixtures(&ToleranceConfig::with_abs(tol)) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        };
        let diffs = diff_fixtures(&stored, &computed);
        for d in &diffs {
            let mark = if d.within_tolerance { "same" } else { "DIFF" };
            eprintln!("{mark} {} stored={:?} computed={:?}", d.name, d.stored, d.computed);
        }
        // The stored file is only replaced by hand; the regenerated one goes to --output or stdout.
        if let Err(e) = emit(&cli.out, computed.to_json()) {
            return usage(e);
        }
        return if diffs.iter().all(|d| d.within_tolerance) { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    }

    let space = match space_of(&cli) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let config = RunConfig {
        space,
        radius: cli.radius,
        kappa: cli.kappa,
        suite: cli.suite.into(),
        tol,
        grid: cli.grid,
        output: cli.out.output.as_ref().map(|p| p.display().to_string()),
        format: match cli.out.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
    };
    if let Err(e) = config.validate() {
        return usage(e);
    }
    let mut report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    if cli.out.timing {
        report.wall_time = Some(start.elapsed().as_secs_f64());
    }
    let text = match config.format {
        Format::Json => json(&report),
        Format::Text => report.to_text(),
    };
    if let Err(e) = emit(&cli.out, text) {
        return usage(e);
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
