//! Command-line front end: scenario files in, human summaries on stdout and
//! CSV tables under `--out`.
//!
//! Exit codes: 0 success, 1 usage error, 2 scenario or computation error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::equilibrium::{compare_equilibria, solve_equilibrium, LinearCurve};
use crate::fee_policy::{expected_applications, fee_for_target, fee_sweep, FeeGrid, FeeMode, FeePolicy};
use crate::scenario_io::{
    load_document, write_comparison_csv, write_events_csv, write_metrics_csv,
    write_named_values_csv, write_plans_csv, write_sweep_csv, LoadedScenario, ScenarioIoError,
};
use crate::simulator::{run_comparison, run_replications, run_round_outcome, MetricAggregate};
use crate::taxonomy::classify_market;
use crate::types::{FeeDisposition, SimulationMetrics};

#[derive(Parser, Debug)]
#[command(
    name = "jobmarket",
    version,
    about = "Deterministic job-application market simulator with submission fees",
    disable_help_subcommand = true
)]
struct Cli {
    /// Scenario file (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    scenario: Option<PathBuf>,
    /// Overrides the scenario file's seed.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
    /// Seeded replications for run/compare/sweep.
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    replications: u64,
    /// Output directory for CSV files.
    #[arg(long, global = true, default_value = "out", value_name = "DIR")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate one scenario and write metrics.csv (plus events.csv and
    /// plans.csv for single runs).
    Run,
    /// Zero-fee baseline vs. a fee policy with common random numbers;
    /// writes comparison.csv.
    Compare {
        /// Uniform fee for the treated run.
        #[arg(long, value_name = "MONEY", allow_negative_numbers = true)]
        fee: Option<f64>,
        /// Solve for the fee meeting this expected application volume.
        #[arg(long, value_name = "N")]
        target_volume: Option<f64>,
        /// Fee disposition for both runs (defaults to the scenario's).
        #[arg(long, value_enum)]
        disposition: Option<DispositionArg>,
    },
    /// Table of applications, screening cost and welfare across a fee grid;
    /// writes sweep.csv.
    Sweep {
        #[arg(long, value_name = "MONEY", allow_negative_numbers = true)]
        fee_min: f64,
        #[arg(long, value_name = "MONEY", allow_negative_numbers = true)]
        fee_max: f64,
        #[arg(long, value_name = "MONEY")]
        step: f64,
    },
    /// Smallest uniform fee keeping expected applications at or below the
    /// target.
    SolveFee {
        #[arg(long, value_name = "N")]
        target: f64,
    },
    /// Intersect a demand and a supply line, each given as "intercept,slope".
    Equilibrium {
        #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
        demand: String,
        #[arg(long, value_name = "C,D", allow_hyphen_values = true)]
        supply: String,
    },
    /// Quadrant of a competition given market presence and price.
    Classify {
        #[arg(long, value_name = "BOOL", action = clap::ArgAction::Set)]
        market_present: bool,
        #[arg(long, value_name = "MONEY", allow_negative_numbers = true)]
        price: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DispositionArg {
    Kept,
    Donated,
    DoubleDonated,
}

impl From<DispositionArg> for FeeDisposition {
    fn from(value: DispositionArg) -> Self {
        match value {
            DispositionArg::Kept => FeeDisposition::Kept,
            DispositionArg::Donated => FeeDisposition::Donated,
            DispositionArg::DoubleDonated => FeeDisposition::DoubleDonated,
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Run(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Run(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Run(m) => m,
        }
    }
}

impl From<ScenarioIoError> for CliError {
    fn from(e: ScenarioIoError) -> Self {
        CliError::Run(e.to_string())
    }
}

macro_rules! run_error_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Run(e.to_string())
            }
        }
    )*};
}

run_error_from!(
    crate::types::ValidationErrors,
    crate::fee_policy::FeePolicyError,
    crate::simulator::SimulationError,
    crate::equilibrium::EquilibriumError
);

/// Parses and executes a full command line (`args[0]` is the program name).
/// Returns the process exit code instead of exiting, so it is testable.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 1;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn load(cli: &Cli) -> Result<LoadedScenario, CliError> {
    let path = cli.scenario.as_ref().ok_or_else(|| {
        CliError::Usage("this subcommand needs --scenario <PATH>".to_string())
    })?;
    let mut loaded = load_document(path)?;
    if let Some(seed) = cli.seed {
        loaded.scenario.seed = seed;
    }
    Ok(loaded)
}

fn ensure_out_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Run(format!("cannot create output directory {}: {e}", dir.display())))
}

fn print_metrics(metrics: &SimulationMetrics) {
    println!("applications:      {}", metrics.total_applications);
    println!("screening cost:    {:.6}", metrics.total_screening_cost);
    println!("fees paid:         {:.6}", metrics.total_fees_paid);
    println!("hires:             {}", metrics.hires.len());
    println!("mean mismatch:     {:.6}", metrics.mean_hire_mismatch);
    println!("candidate surplus: {:.6}", metrics.welfare.candidate_surplus);
    println!("recruiter surplus: {:.6}", metrics.welfare.recruiter_surplus);
    println!("charity transfers: {:.6}", metrics.welfare.charity_transfers);
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Run => {
            let loaded = load(&cli)?;
            ensure_out_dir(&cli.out)?;
            if cli.replications <= 1 {
                let outcome = run_round_outcome(&loaded.scenario)?;
                write_metrics_csv(std::slice::from_ref(&outcome.metrics), cli.out.join("metrics.csv"))?;
                write_events_csv(&outcome.events, cli.out.join("events.csv"))?;
                write_plans_csv(&outcome.plans, cli.out.join("plans.csv"))?;
                println!("one round, seed {}", loaded.scenario.seed);
                print_metrics(&outcome.metrics);
            } else {
                let summary =
                    run_replications(&loaded.scenario, cli.replications, loaded.scenario.seed)?;
                write_metrics_csv(&summary.rounds, cli.out.join("metrics.csv"))?;
                let named = |name: &str, a: &MetricAggregate| {
                    [
                        (format!("{name}_mean"), a.mean),
                        (format!("{name}_std"), a.std),
                        (format!("{name}_min"), a.min),
                        (format!("{name}_max"), a.max),
                    ]
                };
                let mut rows = Vec::new();
                rows.extend(named("total_applications", &summary.total_applications));
                rows.extend(named("total_fees_paid", &summary.total_fees_paid));
                rows.extend(named("total_screening_cost", &summary.total_screening_cost));
                rows.extend(named("hires", &summary.hires));
                rows.extend(named("mean_hire_mismatch", &summary.mean_hire_mismatch));
                rows.extend(named("candidate_surplus", &summary.candidate_surplus));
                rows.extend(named("recruiter_surplus", &summary.recruiter_surplus));
                rows.extend(named("charity_transfers", &summary.charity_transfers));
                write_named_values_csv(&rows, cli.out.join("aggregate.csv"))?;
                println!(
                    "{} replications, base seed {}",
                    cli.replications, loaded.scenario.seed
                );
                println!(
                    "applications: mean {:.3} std {:.3} min {} max {}",
                    summary.total_applications.mean,
                    summary.total_applications.std,
                    summary.total_applications.min,
                    summary.total_applications.max
                );
                println!(
                    "screening cost: mean {:.3}  mean mismatch: {:.6}",
                    summary.total_screening_cost.mean, summary.mean_hire_mismatch.mean
                );
            }
            println!("wrote {}", cli.out.join("metrics.csv").display());
            Ok(())
        }
        Command::Compare {
            fee,
            target_volume,
            disposition,
        } => {
            let loaded = load(&cli)?;
            ensure_out_dir(&cli.out)?;
            let mode = match (fee, target_volume) {
                (Some(_), Some(_)) => {
                    return Err(CliError::Usage(
                        "--fee and --target-volume are mutually exclusive".to_string(),
                    ))
                }
                (Some(f), None) => FeeMode::Fixed(*f),
                (None, Some(t)) => FeeMode::TargetVolume(*t),
                (None, None) => loaded
                    .fee_policy
                    .as_ref()
                    .map(|p| p.mode.clone())
                    .ok_or_else(|| {
                        CliError::Usage(
                            "no fee policy: pass --fee or --target-volume, or put one in the scenario file"
                                .to_string(),
                        )
                    })?,
            };
            let disposition = disposition
                .map(FeeDisposition::from)
                .or(loaded.fee_policy.as_ref().map(|p| p.disposition))
                .unwrap_or(loaded.scenario.fee_disposition);
            let policy = FeePolicy { mode, disposition };

            let mut reports = Vec::new();
            for i in 0..cli.replications.max(1) {
                let mut scenario = loaded.scenario.clone();
                if cli.replications > 1 {
                    scenario.seed = crate::rng::replication_seed(loaded.scenario.seed, i);
                }
                reports.push(run_comparison(&scenario, &policy)?);
            }
            write_comparison_csv(&reports, cli.out.join("comparison.csv"))?;
            let first = &reports[0];
            if let Some(fee) = first.uniform_fee {
                println!("treated fee: {fee:.6}");
            }
            println!(
                "applications: {} -> {} (delta {})",
                first.baseline.total_applications,
                first.treated.total_applications,
                first.deltas.total_applications
            );
            println!(
                "screening cost: {:.6} -> {:.6}",
                first.baseline.total_screening_cost, first.treated.total_screening_cost
            );
            println!(
                "mean mismatch: {:.6} -> {:.6}",
                first.baseline.mean_hire_mismatch, first.treated.mean_hire_mismatch
            );
            println!("wrote {}", cli.out.join("comparison.csv").display());
            Ok(())
        }
        Command::Sweep {
            fee_min,
            fee_max,
            step,
        } => {
            let loaded = load(&cli)?;
            ensure_out_dir(&cli.out)?;
            let grid = FeeGrid::new(*fee_min, *fee_max, *step).map_err(|e| CliError::Run(e.to_string()))?;
            let rows = fee_sweep(&loaded.scenario, &grid, cli.replications.max(1))?;
            write_sweep_csv(&rows, cli.out.join("sweep.csv"))?;
            println!("swept {} fees from {fee_min} to {fee_max}", rows.len());
            if let (Some(first), Some(last)) = (rows.first(), rows.last()) {
                println!(
                    "applications: {:.3} at fee {} -> {:.3} at fee {}",
                    first.total_applications, first.fee, last.total_applications, last.fee
                );
            }
            println!("wrote {}", cli.out.join("sweep.csv").display());
            Ok(())
        }
        Command::SolveFee { target } => {
            let loaded = load(&cli)?;
            let fee = fee_for_target(&loaded.scenario, *target)?;
            let achieved = expected_applications(&loaded.scenario, fee);
            println!("fee = {fee:.6}");
            println!("expected applications at that fee = {achieved:.6}");
            Ok(())
        }
        Command::Equilibrium { demand, supply } => {
            let demand = parse_curve(demand, "--demand")?;
            let supply = parse_curve(supply, "--supply")?;
            let solved = solve_equilibrium(&demand, &supply)?;
            println!("p* = {}, q* = {}", trimmed(solved.price), trimmed(solved.quantity));
            let free = solve_equilibrium(&demand, &LinearCurve::flat_free());
            if let Ok(free) = free {
                if supply != LinearCurve::flat_free() {
                    let shift = compare_equilibria(&free, &solved);
                    println!(
                        "vs. free supply (p* = 0, q* = {}): price {} by {}, quantity {} by {}",
                        trimmed(free.quantity),
                        if shift.price_rose { "rose" } else { "did not rise" },
                        trimmed(shift.price_delta),
                        if shift.quantity_fell { "fell" } else { "did not fall" },
                        trimmed(shift.quantity_delta.abs()),
                    );
                }
            }
            Ok(())
        }
        Command::Classify {
            market_present,
            price,
        } => {
            let label = classify_market(*market_present, *price);
            println!("Quadrant {}", label.quadrant);
            println!(
                "market {}, price {}",
                if label.market_present { "present" } else { "absent" },
                if label.price_present { "present" } else { "absent" }
            );
            Ok(())
        }
    }
}

/// "intercept,slope" -> curve.
fn parse_curve(text: &str, flag: &str) -> Result<LinearCurve, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!(
            "{flag} expects \"intercept,slope\", got {text:?}"
        )));
    }
    let parse = |s: &str| -> Result<f64, CliError> {
        s.trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{flag}: {s:?} is not a number")))
    };
    Ok(LinearCurve::new(parse(parts[0])?, parse(parts[1])?))
}

fn trimmed(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_parsing() {
        let c = parse_curve("10,-1", "--demand").unwrap();
        assert_eq!(c, LinearCurve::new(10.0, -1.0));
        let c = parse_curve(" 2.5 , 0.25 ", "--supply").unwrap();
        assert_eq!(c, LinearCurve::new(2.5, 0.25));
        assert!(parse_curve("10", "--demand").is_err());
        assert!(parse_curve("a,b", "--demand").is_err());
    }

    #[test]
    fn trimmed_formatting() {
        assert_eq!(trimmed(6.0), "6");
        assert_eq!(trimmed(0.0), "0");
        assert_eq!(trimmed(4.25), "4.25");
        assert_eq!(trimmed(-6.0), "-6");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["jobmarket", "no-such-command"]), 1);
        assert_eq!(run(["jobmarket", "run", "--bogus-flag"]), 1);
        // Missing --scenario is a usage error too.
        assert_eq!(run(["jobmarket", "run"]), 1);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run(["jobmarket", "--help"]), 0);
    }

    #[test]
    fn equilibrium_and_classify_run_standalone() {
        assert_eq!(
            run(["jobmarket", "equilibrium", "--demand", "10,-1", "--supply", "0,0"]),
            0
        );
        assert_eq!(
            run(["jobmarket", "classify", "--market-present", "true", "--price", "0"]),
            0
        );
        // Parallel curves are a computation error.
        assert_eq!(
            run(["jobmarket", "equilibrium", "--demand", "10,-1", "--supply", "5,-1"]),
            2
        );
    }

    #[test]
    fn missing_scenario_file_exits_two() {
        assert_eq!(
            run(["jobmarket", "run", "--scenario", "/nonexistent/s.json"]),
            2
        );
    }
}
