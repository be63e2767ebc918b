//! Deterministic, seedable agent-based simulation of a job-application
//! market where recruiters may charge a submission fee.
//!
//! Free application invites mass application: every candidate applies to
//! every post with any perceived chance, and recruiters pay the screening
//! bill. A submission fee makes weak applications unattractive while strong
//! candidates keep applying. This crate models that market end to end:
//!
//! - [`types`] — candidates, posts, scenarios, metrics, validation;
//! - [`match_model`] — the Gaussian recruitment-chance curve and its tail
//!   masses;
//! - [`strategy`] — rational candidates picking application sets under a
//!   budget, with an exhaustive-search oracle;
//! - [`equilibrium`] — linear supply/demand algebra for the flat-supply
//!   free market versus the tilted charged market;
//! - [`fee_policy`] — expected application volume per fee, target-volume
//!   fee solving, recruiter net value, fee sweeps;
//! - [`simulator`] — seeded market rounds, zero-fee/fee comparisons with
//!   common random numbers, replication aggregates;
//! - [`taxonomy`] — the market/price quadrant classification and a price
//!   dispersion diagnostic;
//! - [`scenario_io`] — JSON scenario files (with deterministic agent
//!   generators) and stable CSV output;
//! - [`cli`] — the `jobmarket` binary's subcommands.
//!
//! Every random draw flows from the scenario seed, so runs are bit-for-bit
//! reproducible regardless of thread count. Start with the runnable
//! examples (`cargo run --example market_round`) or the CLI
//! (`cargo run --bin jobmarket -- --help`).

pub mod cli;
pub mod equilibrium;
pub mod fee_policy;
pub mod match_model;
mod rng;
pub mod scenario_io;
pub mod simulator;
pub mod strategy;
pub mod taxonomy;
pub mod types;

pub use equilibrium::{
    compare_equilibria, solve_equilibrium, Equilibrium, EquilibriumError, EquilibriumShift,
    LinearCurve,
};
pub use fee_policy::{
    expected_applications, fee_for_target, fee_sweep, optimal_fee, recruiter_net_value, FeeGrid,
    FeeMode, FeePolicy, FeePolicyError, SweepRow,
};
pub use match_model::{
    combined_probability, gaussian_mass_within, marginal_mass, recruitment_probability,
    MatchModelError,
};
pub use scenario_io::{
    load_document, load_scenario, parse_document, scenario_to_json, write_comparison_csv,
    write_events_csv, write_metrics_csv, write_sweep_csv, LoadedScenario, ScenarioDocument,
    ScenarioIoError,
};
pub use simulator::{
    metrics_from_events, run_comparison, run_replications, run_round, run_round_outcome,
    ComparisonReport, MarketEvent, MetricAggregate, MetricsDelta, ReplicationSummary,
    RoundOutcome, SimulationError,
};
pub use strategy::{
    application_ev, perceive_skill, select_applications, select_applications_exhaustive,
    ApplicationPlan, StrategyError,
};
pub use taxonomy::{classify_market, price_dispersion, Quadrant, QuadrantLabel, TaxonomyError};
pub use types::{
    validate_scenario, Candidate, FeeDisposition, HiringMode, JobPost, MarketScenario, MatchModel,
    SimulationMetrics, SkillLevel, ValidationErrors, ValidationIssue, WelfareLedger,
};
