//! Recruiter-side fee setting.
//!
//! [`expected_applications`] maps a uniform fee to the application volume it
//! induces; it is nonincreasing in the fee, which lets [`fee_for_target`]
//! bisect for the smallest fee meeting a volume target. [`optimal_fee`] grid
//! searches one post's fee for maximum simulated net value, and
//! [`fee_sweep`] tabulates volume, screening cost and welfare across a fee
//! grid — the empirical counterpart of the supply-shift story told by
//! [`crate::equilibrium`].

use serde::{Deserialize, Serialize};

use rayon::prelude::*;

use crate::rng;
use crate::simulator::run_round;
use crate::strategy::{perceive_skill, select_applications};
use crate::types::{FeeDisposition, JobPost, MarketScenario, ValidationErrors};

/// Draws averaged over when candidates carry assessment noise; with no noise
/// a single deterministic pass is exact.
pub const NOISE_AVERAGING_DRAWS: u32 = 8;
/// Replications per grid point in [`optimal_fee`]; every grid point reuses
/// the same replication seeds, so fees are compared on common draws.
pub const OPTIMAL_FEE_REPLICATIONS: u64 = 16;
/// Absolute fee tolerance of [`fee_for_target`]'s bisection.
pub const FEE_TOLERANCE: f64 = 1e-6;
const MAX_BISECTION_STEPS: u32 = 200;

/// How a recruiter sets fees in an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeePolicy {
    pub mode: FeeMode,
    #[serde(default)]
    pub disposition: FeeDisposition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeeMode {
    /// Every post charges this fee.
    Fixed(f64),
    /// Charge the smallest uniform fee that keeps expected applications at
    /// or below this volume.
    TargetVolume(f64),
    /// Grid-search each post's fee for maximal simulated net value.
    Optimize(FeeGrid),
}

/// An inclusive fee grid `min, min+step, ...` up to `max`. Negative minima
/// are allowed: a negative fee is a payment to applicants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeeGrid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl FeeGrid {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self, FeePolicyError> {
        let grid = FeeGrid { min, max, step };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<(), FeePolicyError> {
        if !(self.step > 0.0) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(FeePolicyError::InvalidGrid(*self));
        }
        if self.min > self.max {
            return Err(FeePolicyError::InvalidGrid(*self));
        }
        Ok(())
    }

    /// Grid points in ascending order; never empty for a valid grid.
    pub fn fees(&self) -> Vec<f64> {
        let count = ((self.max - self.min) / self.step + 1e-9).floor() as u64 + 1;
        (0..count).map(|i| self.min + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FeePolicyError {
    #[error(
        "target volume {target} exceeds the zero-fee volume {at_zero_fee}; \
         charging cannot increase applications"
    )]
    UnreachableTarget { target: f64, at_zero_fee: f64 },
    #[error("target volume must be a nonnegative number, got {0}")]
    InvalidTarget(f64),
    #[error("invalid fee grid {0:?}: need finite min <= max and step > 0")]
    InvalidGrid(FeeGrid),
    #[error("replication count must be at least 1")]
    NoReplications,
    #[error("scenario has no post with id {0:?}")]
    UnknownPost(String),
    #[error("invalid scenario: {0}")]
    Invalid(#[from] ValidationErrors),
}

fn applications_for_draw(scenario: &MarketScenario, posts: &[JobPost], draw: u64) -> u64 {
    scenario
        .candidates
        .par_iter()
        .enumerate()
        .map(|(idx, candidate)| {
            let mut stream = rng::stream(scenario.seed, &[rng::TAG_PERCEIVE, draw, idx as u64]);
            let perceived = perceive_skill(candidate, &mut stream);
            select_applications(candidate, perceived, posts, &scenario.match_model).applications()
        })
        .sum()
}

/// Total applications submitted when every post charges `fee`.
///
/// Exact and deterministic when no candidate carries assessment noise;
/// otherwise the mean over [`NOISE_AVERAGING_DRAWS`] seeded perception
/// draws. The draws depend only on the scenario seed, never on the fee, so
/// the function is nonincreasing in the fee. Expects a valid scenario.
pub fn expected_applications(scenario: &MarketScenario, fee: f64) -> f64 {
    let posts: Vec<JobPost> = scenario
        .posts
        .iter()
        .map(|p| {
            let mut p = p.clone();
            p.fee = fee;
            p
        })
        .collect();
    let noisy = scenario.candidates.iter().any(|c| c.assessment_noise > 0.0);
    if !noisy {
        return applications_for_draw(scenario, &posts, 0) as f64;
    }
    let total: u64 = (0..u64::from(NOISE_AVERAGING_DRAWS))
        .map(|draw| applications_for_draw(scenario, &posts, draw))
        .sum();
    total as f64 / f64::from(NOISE_AVERAGING_DRAWS)
}

/// Upper bisection bracket: above the largest `peak_probability * reward`
/// no application has nonnegative expected value.
fn bracket_high(scenario: &MarketScenario) -> f64 {
    scenario
        .candidates
        .iter()
        .map(|c| scenario.match_model.peak_probability * c.reward_value)
        .fold(0.0, f64::max)
}

/// The smallest uniform fee (within [`FEE_TOLERANCE`]) whose expected
/// application volume is at or below `target`.
///
/// Expected applications is a step function of the fee at finite agent
/// counts, so several fees can induce the same volume; this returns the
/// lower edge of the qualifying range, found by bisection. Targets above
/// the zero-fee volume are unreachable (charging cannot increase
/// applications) and an error.
pub fn fee_for_target(scenario: &MarketScenario, target: f64) -> Result<f64, FeePolicyError> {
    if !(target >= 0.0) {
        return Err(FeePolicyError::InvalidTarget(target));
    }
    let at_zero_fee = expected_applications(scenario, 0.0);
    if target > at_zero_fee {
        return Err(FeePolicyError::UnreachableTarget {
            target,
            at_zero_fee,
        });
    }
    if at_zero_fee <= target {
        return Ok(0.0);
    }
    let mut low = 0.0;
    let mut high = bracket_high(scenario);
    // A candidate sitting exactly on a post still applies at zero expected
    // value; nudge the bracket above that edge if needed.
    while expected_applications(scenario, high) > target {
        high = high * (1.0 + 1e-9) + FEE_TOLERANCE;
    }
    for _ in 0..MAX_BISECTION_STEPS {
        if high - low <= FEE_TOLERANCE {
            break;
        }
        let mid = 0.5 * (low + high);
        if expected_applications(scenario, mid) <= target {
            high = mid;
        } else {
            low = mid;
        }
    }
    Ok(high)
}

/// Recruiter's net value of a round at one post:
/// `hire_value * filled - screening_cost * n + fee * n * mult(disposition)`
/// where the fee multiplier is +1 kept, 0 donated, -1 double-donated.
pub fn recruiter_net_value(
    post: &JobPost,
    n_applications: u64,
    filled: bool,
    fee: f64,
    disposition: FeeDisposition,
) -> f64 {
    let hire = if filled { post.hire_value } else { 0.0 };
    let n = n_applications as f64;
    hire - post.screening_cost_per_application * n + fee * n * disposition.revenue_multiplier()
}

/// Grid-searches one post's fee (other posts keep theirs) for the maximum
/// Monte Carlo mean net value over [`OPTIMAL_FEE_REPLICATIONS`] seeded
/// rounds; ties resolve to the lowest fee. Returns `(fee, mean net value)`.
pub fn optimal_fee(
    scenario: &MarketScenario,
    post_id: &str,
    grid: &FeeGrid,
) -> Result<(f64, f64), FeePolicyError> {
    grid.validate()?;
    scenario.validate()?;
    let post_index = scenario
        .posts
        .iter()
        .position(|p| p.id == post_id)
        .ok_or_else(|| FeePolicyError::UnknownPost(post_id.to_string()))?;

    let mut best: Option<(f64, f64)> = None;
    for fee in grid.fees() {
        let mut replica = scenario.clone();
        replica.posts[post_index].fee = fee;
        let mut net_sum = 0.0;
        for r in 0..OPTIMAL_FEE_REPLICATIONS {
            replica.seed = rng::replication_seed(scenario.seed, r);
            let metrics = run_round(&replica)?;
            let n = metrics.applications_per_post[post_id];
            let filled = metrics.hires.iter().any(|(_, p)| p == post_id);
            net_sum += recruiter_net_value(
                &replica.posts[post_index],
                n,
                filled,
                fee,
                scenario.fee_disposition,
            );
        }
        let mean = net_sum / OPTIMAL_FEE_REPLICATIONS as f64;
        // Strict improvement keeps the lowest fee on ties (ascending grid).
        if best.map_or(true, |(_, best_mean)| mean > best_mean) {
            best = Some((fee, mean));
        }
    }
    Ok(best.expect("valid grids are never empty"))
}

/// One row of a fee sweep; metric values are means over the replications.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub fee: f64,
    pub total_applications: f64,
    pub screening_cost: f64,
    pub mean_hire_mismatch: f64,
    pub candidate_surplus: f64,
    pub recruiter_surplus: f64,
    pub charity_transfers: f64,
}

/// Simulates the scenario once per grid fee (uniform across posts) and
/// tabulates the outcome, in ascending fee order. With `replications > 1`
/// each row averages that many seeded rounds; every fee reuses the same
/// seeds, so rows are comparable.
pub fn fee_sweep(
    scenario: &MarketScenario,
    grid: &FeeGrid,
    replications: u64,
) -> Result<Vec<SweepRow>, FeePolicyError> {
    grid.validate()?;
    scenario.validate()?;
    if replications == 0 {
        return Err(FeePolicyError::NoReplications);
    }
    let mut rows = Vec::new();
    for fee in grid.fees() {
        let charged = scenario.with_uniform_fee(fee);
        let mut sums = SweepRow {
            fee,
            total_applications: 0.0,
            screening_cost: 0.0,
            mean_hire_mismatch: 0.0,
            candidate_surplus: 0.0,
            recruiter_surplus: 0.0,
            charity_transfers: 0.0,
        };
        for r in 0..replications {
            let mut replica = charged.clone();
            if replications > 1 {
                replica.seed = rng::replication_seed(scenario.seed, r);
            }
            let m = run_round(&replica)?;
            sums.total_applications += m.total_applications as f64;
            sums.screening_cost += m.total_screening_cost;
            sums.mean_hire_mismatch += m.mean_hire_mismatch;
            sums.candidate_surplus += m.welfare.candidate_surplus;
            sums.recruiter_surplus += m.welfare.recruiter_surplus;
            sums.charity_transfers += m.welfare.charity_transfers;
        }
        let n = replications as f64;
        sums.total_applications /= n;
        sums.screening_cost /= n;
        sums.mean_hire_mismatch /= n;
        sums.candidate_surplus /= n;
        sums.recruiter_surplus /= n;
        sums.charity_transfers /= n;
        rows.push(sums);
    }
    Ok(rows)
}
