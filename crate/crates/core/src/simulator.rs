//! One full market round: fees announced, candidates perceive their skill
//! and pick applications, fees settle, recruiters screen and hire, and a
//! metrics ledger is assembled from the resulting event log.
//!
//! Everything is deterministic given the scenario seed. Candidate draws come
//! from per-candidate streams, so per-candidate work can run in parallel
//! without changing results, and two runs sharing a seed share their draws —
//! which is what makes zero-fee/fee comparisons meaningful at desk scale.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fee_policy::{fee_for_target, optimal_fee, FeeMode, FeePolicy, FeePolicyError};
use crate::match_model::recruitment_probability;
use crate::rng;
use crate::strategy::{perceive_skill, select_applications, ApplicationPlan};
use crate::types::{
    HiringMode, MarketScenario, SimulationMetrics, SkillLevel, ValidationErrors, WelfareLedger,
};
use rand::Rng as _;

/// What happened in a round, in deterministic order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "event")]
pub enum MarketEvent {
    Applied {
        candidate: String,
        post: String,
    },
    FeePaid {
        candidate: String,
        post: String,
        amount: f64,
    },
    Hired {
        candidate: String,
        post: String,
    },
}

/// A round's metrics together with the event log and per-candidate decisions
/// behind them.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundOutcome {
    pub metrics: SimulationMetrics,
    pub events: Vec<MarketEvent>,
    /// Perceived skill per candidate, in scenario order.
    pub perceived_skills: Vec<SkillLevel>,
    /// Chosen application plan per candidate, in scenario order.
    pub plans: Vec<ApplicationPlan>,
}

#[derive(Debug, thiserror::Error)]
pub enum SimulationError {
    #[error("invalid scenario: {0}")]
    Invalid(#[from] ValidationErrors),
    #[error("replication count must be at least 1")]
    NoReplications,
    #[error(transparent)]
    FeePolicy(#[from] FeePolicyError),
}

/// Runs one market round and returns its metrics.
pub fn run_round(scenario: &MarketScenario) -> Result<SimulationMetrics, ValidationErrors> {
    run_round_outcome(scenario).map(|outcome| outcome.metrics)
}

/// Runs one market round keeping the event log and per-candidate decisions.
pub fn run_round_outcome(scenario: &MarketScenario) -> Result<RoundOutcome, ValidationErrors> {
    scenario.validate()?;

    // 1–2. Perception and application selection, one independent stream per
    // candidate.
    let decisions: Vec<(SkillLevel, ApplicationPlan)> = scenario
        .candidates
        .par_iter()
        .enumerate()
        .map(|(idx, candidate)| {
            let mut stream = rng::stream(scenario.seed, &[rng::TAG_PERCEIVE, 0, idx as u64]);
            let perceived = perceive_skill(candidate, &mut stream);
            let plan =
                select_applications(candidate, perceived, &scenario.posts, &scenario.match_model);
            (perceived, plan)
        })
        .collect();

    let post_index: std::collections::BTreeMap<&str, usize> = scenario
        .posts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.id.as_str(), i))
        .collect();

    // 3. Applications and fee settlement.
    let mut events = Vec::new();
    for (candidate, (_, plan)) in scenario.candidates.iter().zip(&decisions) {
        for post_id in &plan.post_ids {
            let post = &scenario.posts[post_index[post_id.as_str()]];
            events.push(MarketEvent::Applied {
                candidate: candidate.id.clone(),
                post: post.id.clone(),
            });
            events.push(MarketEvent::FeePaid {
                candidate: candidate.id.clone(),
                post: post.id.clone(),
                amount: post.fee,
            });
        }
    }

    // 4. Hiring.
    match scenario.hiring_mode {
        HiringMode::PaperLiteral => {
            for (cand_idx, (candidate, (_, plan))) in
                scenario.candidates.iter().zip(&decisions).enumerate()
            {
                for post_id in &plan.post_ids {
                    let post_idx = post_index[post_id.as_str()];
                    let post = &scenario.posts[post_idx];
                    let chance = recruitment_probability(
                        candidate.true_skill,
                        post.required_skill,
                        &scenario.match_model,
                    );
                    let draw: f64 = rng::stream(
                        scenario.seed,
                        &[rng::TAG_HIRE, cand_idx as u64, post_idx as u64],
                    )
                    .random();
                    if draw < chance {
                        events.push(MarketEvent::Hired {
                            candidate: candidate.id.clone(),
                            post: post.id.clone(),
                        });
                    }
                }
            }
        }
        HiringMode::CapacityRanked => {
            // Applicants per post, then posts hire best matches in id order;
            // a hired candidate leaves the market.
            let mut applicants: std::collections::BTreeMap<&str, Vec<usize>> = scenario
                .posts
                .iter()
                .map(|p| (p.id.as_str(), Vec::new()))
                .collect();
            for (cand_idx, (_, plan)) in decisions.iter().enumerate() {
                for post_id in &plan.post_ids {
                    applicants.get_mut(post_id.as_str()).unwrap().push(cand_idx);
                }
            }
            let mut hired = vec![false; scenario.candidates.len()];
            for (post_id, mut cands) in applicants {
                let post = &scenario.posts[post_index[post_id]];
                cands.sort_by(|&a, &b| {
                    let da = scenario.candidates[a].true_skill.distance(post.required_skill);
                    let db = scenario.candidates[b].true_skill.distance(post.required_skill);
                    da.partial_cmp(&db)
                        .expect("validated skills are finite")
                        .then_with(|| scenario.candidates[a].id.cmp(&scenario.candidates[b].id))
                });
                let mut seats = post.capacity;
                for cand_idx in cands {
                    if seats == 0 {
                        break;
                    }
                    if hired[cand_idx] {
                        continue;
                    }
                    hired[cand_idx] = true;
                    seats -= 1;
                    events.push(MarketEvent::Hired {
                        candidate: scenario.candidates[cand_idx].id.clone(),
                        post: post.id.clone(),
                    });
                }
            }
        }
    }

    // 5. Metrics from the event log.
    let metrics = metrics_from_events(scenario, &events);
    let (perceived_skills, plans) = decisions.into_iter().unzip();
    Ok(RoundOutcome {
        metrics,
        events,
        perceived_skills,
        plans,
    })
}

/// Assembles the metrics ledger from an event log.
pub fn metrics_from_events(scenario: &MarketScenario, events: &[MarketEvent]) -> SimulationMetrics {
    let mut applications_per_post: std::collections::BTreeMap<String, u64> = scenario
        .posts
        .iter()
        .map(|p| (p.id.clone(), 0))
        .collect();
    let mut total_fees_paid = 0.0;
    let mut hires = Vec::new();
    for event in events {
        match event {
            MarketEvent::Applied { post, .. } => {
                *applications_per_post.get_mut(post).expect("post exists") += 1;
            }
            MarketEvent::FeePaid { amount, .. } => total_fees_paid += amount,
            MarketEvent::Hired { candidate, post } => {
                hires.push((candidate.clone(), post.clone()));
            }
        }
    }
    let total_applications: u64 = applications_per_post.values().sum();
    let total_screening_cost: f64 = scenario
        .posts
        .iter()
        .map(|p| applications_per_post[&p.id] as f64 * p.screening_cost_per_application)
        .sum();

    let candidate_lookup: std::collections::BTreeMap<&str, &crate::types::Candidate> = scenario
        .candidates
        .iter()
        .map(|c| (c.id.as_str(), c))
        .collect();
    let post_lookup: std::collections::BTreeMap<&str, &crate::types::JobPost> =
        scenario.posts.iter().map(|p| (p.id.as_str(), p)).collect();

    let mut mismatch_sum = 0.0;
    let mut reward_sum = 0.0;
    let mut hire_value_sum = 0.0;
    for (candidate_id, post_id) in &hires {
        let post = post_lookup[post_id.as_str()];
        let candidate = candidate_lookup[candidate_id.as_str()];
        mismatch_sum += candidate.true_skill.distance(post.required_skill);
        reward_sum += candidate.reward_value;
        hire_value_sum += post.hire_value;
    }
    let mean_hire_mismatch = if hires.is_empty() {
        0.0
    } else {
        mismatch_sum / hires.len() as f64
    };

    let disposition = scenario.fee_disposition;
    let welfare = WelfareLedger {
        candidate_surplus: reward_sum - total_fees_paid,
        recruiter_surplus: hire_value_sum - total_screening_cost
            + disposition.revenue_multiplier() * total_fees_paid,
        charity_transfers: disposition.charity_multiplier() * total_fees_paid,
    };

    SimulationMetrics {
        applications_per_post,
        total_applications,
        total_fees_paid,
        total_screening_cost,
        hires,
        mean_hire_mismatch,
        welfare,
    }
}

/// Changes between a treated round and its zero-fee baseline
/// (`treated - baseline`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsDelta {
    pub total_applications: f64,
    pub total_fees_paid: f64,
    pub total_screening_cost: f64,
    pub hires: f64,
    pub mean_hire_mismatch: f64,
    pub candidate_surplus: f64,
    pub recruiter_surplus: f64,
    pub charity_transfers: f64,
}

/// A zero-fee baseline round against a fee-policy round, sharing the
/// scenario seed so skill-perception draws are identical and the deltas
/// isolate the fee effect.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// The uniform fee applied in the treated run, when the policy produces
    /// one (`None` for per-post optimized fees).
    pub uniform_fee: Option<f64>,
    pub baseline: SimulationMetrics,
    pub treated: SimulationMetrics,
    pub deltas: MetricsDelta,
}

fn delta(treated: &SimulationMetrics, baseline: &SimulationMetrics) -> MetricsDelta {
    MetricsDelta {
        total_applications: treated.total_applications as f64
            - baseline.total_applications as f64,
        total_fees_paid: treated.total_fees_paid - baseline.total_fees_paid,
        total_screening_cost: treated.total_screening_cost - baseline.total_screening_cost,
        hires: treated.hires.len() as f64 - baseline.hires.len() as f64,
        mean_hire_mismatch: treated.mean_hire_mismatch - baseline.mean_hire_mismatch,
        candidate_surplus: treated.welfare.candidate_surplus - baseline.welfare.candidate_surplus,
        recruiter_surplus: treated.welfare.recruiter_surplus - baseline.welfare.recruiter_surplus,
        charity_transfers: treated.welfare.charity_transfers
            - baseline.welfare.charity_transfers,
    }
}

/// Runs the scenario at fee zero and under the given policy with common
/// random numbers and reports both rounds plus their deltas. The policy's
/// fee disposition applies to both runs.
pub fn run_comparison(
    scenario: &MarketScenario,
    policy: &FeePolicy,
) -> Result<ComparisonReport, SimulationError> {
    scenario.validate()?;
    let mut base_scenario = scenario.with_uniform_fee(0.0);
    base_scenario.fee_disposition = policy.disposition;

    let mut treated_scenario = scenario.clone();
    treated_scenario.fee_disposition = policy.disposition;
    let uniform_fee = match &policy.mode {
        FeeMode::Fixed(fee) => {
            treated_scenario = treated_scenario.with_uniform_fee(*fee);
            Some(*fee)
        }
        FeeMode::TargetVolume(target) => {
            let fee = fee_for_target(&treated_scenario, *target)?;
            treated_scenario = treated_scenario.with_uniform_fee(fee);
            Some(fee)
        }
        FeeMode::Optimize(grid) => {
            let ids: Vec<String> = treated_scenario.posts.iter().map(|p| p.id.clone()).collect();
            let mut fees = Vec::with_capacity(ids.len());
            for id in &ids {
                let (fee, _) = optimal_fee(&treated_scenario, id, grid)?;
                fees.push(fee);
            }
            for (post, fee) in treated_scenario.posts.iter_mut().zip(fees) {
                post.fee = fee;
            }
            None
        }
    };

    let baseline = run_round(&base_scenario)?;
    let treated = run_round(&treated_scenario)?;
    let deltas = delta(&treated, &baseline);
    Ok(ComparisonReport {
        uniform_fee,
        baseline,
        treated,
        deltas,
    })
}

/// Mean, population standard deviation, minimum and maximum of one metric
/// across replications.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricAggregate {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

fn aggregate(values: &[f64]) -> MetricAggregate {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    MetricAggregate {
        mean,
        std: variance.sqrt(),
        min: values.iter().copied().fold(f64::INFINITY, f64::min),
        max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

/// Per-metric aggregates over seeded replications, plus the individual
/// rounds in replication order.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationSummary {
    pub replications: u64,
    pub rounds: Vec<SimulationMetrics>,
    pub total_applications: MetricAggregate,
    pub total_fees_paid: MetricAggregate,
    pub total_screening_cost: MetricAggregate,
    pub hires: MetricAggregate,
    pub mean_hire_mismatch: MetricAggregate,
    pub candidate_surplus: MetricAggregate,
    pub recruiter_surplus: MetricAggregate,
    pub charity_transfers: MetricAggregate,
}

/// Runs `n` independent replications; replication `i` re-seeds the scenario
/// from `(base_seed, i)`. Replications may execute in parallel; aggregation
/// reduces in replication order, so results never depend on scheduling.
pub fn run_replications(
    scenario: &MarketScenario,
    n: u64,
    base_seed: u64,
) -> Result<ReplicationSummary, SimulationError> {
    if n == 0 {
        return Err(SimulationError::NoReplications);
    }
    scenario.validate()?;
    let rounds: Result<Vec<SimulationMetrics>, ValidationErrors> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut replica = scenario.clone();
            replica.seed = rng::replication_seed(base_seed, i);
            run_round(&replica)
        })
        .collect();
    let rounds = rounds?;
    let column = |f: &dyn Fn(&SimulationMetrics) -> f64| -> Vec<f64> {
        rounds.iter().map(f).collect()
    };
    Ok(ReplicationSummary {
        replications: n,
        total_applications: aggregate(&column(&|m| m.total_applications as f64)),
        total_fees_paid: aggregate(&column(&|m| m.total_fees_paid)),
        total_screening_cost: aggregate(&column(&|m| m.total_screening_cost)),
        hires: aggregate(&column(&|m| m.hires.len() as f64)),
        mean_hire_mismatch: aggregate(&column(&|m| m.mean_hire_mismatch)),
        candidate_surplus: aggregate(&column(&|m| m.welfare.candidate_surplus)),
        recruiter_surplus: aggregate(&column(&|m| m.welfare.recruiter_surplus)),
        charity_transfers: aggregate(&column(&|m| m.welfare.charity_transfers)),
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{Candidate, FeeDisposition, JobPost, MatchModel};

    fn model() -> MatchModel {
        MatchModel {
            sigma: 1.0,
            peak_probability: 0.5,
            probability_cutoff: 1e-4,
        }
    }

    fn candidate(id: &str, skill: f64) -> Candidate {
        Candidate {
            id: id.into(),
            true_skill: SkillLevel(skill),
            assessment_noise: 0.0,
            budget: f64::INFINITY,
            reward_value: 100.0,
        }
    }

    fn post(id: &str, skill: f64, fee: f64) -> JobPost {
        JobPost {
            id: id.into(),
            required_skill: SkillLevel(skill),
            fee,
            screening_cost_per_application: 1.0,
            capacity: 1,
            hire_value: 50.0,
        }
    }

    fn scenario(candidates: Vec<Candidate>, posts: Vec<JobPost>) -> MarketScenario {
        MarketScenario {
            candidates,
            posts,
            match_model: model(),
            fee_disposition: FeeDisposition::Kept,
            hiring_mode: HiringMode::CapacityRanked,
            seed: 7,
        }
    }

    fn uniform_grid_scenario(n_candidates: usize, n_posts: usize, fee: f64) -> MarketScenario {
        let candidates = (0..n_candidates)
            .map(|i| candidate(&format!("c{i:03}"), 10.0 * i as f64 / n_candidates as f64))
            .collect();
        let posts = (0..n_posts)
            .map(|i| post(&format!("p{i:02}"), 0.5 + i as f64 * 10.0 / n_posts as f64, fee))
            .collect();
        scenario(candidates, posts)
    }

    #[test]
    fn empty_scenario_produces_zero_metrics() {
        let s = scenario(vec![], vec![]);
        let m = run_round(&s).unwrap();
        assert_eq!(m.total_applications, 0);
        assert_eq!(m.total_fees_paid, 0.0);
        assert_eq!(m.total_screening_cost, 0.0);
        assert!(m.hires.is_empty());
        assert_eq!(m.mean_hire_mismatch, 0.0);
        assert_eq!(m.welfare.total(), 0.0);
    }

    #[test]
    fn single_match_hand_trace() {
        // One candidate at the one post's requirement: applies, is screened
        // at cost 3, and is hired with zero mismatch.
        let mut p = post("p", 5.0, 0.0);
        p.screening_cost_per_application = 3.0;
        let s = scenario(vec![candidate("c", 5.0)], vec![p]);
        let m = run_round(&s).unwrap();
        assert_eq!(m.total_applications, 1);
        assert_eq!(m.total_screening_cost, 3.0);
        assert_eq!(m.hires, vec![("c".to_string(), "p".to_string())]);
        assert_eq!(m.mean_hire_mismatch, 0.0);
        assert_eq!(m.welfare.candidate_surplus, 100.0);
        assert_eq!(m.welfare.recruiter_surplus, 47.0);
    }

    #[test]
    fn same_seed_means_identical_metrics() {
        let mut s = uniform_grid_scenario(40, 8, 1.0);
        for c in &mut s.candidates {
            c.assessment_noise = 0.5;
            c.budget = 10.0;
        }
        let a = run_round(&s).unwrap();
        let b = run_round(&s).unwrap();
        assert_eq!(a, b);
        s.seed = 8;
        let c = run_round(&s).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn hires_are_a_subset_of_applications_and_respect_capacity() {
        let mut s = uniform_grid_scenario(60, 10, 0.5);
        for (i, p) in s.posts.iter_mut().enumerate() {
            p.capacity = 1 + (i % 3) as u32;
        }
        let outcome = run_round_outcome(&s).unwrap();
        let mut per_post = std::collections::BTreeMap::new();
        let mut hired_candidates = std::collections::BTreeSet::new();
        for (cand, post) in &outcome.metrics.hires {
            *per_post.entry(post.clone()).or_insert(0u32) += 1;
            assert!(
                hired_candidates.insert(cand.clone()),
                "candidate hired twice in capacity mode"
            );
            let cand_idx = s.candidates.iter().position(|c| &c.id == cand).unwrap();
            assert!(
                outcome.plans[cand_idx].post_ids.contains(post),
                "hire without application"
            );
        }
        for (post_id, hires) in per_post {
            let cap = s.posts.iter().find(|p| p.id == post_id).unwrap().capacity;
            assert!(hires <= cap);
        }
    }

    #[test]
    fn paper_literal_ignores_capacity_and_draws_per_application() {
        let mut s = uniform_grid_scenario(200, 5, 0.0);
        s.hiring_mode = HiringMode::PaperLiteral;
        let m = run_round(&s).unwrap();
        // Expected hires: sum of true-skill probabilities over applications;
        // at p_max 0.5 and dense applications this is far above the 5-post
        // capacity, and a 6-sigma band around the mean must contain it.
        let expected: f64 = {
            let outcome = run_round_outcome(&s).unwrap();
            outcome
                .plans
                .iter()
                .enumerate()
                .flat_map(|(i, plan)| {
                    let c = &s.candidates[i];
                    plan.post_ids.iter().map(|pid| {
                        let p = s.posts.iter().find(|p| &p.id == pid).unwrap();
                        recruitment_probability(c.true_skill, p.required_skill, &s.match_model)
                    })
                })
                .sum()
        };
        let got = m.hires.len() as f64;
        assert!(got > 5.0, "capacity should not bind, got {got}");
        assert!(
            (got - expected).abs() < 6.0 * expected.sqrt(),
            "hires {got} vs expected {expected}"
        );
    }

    #[test]
    fn ledger_matches_event_log_and_balances() {
        for disposition in [
            FeeDisposition::Kept,
            FeeDisposition::Donated,
            FeeDisposition::DoubleDonated,
        ] {
            let mut s = uniform_grid_scenario(50, 8, 2.0);
            s.fee_disposition = disposition;
            for c in &mut s.candidates {
                c.budget = 7.0;
            }
            let outcome = run_round_outcome(&s).unwrap();
            let rebuilt = metrics_from_events(&s, &outcome.events);
            assert_eq!(rebuilt, outcome.metrics);

            let fees: f64 = outcome
                .events
                .iter()
                .filter_map(|e| match e {
                    MarketEvent::FeePaid { amount, .. } => Some(*amount),
                    _ => None,
                })
                .sum();
            let recruiter_fee_income = disposition.revenue_multiplier() * fees;
            let charity = outcome.metrics.welfare.charity_transfers;
            assert!(
                (fees - (recruiter_fee_income + charity)).abs() < 1e-9,
                "{disposition:?}: fee ledger out of balance"
            );
        }
    }

    #[test]
    fn comparison_at_zero_fee_is_a_no_op() {
        let s = uniform_grid_scenario(30, 6, 0.0);
        let policy = FeePolicy {
            mode: FeeMode::Fixed(0.0),
            disposition: FeeDisposition::Kept,
        };
        let report = run_comparison(&s, &policy).unwrap();
        assert_eq!(report.baseline, report.treated);
        assert_eq!(report.deltas.total_applications, 0.0);
        assert_eq!(report.deltas.recruiter_surplus, 0.0);
    }

    #[test]
    fn positive_fee_never_increases_applications() {
        let mut s = uniform_grid_scenario(50, 8, 0.0);
        for c in &mut s.candidates {
            c.budget = 12.0;
            c.assessment_noise = 0.4;
        }
        for fee in [0.5, 2.0, 8.0] {
            let policy = FeePolicy {
                mode: FeeMode::Fixed(fee),
                disposition: FeeDisposition::Kept,
            };
            let report = run_comparison(&s, &policy).unwrap();
            assert!(
                report.treated.total_applications <= report.baseline.total_applications,
                "fee {fee}"
            );
        }
    }

    #[test]
    fn stopping_candidates_have_lower_chances_than_continuing_ones() {
        // Uniform grid with margin beyond the candidate span (so nobody is
        // edge-truncated), equal rewards and budgets, no noise: whoever
        // stops applying to a post under the fee must sit further from it
        // than anyone who keeps applying — fees prune the tails inward.
        let candidates: Vec<Candidate> = (0..80)
            .map(|i| candidate(&format!("c{i:03}"), 10.0 * i as f64 / 80.0))
            .collect();
        let posts: Vec<JobPost> = (0..25)
            .map(|i| post(&format!("p{i:02}"), -5.0 + i as f64 * 20.0 / 24.0, 0.0))
            .collect();
        let mut s = scenario(candidates, posts);
        for c in &mut s.candidates {
            c.budget = 9.0;
        }
        let baseline = run_round_outcome(&s).unwrap();
        let treated = run_round_outcome(&s.with_uniform_fee(3.0)).unwrap();
        // Common random numbers: identical perception draws.
        assert_eq!(baseline.perceived_skills, treated.perceived_skills);
        for post in &s.posts {
            let chance = |cand_idx: usize| {
                recruitment_probability(
                    baseline.perceived_skills[cand_idx],
                    post.required_skill,
                    &s.match_model,
                )
            };
            let mut stopped = Vec::new();
            let mut continuing = Vec::new();
            for idx in 0..s.candidates.len() {
                let before = baseline.plans[idx].post_ids.contains(&post.id);
                let after = treated.plans[idx].post_ids.contains(&post.id);
                match (before, after) {
                    (true, false) => stopped.push(chance(idx)),
                    (_, true) => continuing.push(chance(idx)),
                    _ => {}
                }
            }
            if let (Some(max_stopped), Some(min_continuing)) = (
                stopped.iter().copied().reduce(f64::max),
                continuing.iter().copied().reduce(f64::min),
            ) {
                assert!(
                    max_stopped <= min_continuing + 1e-12,
                    "post {}: stopped {max_stopped} vs continuing {min_continuing}",
                    post.id
                );
            }
        }
    }

    #[test]
    fn unreachable_target_errors_propagate_through_comparison() {
        let s = uniform_grid_scenario(10, 4, 0.0);
        let policy = FeePolicy {
            mode: FeeMode::TargetVolume(1e9),
            disposition: FeeDisposition::Kept,
        };
        assert!(matches!(
            run_comparison(&s, &policy),
            Err(SimulationError::FeePolicy(
                FeePolicyError::UnreachableTarget { .. }
            ))
        ));
    }

    #[test]
    fn optimize_policy_sets_each_posts_searched_fee() {
        let s = uniform_grid_scenario(20, 3, 1.0);
        let grid = crate::fee_policy::FeeGrid::new(0.0, 4.0, 2.0).unwrap();
        let policy = FeePolicy {
            mode: FeeMode::Optimize(grid),
            disposition: FeeDisposition::Kept,
        };
        let report = run_comparison(&s, &policy).unwrap();
        assert!(report.uniform_fee.is_none());
        // The treated run charges the per-post grid optima: its fee revenue
        // must equal the per-post application counts times those fees.
        let expected_fees: f64 = s
            .posts
            .iter()
            .map(|post| {
                let (fee, _) = crate::fee_policy::optimal_fee(&s, &post.id, &grid).unwrap();
                report.treated.applications_per_post[&post.id] as f64 * fee
            })
            .sum();
        assert!((report.treated.total_fees_paid - expected_fees).abs() < 1e-9);
    }

    #[test]
    fn replications_degenerate_and_deterministic_cases() {
        let s = uniform_grid_scenario(20, 5, 1.0);
        let single = run_replications(&s, 1, 99).unwrap();
        assert_eq!(single.rounds.len(), 1);
        assert_eq!(single.total_applications.std, 0.0);
        assert_eq!(
            single.total_applications.mean,
            single.rounds[0].total_applications as f64
        );

        // No stochastic stage: every replication identical.
        let many = run_replications(&s, 50, 123).unwrap();
        assert_eq!(many.total_applications.std, 0.0);
        assert_eq!(many.mean_hire_mismatch.std, 0.0);

        assert!(matches!(
            run_replications(&s, 0, 1),
            Err(SimulationError::NoReplications)
        ));
    }

    #[test]
    fn replication_means_are_self_consistent() {
        let mut s = uniform_grid_scenario(15, 6, 1.5);
        for c in &mut s.candidates {
            c.assessment_noise = 0.8;
            c.budget = 6.0;
        }
        let big = run_replications(&s, 1000, 1).unwrap();
        let half = run_replications(&s, 500, 2).unwrap();
        let se = (big.total_applications.std.powi(2) / 1000.0
            + half.total_applications.std.powi(2) / 500.0)
            .sqrt();
        let gap = (big.total_applications.mean - half.total_applications.mean).abs();
        assert!(gap <= 3.0 * se, "gap {gap} vs 3 se {}", 3.0 * se);
    }
}
