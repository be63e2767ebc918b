//! Rational candidate behaviour: noisy self-assessment, expected-value
//! screening of single applications, and budget-constrained selection of an
//! application set.
//!
//! A candidate with reward `R` picks the post set `S` maximizing
//!
//! ```text
//! U(S) = R * (1 - prod_{i in S} (1 - p_i)) - sum_{i in S} fee_i
//! ```
//!
//! subject to `sum_{i in S} max(fee_i, 0) <= budget`, where `p_i` is the
//! match-curve chance at the candidate's *perceived* skill and outcomes are
//! treated as independent. Negative fees are income and consume no budget.
//! Free and negative-fee posts are always worth taking, so the zero-fee
//! limit reproduces mass application; a paid post is taken only while it
//! improves utility, exact ties resolving to the cheaper plan. Posts below
//! the model's probability cutoff are never considered.
//!
//! Instances with at most [`EXACT_SEARCH_LIMIT`] relevant posts are solved to
//! global optimality by branch and bound; larger ones greedily by marginal
//! utility gain per unit of nonnegative fee. [`select_applications_exhaustive`]
//! is a deliberately plain subset enumeration kept as an independent check on
//! the optimizer. Ties are broken toward the cheaper plan, then the
//! lexicographically smallest post-id set, so plans are deterministic.

use std::collections::BTreeSet;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::match_model::recruitment_probability;
use crate::types::{Candidate, JobPost, MatchModel, SkillLevel};

/// Largest relevant-post count solved exactly by `select_applications`.
pub const EXACT_SEARCH_LIMIT: usize = 18;
/// Largest relevant-post count `select_applications_exhaustive` accepts.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// The application set a candidate decided on, with the beliefs behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct ApplicationPlan {
    pub candidate_id: String,
    pub post_ids: BTreeSet<String>,
    /// Sum of the chosen posts' fees (negative fees are income).
    pub total_fee: f64,
    /// Chance of at least one recruitment under the candidate's perceived
    /// skill.
    pub believed_overall_chance: f64,
    /// `reward_value * believed_overall_chance - total_fee`; never negative,
    /// since the empty plan is always available.
    pub expected_utility: f64,
}

impl ApplicationPlan {
    pub fn empty(candidate_id: impl Into<String>) -> Self {
        ApplicationPlan {
            candidate_id: candidate_id.into(),
            post_ids: BTreeSet::new(),
            total_fee: 0.0,
            believed_overall_chance: 0.0,
            expected_utility: 0.0,
        }
    }

    pub fn applications(&self) -> u64 {
        self.post_ids.len() as u64
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StrategyError {
    #[error("exhaustive search supports at most {limit} relevant posts, got {count}")]
    InstanceTooLarge { count: usize, limit: usize },
}

/// The candidate's read of their own skill: true skill plus a zero-mean
/// Gaussian error with the candidate's assessment noise. Deterministic for a
/// given random stream.
pub fn perceive_skill<R: Rng + ?Sized>(candidate: &Candidate, rng: &mut R) -> SkillLevel {
    if candidate.assessment_noise == 0.0 {
        return candidate.true_skill;
    }
    let error = Normal::new(0.0, candidate.assessment_noise)
        .expect("assessment noise is validated nonnegative")
        .sample(rng);
    SkillLevel(candidate.true_skill.value() + error)
}

/// Expected value of a single application: `p * reward - fee`.
pub fn application_ev(probability: f64, reward: f64, fee: f64) -> f64 {
    probability * reward - fee
}

/// A post the candidate would consider, with its perceived chance.
struct RelevantPost<'a> {
    post: &'a JobPost,
    probability: f64,
}

/// Posts at or above the probability cutoff, ordered by descending chance
/// (ties by post id). This order doubles as the canonical evaluation order
/// for plan arithmetic, so every optimizer here produces bit-identical
/// utility values for identical sets.
fn relevant_posts<'a>(
    perceived: SkillLevel,
    posts: &'a [JobPost],
    model: &MatchModel,
) -> Vec<RelevantPost<'a>> {
    let mut relevant: Vec<RelevantPost<'a>> = posts
        .iter()
        .map(|post| RelevantPost {
            post,
            probability: recruitment_probability(perceived, post.required_skill, model),
        })
        .filter(|rp| rp.probability >= model.probability_cutoff)
        .collect();
    relevant.sort_by(|a, b| {
        b.probability
            .partial_cmp(&a.probability)
            .expect("match probabilities are finite")
            .then_with(|| a.post.id.cmp(&b.post.id))
    });
    relevant
}

/// Canonical plan arithmetic over a chosen index set (ascending order into
/// the relevant list).
fn plan_for_subset(
    candidate: &Candidate,
    relevant: &[RelevantPost<'_>],
    chosen: &[usize],
) -> ApplicationPlan {
    let mut miss = 1.0;
    let mut total_fee = 0.0;
    let mut post_ids = BTreeSet::new();
    for &i in chosen {
        miss *= 1.0 - relevant[i].probability;
        total_fee += relevant[i].post.fee;
        post_ids.insert(relevant[i].post.id.clone());
    }
    let chance = 1.0 - miss;
    ApplicationPlan {
        candidate_id: candidate.id.clone(),
        post_ids,
        total_fee,
        believed_overall_chance: chance,
        expected_utility: candidate.reward_value * chance - total_fee,
    }
}

fn sorted_ids<'a>(relevant: &[RelevantPost<'a>], chosen: &[usize]) -> Vec<&'a str> {
    let mut ids: Vec<&str> = chosen.iter().map(|&i| relevant[i].post.id.as_str()).collect();
    ids.sort_unstable();
    ids
}

/// Running best plan under the preference order: higher utility, then lower
/// total fee, then the lexicographically smallest sorted post-id sequence.
struct BestPlan {
    utility: f64,
    fee: f64,
    chosen: Vec<usize>,
}

impl BestPlan {
    fn consider(&mut self, relevant: &[RelevantPost<'_>], utility: f64, fee: f64, chosen: &[usize]) {
        if utility > self.utility {
            // strictly better
        } else if utility == self.utility {
            if fee > self.fee {
                return;
            }
            if fee == self.fee && sorted_ids(relevant, chosen) >= sorted_ids(relevant, &self.chosen)
            {
                return;
            }
        } else {
            return;
        }
        self.utility = utility;
        self.fee = fee;
        self.chosen = chosen.to_vec();
    }
}

/// Globally optimal plan by plain enumeration of every subset of the
/// relevant posts. This is the independent oracle the optimizer is tested
/// against; keep it simple.
pub fn select_applications_exhaustive(
    candidate: &Candidate,
    perceived: SkillLevel,
    posts: &[JobPost],
    model: &MatchModel,
) -> Result<ApplicationPlan, StrategyError> {
    let relevant = relevant_posts(perceived, posts, model);
    let n = relevant.len();
    if n > EXHAUSTIVE_LIMIT {
        return Err(StrategyError::InstanceTooLarge {
            count: n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let mut best = BestPlan {
        utility: 0.0,
        fee: 0.0,
        chosen: Vec::new(),
    };
    let mut chosen = Vec::with_capacity(n);
    for mask in 0u32..(1u32 << n) {
        chosen.clear();
        let mut miss = 1.0;
        let mut fee = 0.0;
        let mut positive_fee = 0.0;
        for (i, rp) in relevant.iter().enumerate() {
            if mask & (1 << i) != 0 {
                chosen.push(i);
                miss *= 1.0 - rp.probability;
                fee += rp.post.fee;
                positive_fee += rp.post.fee.max(0.0);
            }
        }
        if positive_fee > candidate.budget {
            continue;
        }
        let utility = candidate.reward_value * (1.0 - miss) - fee;
        best.consider(&relevant, utility, fee, &chosen);
    }
    Ok(plan_for_subset(candidate, &relevant, &best.chosen))
}

/// The candidate's chosen application set.
///
/// Globally optimal (branch and bound) when at most [`EXACT_SEARCH_LIMIT`]
/// posts survive the cutoff pruning; greedy otherwise. The returned plan is
/// always feasible and never worse than the empty plan.
pub fn select_applications(
    candidate: &Candidate,
    perceived: SkillLevel,
    posts: &[JobPost],
    model: &MatchModel,
) -> ApplicationPlan {
    let relevant = relevant_posts(perceived, posts, model);
    let chosen = if relevant.len() <= EXACT_SEARCH_LIMIT {
        exact_search(candidate, &relevant)
    } else {
        greedy_search(candidate, &relevant)
    };
    plan_for_subset(candidate, &relevant, &chosen)
}

/// Depth-first branch and bound over the relevant posts in canonical order.
/// The bound assumes every remaining post could be taken for free, which
/// over-estimates achievable utility, so pruning on it is sound; a small
/// guard keeps float rounding in the bound from ever cutting the optimum.
fn exact_search(candidate: &Candidate, relevant: &[RelevantPost<'_>]) -> Vec<usize> {
    let n = relevant.len();
    // suffix_miss[i]: product of (1 - p_j) for j >= i;
    // suffix_income[i]: total negative-fee income available from j >= i.
    let mut suffix_miss = vec![1.0; n + 1];
    let mut suffix_income = vec![0.0; n + 1];
    for i in (0..n).rev() {
        suffix_miss[i] = suffix_miss[i + 1] * (1.0 - relevant[i].probability);
        suffix_income[i] = suffix_income[i + 1] + (-relevant[i].post.fee).max(0.0);
    }

    struct Dfs<'r, 'a> {
        candidate: &'r Candidate,
        relevant: &'r [RelevantPost<'a>],
        suffix_miss: Vec<f64>,
        suffix_income: Vec<f64>,
        path: Vec<usize>,
        best: BestPlan,
    }

    impl Dfs<'_, '_> {
        fn visit(&mut self, pos: usize, miss: f64, fee: f64, positive_fee: f64) {
            let reward = self.candidate.reward_value;
            if pos == self.relevant.len() {
                let utility = reward * (1.0 - miss) - fee;
                self.best
                    .consider(self.relevant, utility, fee, &self.path);
                return;
            }
            let optimistic = reward * (1.0 - miss * self.suffix_miss[pos]) - fee
                + self.suffix_income[pos];
            let guard = 1e-9 * (1.0 + self.best.utility.abs());
            if optimistic < self.best.utility - guard {
                return;
            }
            let rp = &self.relevant[pos];
            let fee_if_taken = positive_fee + rp.post.fee.max(0.0);
            if fee_if_taken <= self.candidate.budget {
                self.path.push(pos);
                self.visit(
                    pos + 1,
                    miss * (1.0 - rp.probability),
                    fee + rp.post.fee,
                    fee_if_taken,
                );
                self.path.pop();
            }
            self.visit(pos + 1, miss, fee, positive_fee);
        }
    }

    let mut dfs = Dfs {
        candidate,
        relevant,
        suffix_miss,
        suffix_income,
        path: Vec::with_capacity(n),
        best: BestPlan {
            utility: 0.0,
            fee: 0.0,
            chosen: Vec::new(),
        },
    };
    dfs.visit(0, 1.0, 0.0, 0.0);
    dfs.best.chosen
}

/// Greedy fallback for large instances. All nonpositive-fee posts are taken
/// first (they consume no budget and cannot hurt), then positive-fee posts
/// by marginal utility gain per unit of fee while the gain stays nonnegative
/// and the budget allows.
fn greedy_search(candidate: &Candidate, relevant: &[RelevantPost<'_>]) -> Vec<usize> {
    let n = relevant.len();
    let mut taken = vec![false; n];
    let mut miss = 1.0;
    let mut budget_left = candidate.budget;
    // Canonical order keeps the miss product bit-stable.
    for (i, rp) in relevant.iter().enumerate() {
        if rp.post.fee <= 0.0 {
            taken[i] = true;
            miss *= 1.0 - rp.probability;
        }
    }
    loop {
        let mut pick: Option<(usize, f64)> = None;
        for (i, rp) in relevant.iter().enumerate() {
            if taken[i] || rp.post.fee > budget_left {
                continue;
            }
            let gain = candidate.reward_value * rp.probability * miss - rp.post.fee;
            if gain <= 0.0 {
                // A paid application must strictly improve utility: on exact
                // ties the cheaper plan is preferred, like the exact search.
                continue;
            }
            let ratio = gain / rp.post.fee;
            let better = match pick {
                None => true,
                Some((best_i, best_ratio)) => {
                    ratio > best_ratio
                        || (ratio == best_ratio && {
                            let (bf, cf) = (relevant[best_i].post.fee, rp.post.fee);
                            cf < bf || (cf == bf && rp.post.id < relevant[best_i].post.id)
                        })
                }
            };
            if better {
                pick = Some((i, ratio));
            }
        }
        match pick {
            Some((i, _)) => {
                taken[i] = true;
                budget_left -= relevant[i].post.fee;
                // Recompute the running miss in canonical order so the final
                // plan arithmetic matches plan_for_subset exactly.
                miss = 1.0;
                for (j, rp) in relevant.iter().enumerate() {
                    if taken[j] {
                        miss *= 1.0 - rp.probability;
                    }
                }
            }
            None => break,
        }
    }
    (0..n).filter(|&i| taken[i]).collect()
}
