//! Shared domain model: candidates, job posts, the Gaussian match model,
//! scenarios and the metrics a simulated round produces.
//!
//! Everything here is immutable value data after construction; behaviour
//! lives in the other modules. [`validate_scenario`] is the single gate that
//! checks every invariant and reports all violations at once.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Position on the one-dimensional skill axis.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SkillLevel(pub f64);

impl SkillLevel {
    pub fn value(self) -> f64 {
        self.0
    }

    /// Absolute distance to another skill level.
    pub fn distance(self, other: SkillLevel) -> f64 {
        (self.0 - other.0).abs()
    }
}

impl From<f64> for SkillLevel {
    fn from(v: f64) -> Self {
        SkillLevel(v)
    }
}

impl fmt::Display for SkillLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn unlimited_budget() -> f64 {
    f64::INFINITY
}

fn is_unlimited(budget: &f64) -> bool {
    budget.is_infinite() && *budget > 0.0
}

/// A job seeker.
///
/// `reward_value` is what being recruited is worth to the candidate;
/// `budget` caps the total of nonnegative submission fees they can pay
/// (omit it, or set it to infinity, for an unconstrained candidate).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Candidate {
    pub id: String,
    pub true_skill: SkillLevel,
    /// Standard deviation of the self-assessment error, in skill units.
    #[serde(default)]
    pub assessment_noise: f64,
    #[serde(default = "unlimited_budget", skip_serializing_if = "is_unlimited")]
    pub budget: f64,
    pub reward_value: f64,
}

fn default_capacity() -> u32 {
    1
}

/// A recruiting post: a skill requirement, a submission fee (possibly
/// negative, i.e. the recruiter pays applicants), and the recruiter-side
/// economics of screening and hiring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobPost {
    pub id: String,
    pub required_skill: SkillLevel,
    #[serde(default)]
    pub fee: f64,
    /// Cost of reading one application, in money units.
    #[serde(default)]
    pub screening_cost_per_application: f64,
    #[serde(default = "default_capacity")]
    pub capacity: u32,
    /// Value to the recruiter of a filled seat.
    #[serde(default)]
    pub hire_value: f64,
}

fn default_peak_probability() -> f64 {
    0.5
}

fn default_probability_cutoff() -> f64 {
    1e-4
}

/// The bell-shaped recruitment-chance curve: a candidate at skill distance
/// `d` from a post's requirement is recruited with probability
/// `peak_probability * exp(-d^2 / (2 sigma^2))`.
///
/// Posts whose chance falls below `probability_cutoff` are never considered
/// by a candidate, which keeps the relevant-post set finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchModel {
    /// Width of the curve, in skill units.
    pub sigma: f64,
    /// Chance at an exact skill match; in (0, 1].
    #[serde(default = "default_peak_probability")]
    pub peak_probability: f64,
    /// Chances below this are treated as no chance at all; in [0, peak).
    #[serde(default = "default_probability_cutoff")]
    pub probability_cutoff: f64,
}

/// What the recruiter does with collected fees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeeDisposition {
    /// Fees are recruiter revenue.
    #[default]
    Kept,
    /// Fees are passed on to charity; the recruiter keeps nothing.
    Donated,
    /// Fees go to charity and the recruiter matches them out of pocket.
    DoubleDonated,
}

impl FeeDisposition {
    /// Sign of the fee revenue that lands with the recruiter:
    /// +1 kept, 0 donated, -1 double-donated.
    pub fn revenue_multiplier(self) -> f64 {
        match self {
            FeeDisposition::Kept => 1.0,
            FeeDisposition::Donated => 0.0,
            FeeDisposition::DoubleDonated => -1.0,
        }
    }

    /// Fraction of each fee that ends up as a charity transfer.
    pub fn charity_multiplier(self) -> f64 {
        1.0 - self.revenue_multiplier()
    }
}

/// How hires are resolved once applications are in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HiringMode {
    /// Every application independently succeeds with its match-curve
    /// probability; post capacity is ignored.
    PaperLiteral,
    /// Each post hires its best-matching applicants up to capacity, posts
    /// processed in id order, hired candidates leaving the market.
    #[default]
    CapacityRanked,
}

/// A complete market instance: who is looking, what is posted, how matching
/// works, and the seed every random draw flows from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarketScenario {
    pub candidates: Vec<Candidate>,
    pub posts: Vec<JobPost>,
    pub match_model: MatchModel,
    #[serde(default)]
    pub fee_disposition: FeeDisposition,
    #[serde(default)]
    pub hiring_mode: HiringMode,
    #[serde(default)]
    pub seed: u64,
}

impl MarketScenario {
    /// Copy of the scenario with every post charging `fee`.
    pub fn with_uniform_fee(&self, fee: f64) -> MarketScenario {
        let mut scenario = self.clone();
        for post in &mut scenario.posts {
            post.fee = fee;
        }
        scenario
    }

    pub fn validate(&self) -> Result<(), ValidationErrors> {
        validate_scenario(self)
    }
}

/// Money flows of one simulated round, split by who ends up holding them.
/// Charity transfers are transfers, not losses, so the three parts are
/// comparable across fee dispositions.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WelfareLedger {
    pub candidate_surplus: f64,
    pub recruiter_surplus: f64,
    pub charity_transfers: f64,
}

impl WelfareLedger {
    pub fn total(&self) -> f64 {
        self.candidate_surplus + self.recruiter_surplus + self.charity_transfers
    }
}

/// What one simulated round produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationMetrics {
    /// Application count per post id; every post of the scenario has an entry.
    pub applications_per_post: BTreeMap<String, u64>,
    pub total_applications: u64,
    /// Sum of all submission fees paid by candidates (negative fees are
    /// payments to candidates).
    pub total_fees_paid: f64,
    pub total_screening_cost: f64,
    /// (candidate id, post id) pairs, in hire order.
    pub hires: Vec<(String, String)>,
    /// Mean |true skill - requirement| over hires; 0 when nothing was hired.
    pub mean_hire_mismatch: f64,
    pub welfare: WelfareLedger,
}

impl SimulationMetrics {
    pub fn empty() -> Self {
        SimulationMetrics {
            applications_per_post: BTreeMap::new(),
            total_applications: 0,
            total_fees_paid: 0.0,
            total_screening_cost: 0.0,
            hires: Vec::new(),
            mean_hire_mismatch: 0.0,
            welfare: WelfareLedger::default(),
        }
    }
}

/// One violated invariant, with a path to the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationIssue {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Every invariant violation found in a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationErrors(pub Vec<ValidationIssue>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for issue in &self.0 {
            if !first {
                write!(f, "; ")?;
            }
            write!(f, "{issue}")?;
            first = false;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationErrors {}

struct Checker {
    issues: Vec<ValidationIssue>,
}

impl Checker {
    fn new() -> Self {
        Checker { issues: Vec::new() }
    }

    fn issue(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.issues.push(ValidationIssue {
            path: path.into(),
            message: message.into(),
        });
    }

    /// Finite number required (rejects NaN and infinities).
    fn finite(&mut self, path: &str, value: f64) {
        if !value.is_finite() {
            self.issue(path, format!("must be finite, got {value}"));
        }
    }

    /// Finite and >= 0.
    fn nonnegative(&mut self, path: &str, value: f64) {
        self.finite(path, value);
        if value.is_finite() && value < 0.0 {
            self.issue(path, format!("must be nonnegative, got {value}"));
        }
    }
}

/// Checks every type invariant of the scenario and returns the full list of
/// violations, each with a path to the offending field. Total: never panics
/// on any input, and NaN in any numeric field is rejected.
pub fn validate_scenario(scenario: &MarketScenario) -> Result<(), ValidationErrors> {
    let mut c = Checker::new();

    let mut seen = std::collections::BTreeMap::new();
    for (i, cand) in scenario.candidates.iter().enumerate() {
        let at = |field: &str| format!("candidates[{i}].{field}");
        if let Some(prev) = seen.insert(cand.id.clone(), i) {
            c.issue(
                at("id"),
                format!("duplicate candidate id {:?} (also candidates[{prev}])", cand.id),
            );
        }
        c.finite(&at("true_skill"), cand.true_skill.value());
        c.nonnegative(&at("assessment_noise"), cand.assessment_noise);
        // An infinite budget means "unconstrained"; NaN and negatives are out.
        if cand.budget.is_nan() {
            c.issue(at("budget"), "must not be NaN");
        } else if cand.budget < 0.0 {
            c.issue(at("budget"), format!("must be nonnegative, got {}", cand.budget));
        }
        c.nonnegative(&at("reward_value"), cand.reward_value);
    }

    let mut seen = std::collections::BTreeMap::new();
    for (i, post) in scenario.posts.iter().enumerate() {
        let at = |field: &str| format!("posts[{i}].{field}");
        if let Some(prev) = seen.insert(post.id.clone(), i) {
            c.issue(
                at("id"),
                format!("duplicate post id {:?} (also posts[{prev}])", post.id),
            );
        }
        c.finite(&at("required_skill"), post.required_skill.value());
        c.finite(&at("fee"), post.fee);
        c.nonnegative(
            &at("screening_cost_per_application"),
            post.screening_cost_per_application,
        );
        if post.capacity < 1 {
            c.issue(at("capacity"), "must be at least 1");
        }
        c.nonnegative(&at("hire_value"), post.hire_value);
    }

    let m = &scenario.match_model;
    c.finite("match_model.sigma", m.sigma);
    if m.sigma.is_finite() && m.sigma <= 0.0 {
        c.issue("match_model.sigma", format!("must be positive, got {}", m.sigma));
    }
    if !(m.peak_probability > 0.0 && m.peak_probability <= 1.0) {
        c.issue(
            "match_model.peak_probability",
            format!("must be in (0, 1], got {}", m.peak_probability),
        );
    }
    if !(m.probability_cutoff >= 0.0 && m.probability_cutoff < 1.0) {
        c.issue(
            "match_model.probability_cutoff",
            format!("must be in [0, 1), got {}", m.probability_cutoff),
        );
    } else if m.peak_probability > 0.0
        && m.peak_probability <= 1.0
        && m.probability_cutoff >= m.peak_probability
    {
        c.issue(
            "match_model.probability_cutoff",
            format!(
                "must be below peak_probability {}, got {}",
                m.peak_probability, m.probability_cutoff
            ),
        );
    }

    if c.issues.is_empty() {
        Ok(())
    } else {
        Err(ValidationErrors(c.issues))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> MatchModel {
        MatchModel {
            sigma: 1.0,
            peak_probability: 0.5,
            probability_cutoff: 1e-4,
        }
    }

    fn empty_scenario() -> MarketScenario {
        MarketScenario {
            candidates: vec![],
            posts: vec![],
            match_model: model(),
            fee_disposition: FeeDisposition::Kept,
            hiring_mode: HiringMode::CapacityRanked,
            seed: 0,
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

    fn post(id: &str, skill: f64) -> JobPost {
        JobPost {
            id: id.into(),
            required_skill: SkillLevel(skill),
            fee: 0.0,
            screening_cost_per_application: 1.0,
            capacity: 1,
            hire_value: 10.0,
        }
    }

    #[test]
    fn empty_scenario_is_valid() {
        assert!(validate_scenario(&empty_scenario()).is_ok());
    }

    #[test]
    fn zero_sigma_is_rejected_with_path() {
        let mut s = empty_scenario();
        s.match_model.sigma = 0.0;
        let err = validate_scenario(&s).unwrap_err();
        assert!(err.0.iter().any(|i| i.path == "match_model.sigma"), "{err}");
    }

    #[test]
    fn duplicate_post_ids_are_rejected() {
        let mut s = empty_scenario();
        s.posts = vec![post("p1", 1.0), post("p1", 2.0)];
        let err = validate_scenario(&s).unwrap_err();
        assert!(err.to_string().contains("duplicate post id \"p1\""), "{err}");
        assert!(err.0.iter().any(|i| i.path == "posts[1].id"));
    }

    #[test]
    fn duplicate_candidate_ids_are_rejected() {
        let mut s = empty_scenario();
        s.candidates = vec![candidate("c1", 1.0), candidate("c1", 2.0)];
        assert!(validate_scenario(&s).is_err());
    }

    #[test]
    fn nan_fields_are_rejected_everywhere() {
        let mut s = empty_scenario();
        let mut c = candidate("c1", 5.0);
        c.budget = f64::NAN;
        let mut p = post("p1", 5.0);
        p.fee = f64::NAN;
        s.candidates = vec![c];
        s.posts = vec![p];
        s.match_model.probability_cutoff = f64::NAN;
        let err = validate_scenario(&s).unwrap_err();
        assert!(err.0.len() >= 3, "{err}");
    }

    #[test]
    fn infinite_budget_is_allowed() {
        let mut s = empty_scenario();
        s.candidates = vec![candidate("c1", 5.0)];
        assert!(validate_scenario(&s).is_ok());
    }

    #[test]
    fn negative_budget_is_rejected() {
        let mut s = empty_scenario();
        let mut c = candidate("c1", 5.0);
        c.budget = -1.0;
        s.candidates = vec![c];
        let err = validate_scenario(&s).unwrap_err();
        assert!(err.0.iter().any(|i| i.path == "candidates[0].budget"));
    }

    #[test]
    fn peak_probability_bounds() {
        for bad in [0.0, 1.5, -0.2, f64::NAN] {
            let mut s = empty_scenario();
            s.match_model.peak_probability = bad;
            assert!(validate_scenario(&s).is_err(), "peak {bad} accepted");
        }
        let mut s = empty_scenario();
        s.match_model.peak_probability = 1.0;
        s.match_model.probability_cutoff = 0.999;
        assert!(validate_scenario(&s).is_ok());
    }

    #[test]
    fn cutoff_must_stay_below_peak() {
        let mut s = empty_scenario();
        s.match_model.probability_cutoff = 0.5;
        assert!(validate_scenario(&s).is_err());
    }

    #[test]
    fn validation_is_idempotent() {
        let mut s = empty_scenario();
        s.posts = vec![post("p1", 1.0), post("p1", 2.0)];
        assert_eq!(validate_scenario(&s), validate_scenario(&s));
        let ok = empty_scenario();
        assert_eq!(validate_scenario(&ok), validate_scenario(&ok));
    }
}
