//! One rational candidate deciding where to apply under fees and a budget,
//! checked against the exhaustive-search oracle.
//!
//! ```bash
//! cargo run --example candidate_choice
//! ```

use jobmarket::{
    application_ev, recruitment_probability, select_applications, select_applications_exhaustive,
    Candidate, JobPost, MatchModel, SkillLevel,
};

fn post(id: &str, skill: f64, fee: f64) -> JobPost {
    JobPost {
        id: id.into(),
        required_skill: SkillLevel(skill),
        fee,
        screening_cost_per_application: 1.0,
        capacity: 1,
        hire_value: 40.0,
    }
}

fn main() {
    let model = MatchModel {
        sigma: 1.0,
        peak_probability: 0.5,
        probability_cutoff: 1e-4,
    };
    let candidate = Candidate {
        id: "ada".into(),
        true_skill: SkillLevel(5.0),
        assessment_noise: 0.0,
        budget: 7.0,
        reward_value: 100.0,
    };
    let posts = vec![
        post("exact_match", 5.0, 4.0),
        post("near_low", 4.2, 3.0),
        post("near_high", 5.9, 3.0),
        post("stretch", 7.0, 1.0),
        post("long_shot", 8.5, 0.5),
        post("free_flyer", 2.5, 0.0),
        post("paid_pilot", 6.8, -1.5),
    ];

    println!(
        "candidate {} (skill {}, budget {}, reward {}):\n",
        candidate.id, candidate.true_skill, candidate.budget, candidate.reward_value
    );
    for p in &posts {
        let chance = recruitment_probability(candidate.true_skill, p.required_skill, &model);
        println!(
            "  {:<12} requirement {:>3.1}  fee {:>5.2}  chance {:.4}  single-app EV {:>7.3}",
            p.id,
            p.required_skill.value(),
            p.fee,
            chance,
            application_ev(chance, candidate.reward_value, p.fee)
        );
    }

    let plan = select_applications(&candidate, candidate.true_skill, &posts, &model);
    println!("\nchosen plan: {:?}", plan.post_ids);
    println!("  total fee            {:.3}", plan.total_fee);
    println!("  believed chance      {:.4}", plan.believed_overall_chance);
    println!("  expected utility     {:.3}", plan.expected_utility);

    let oracle = select_applications_exhaustive(&candidate, candidate.true_skill, &posts, &model)
        .expect("small instance");
    assert_eq!(plan.expected_utility, oracle.expected_utility);
    println!("\nexhaustive enumeration over all subsets agrees with the optimizer.");
}
