//! A recruiter grid-searching its own submission fee for maximum net value,
//! under each fee disposition.
//!
//! ```bash
//! cargo run --example optimal_fee
//! ```

use jobmarket::{optimal_fee, Candidate, FeeDisposition, FeeGrid, HiringMode, JobPost, MarketScenario, MatchModel, SkillLevel};

fn main() {
    let candidates = (0..60)
        .map(|i| Candidate {
            id: format!("c{i:02}"),
            true_skill: SkillLevel(i as f64 * 10.0 / 60.0),
            assessment_noise: 0.4,
            budget: 15.0,
            reward_value: 100.0,
        })
        .collect();
    let posts = (0..6)
        .map(|i| JobPost {
            id: format!("p{i}"),
            required_skill: SkillLevel(0.8 + i as f64 * 1.7),
            fee: 1.0,
            screening_cost_per_application: 2.0,
            capacity: 2,
            hire_value: 120.0,
        })
        .collect();
    let mut scenario = MarketScenario {
        candidates,
        posts,
        match_model: MatchModel {
            sigma: 1.0,
            peak_probability: 0.5,
            probability_cutoff: 1e-4,
        },
        fee_disposition: FeeDisposition::Kept,
        hiring_mode: HiringMode::CapacityRanked,
        seed: 99,
    };

    let grid = FeeGrid::new(-1.0, 8.0, 0.5).expect("valid grid");
    println!("best fee for post p2 (others keep charging 1.0), grid {:?}:\n", grid);
    for disposition in [
        FeeDisposition::Kept,
        FeeDisposition::Donated,
        FeeDisposition::DoubleDonated,
    ] {
        scenario.fee_disposition = disposition;
        let (fee, net) = optimal_fee(&scenario, "p2", &grid).expect("grid search runs");
        println!("  {disposition:<14?} fee {fee:>5.1}  mean net value {net:>8.2}");
    }
    println!(
        "\nkept fees reward charging; donated fees only deter applications; \n\
         double-donated fees make every application a cost."
    );
}
