//! Load a scenario file, simulate one market round, and inspect the event
//! log behind the metrics.
//!
//! ```bash
//! cargo run --example market_round
//! ```

use jobmarket::{load_document, run_round_outcome, MarketEvent};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/small.json");
    let loaded = load_document(path).expect("scenario loads");
    let scenario = &loaded.scenario;
    println!(
        "{} candidates, {} posts, seed {}\n",
        scenario.candidates.len(),
        scenario.posts.len(),
        scenario.seed
    );

    let outcome = run_round_outcome(scenario).expect("valid scenario");

    println!("per-candidate plans:");
    for plan in &outcome.plans {
        println!(
            "  {:<4} -> {:?} (fee {:.2}, believed chance {:.3})",
            plan.candidate_id, plan.post_ids, plan.total_fee, plan.believed_overall_chance
        );
    }

    println!("\nevent log:");
    for event in &outcome.events {
        match event {
            MarketEvent::Applied { candidate, post } => println!("  applied   {candidate} -> {post}"),
            MarketEvent::FeePaid { candidate, post, amount } => {
                println!("  fee_paid  {candidate} -> {post}: {amount:.2}")
            }
            MarketEvent::Hired { candidate, post } => println!("  hired     {candidate} <- {post}"),
        }
    }

    let m = &outcome.metrics;
    println!("\nmetrics:");
    println!("  applications      {}", m.total_applications);
    println!("  screening cost    {:.2}", m.total_screening_cost);
    println!("  fees paid         {:.2}", m.total_fees_paid);
    println!("  hires             {:?}", m.hires);
    println!("  mean mismatch     {:.4}", m.mean_hire_mismatch);
    println!("  candidate surplus {:.2}", m.welfare.candidate_surplus);
    println!("  recruiter surplus {:.2}", m.welfare.recruiter_surplus);
    println!("  charity transfers {:.2}", m.welfare.charity_transfers);
}
