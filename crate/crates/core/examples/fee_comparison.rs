//! Zero-fee baseline versus a submission fee on the same draws: fewer
//! applications and less screening, with hire quality essentially intact.
//!
//! ```bash
//! cargo run --example fee_comparison
//! ```

use jobmarket::{expected_applications, run_comparison, FeeMode, FeePolicy, load_document};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/reference.json");
    let scenario = load_document(path).expect("scenario loads").scenario;

    let baseline_volume = expected_applications(&scenario, 0.0);
    let policy = FeePolicy {
        mode: FeeMode::TargetVolume(0.2 * baseline_volume),
        disposition: jobmarket::FeeDisposition::Kept,
    };
    let report = run_comparison(&scenario, &policy).expect("comparison runs");

    println!(
        "target: cut expected applications to 20% of the zero-fee volume ({:.0})",
        baseline_volume
    );
    if let Some(fee) = report.uniform_fee {
        println!("solved uniform fee: {fee:.4}\n");
    }
    let (b, t) = (&report.baseline, &report.treated);
    println!("                      baseline      with fee");
    println!("applications        {:>10}    {:>10}", b.total_applications, t.total_applications);
    println!("screening cost      {:>10.1}    {:>10.1}", b.total_screening_cost, t.total_screening_cost);
    println!("hires               {:>10}    {:>10}", b.hires.len(), t.hires.len());
    println!("mean hire mismatch  {:>10.4}    {:>10.4}", b.mean_hire_mismatch, t.mean_hire_mismatch);
    println!("candidate surplus   {:>10.1}    {:>10.1}", b.welfare.candidate_surplus, t.welfare.candidate_surplus);
    println!("recruiter surplus   {:>10.1}    {:>10.1}", b.welfare.recruiter_surplus, t.welfare.recruiter_surplus);
    println!(
        "\nscreening cost fell {:.1}x while mean mismatch moved by {:+.4} skill units.",
        b.total_screening_cost / t.total_screening_cost,
        report.deltas.mean_hire_mismatch
    );
}
