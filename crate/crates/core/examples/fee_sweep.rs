//! Applications, screening cost and welfare as the uniform fee rises — the
//! simulated counterpart of moving along the demand curve.
//!
//! ```bash
//! cargo run --example fee_sweep
//! ```

use jobmarket::{fee_sweep, load_document, FeeGrid};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/reference.json");
    let scenario = load_document(path).expect("scenario loads").scenario;

    let grid = FeeGrid::new(0.0, 10.0, 1.0).expect("valid grid");
    let rows = fee_sweep(&scenario, &grid, 1).expect("sweep runs");

    println!("{:>5}  {:>12}  {:>14}  {:>10}  {:>12}  {:>12}", "fee", "applications", "screening cost", "mismatch", "cand surplus", "recr surplus");
    for row in &rows {
        println!(
            "{:>5.1}  {:>12.0}  {:>14.1}  {:>10.4}  {:>12.1}  {:>12.1}",
            row.fee,
            row.total_applications,
            row.screening_cost,
            row.mean_hire_mismatch,
            row.candidate_surplus,
            row.recruiter_surplus
        );
    }

    let first = rows.first().unwrap();
    let last = rows.last().unwrap();
    println!(
        "\nfrom free to fee {}: applications {:.0} -> {:.0}, screening {:.0} -> {:.0}",
        last.fee, first.total_applications, last.total_applications, first.screening_cost, last.screening_cost
    );
}
