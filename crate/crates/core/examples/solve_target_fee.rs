//! Solve for the smallest uniform fee that keeps expected application
//! volume at or below a target.
//!
//! ```bash
//! cargo run --example solve_target_fee
//! ```

use jobmarket::{expected_applications, fee_for_target, load_document};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/reference.json");
    let scenario = load_document(path).expect("scenario loads").scenario;

    let at_zero = expected_applications(&scenario, 0.0);
    println!("expected applications at fee 0: {at_zero:.1}\n");

    for share in [0.8, 0.5, 0.2, 0.05] {
        let target = at_zero * share;
        let fee = fee_for_target(&scenario, target).expect("reachable target");
        let achieved = expected_applications(&scenario, fee);
        // Volume is a step function of the fee, so the solved fee can sit a
        // hair above a jump; print enough digits to show that.
        println!(
            "target {:>7.1} ({:>3.0}%): fee {:>11.7} achieves {:>7.1}",
            target,
            share * 100.0,
            fee,
            achieved
        );
    }

    // Targets above the zero-fee volume are unreachable: charging cannot
    // increase applications.
    let err = fee_for_target(&scenario, at_zero * 1.5).unwrap_err();
    println!("\ntarget above the zero-fee volume: {err}");
}
