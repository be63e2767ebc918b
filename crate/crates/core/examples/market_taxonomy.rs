//! Classifying competitions by market and price presence, with the price
//! dispersion diagnostic that separates lively from sluggish price systems.
//!
//! ```bash
//! cargo run --example market_taxonomy
//! ```

use jobmarket::{classify_market, price_dispersion};

fn main() {
    let cases = [
        ("groceries", true, 2.5),
        ("job applications (free to submit)", true, 0.0),
        ("free newspapers", false, 0.0),
        ("realtor commissions", false, 2.5),
    ];
    for (name, market, price) in cases {
        let label = classify_market(market, price);
        println!(
            "Quadrant {:<4} {name} (market {}, price {})",
            label.quadrant.to_string(),
            if label.market_present { "present" } else { "absent" },
            if label.price_present { "present" } else { "absent" },
        );
    }

    // Nearly-fixed commissions versus prices that actually differentiate
    // quality: the coefficient of variation tells them apart no matter the
    // unit.
    let commissions = [2.4, 2.5, 2.5, 2.6, 2.5];
    let open_market = [40.0, 90.0, 250.0, 120.0, 610.0];
    println!(
        "\nprice dispersion (std/mean):\n  sticky commissions: {:.4}\n  open market:        {:.4}",
        price_dispersion(&commissions).unwrap(),
        price_dispersion(&open_market).unwrap()
    );
}
