//! Supply-demand view of charging for submissions: a flat zero-price supply
//! line against a tilted one.
//!
//! ```bash
//! cargo run --example equilibrium_shift
//! ```

use jobmarket::{compare_equilibria, solve_equilibrium, LinearCurve};

fn main() {
    let demand = LinearCurve::new(10.0, -1.0);

    let free = solve_equilibrium(&demand, &LinearCurve::flat_free()).unwrap();
    println!("free submissions:    p* = {}, q* = {}  (over-application)", free.price, free.quantity);

    let charged = solve_equilibrium(&demand, &LinearCurve::new(2.0, 1.0)).unwrap();
    println!("charged submissions: p* = {}, q* = {}", charged.price, charged.quantity);

    let shift = compare_equilibria(&free, &charged);
    println!(
        "\nprice rose: {} (by {}); quantity fell: {} (by {})",
        shift.price_rose, shift.price_delta, shift.quantity_fell, -shift.quantity_delta
    );

    // The direction is not an artifact of the numbers above: any downward
    // demand against any upward supply with a positive intercept below the
    // demand intercept moves the same way.
    let demand = LinearCurve::new(25.0, -0.4);
    let free = solve_equilibrium(&demand, &LinearCurve::flat_free()).unwrap();
    for (c, d) in [(1.0, 0.1), (5.0, 2.0), (24.0, 0.01)] {
        let e = solve_equilibrium(&demand, &LinearCurve::new(c, d)).unwrap();
        let shift = compare_equilibria(&free, &e);
        println!(
            "supply p = {c} + {d} q  ->  p* = {:.4}, q* = {:.4}  (price rose: {}, quantity fell: {})",
            e.price, e.quantity, shift.price_rose, shift.quantity_fell
        );
    }
}
