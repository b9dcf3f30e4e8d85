//! Prints the conservation report for every tracked quantity.
//!
//! ```text
//! cargo run --example invariant_report -- 3 1
//! ```

use elliptic_billiards::invariants::{invariant_report, DEFAULT_TOLERANCE};
use elliptic_billiards::Ellipse;

fn main() {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("number"))
        .collect();
    let (a, b) = match args[..] {
        [a, b] => (a, b),
        _ => (2.0, 1.0),
    };
    let e = Ellipse::new(a, b).unwrap_or_else(|err| panic!("{err}"));
    let k = e.constants();
    println!(
        "a = {a}, b = {b}: a_c/a + b_c/b = {:.15}",
        k.poncelet_sum(&e)
    );

    let rows = invariant_report(&e, 360, DEFAULT_TOLERANCE).unwrap();
    println!(
        "{:<38} {:>20} {:>20} {:>10}",
        "quantity", "closed form", "mean", "spread"
    );
    for r in rows {
        let mark = if r.pass { "ok" } else { "FAIL" };
        println!(
            "{:<38} {:>20.14} {:>20.14} {:>10.1e} {mark}",
            r.name, r.closed_form, r.mean, r.spread_rel
        );
    }
}
