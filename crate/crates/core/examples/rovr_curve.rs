//! `r/R` of the family as a function of the aspect ratio, plus the ratio
//! where the curve changes from convex to concave. Output is CSV so it can
//! be plotted directly.
//!
//! ```text
//! cargo run --example rovr_curve > rovr.csv
//! ```

use elliptic_billiards::invariants::{rovr_closed_form, rovr_inflection};
use elliptic_billiards::Ellipse;

fn main() {
    let x = rovr_inflection(1.01, 4.0).unwrap();
    eprintln!("inflection at a/b = {x:.10}");
    println!("a_over_b,r_over_R");
    for i in 1..=300 {
        let ratio = 1.0 + 0.01 * i as f64;
        let e = Ellipse::new(ratio, 1.0).unwrap();
        println!("{ratio:.2},{:.16e}", rovr_closed_form(&e));
    }
}
