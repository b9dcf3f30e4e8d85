//! Closed-form constants of the 3-periodic family for a few tables.
//!
//! ```text
//! cargo run --example constants
//! ```

use elliptic_billiards::invariants::{caustic_area_ratio, extremal_radii, rovr_closed_form};
use elliptic_billiards::Ellipse;

fn main() {
    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "a/b", "perimeter", "r*", "a_c", "b_c", "r/R", "Ac/Ab"
    );
    for a in [1.1, 1.5, 2.0, 3.0, 5.0] {
        let e = Ellipse::new(a, 1.0).unwrap();
        let k = e.constants();
        println!(
            "{a:>5.2} {:>12.9} {:>12.9} {:>12.9} {:>12.9} {:>12.9} {:>12.9}",
            k.perimeter,
            k.r_star,
            k.caustic_a,
            k.caustic_b,
            rovr_closed_form(&e),
            caustic_area_ratio(&e),
        );
    }

    let e = Ellipse::new(2.0, 1.0).unwrap();
    let x = extremal_radii(&e);
    println!(
        "\na/b = 2: r in [{:.10}, {:.10}], R in [{:.10}, {:.10}]",
        x.r_min, x.r_max, x.big_r_min, x.big_r_max
    );
}
