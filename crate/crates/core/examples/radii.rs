//! Inradius and circumradius over one sweep of the family, with the
//! closed-form extremes for comparison. CSV on stdout.

use elliptic_billiards::invariants::{extremal_radii, sample_family, sweep_extremes};
use elliptic_billiards::Ellipse;

fn main() {
    let e = Ellipse::new(2.0, 1.0).unwrap();
    let closed = extremal_radii(&e);
    let swept = sweep_extremes(&e, 720).unwrap();
    eprintln!(
        "r_min {:.12} (swept {:.12} at t = {:.4})",
        closed.r_min, swept.r_min.0, swept.r_min.1
    );
    eprintln!(
        "r_max {:.12} (swept {:.12} at t = {:.4})",
        closed.r_max, swept.r_max.0, swept.r_max.1
    );
    eprintln!(
        "R_min {:.12} (swept {:.12} at t = {:.4})",
        closed.big_r_min, swept.big_r_min.0, swept.big_r_min.1
    );
    eprintln!(
        "R_max {:.12} (swept {:.12} at t = {:.4})",
        closed.big_r_max, swept.big_r_max.0, swept.big_r_max.1
    );

    println!("t,r,R");
    for s in sample_family(&e, 360).unwrap() {
        println!(
            "{:.16e},{:.16e},{:.16e}",
            s.orbit.t, s.metrics.inradius, s.metrics.circumradius
        );
    }
}
