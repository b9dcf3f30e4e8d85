//! The cosine circle of the excentral triangle, centered on its symmedian
//! point, does not move or change size across the family.

use std::f64::consts::TAU;

use elliptic_billiards::invariants::sample_orbit;
use elliptic_billiards::orbit::orbit_at_parameter;
use elliptic_billiards::Ellipse;

fn main() {
    let e = Ellipse::new(2.0, 1.0).unwrap();
    println!("r* = 1/gamma = {:.15}", e.constants().r_star);
    for i in 0..8 {
        let t = TAU * i as f64 / 8.0;
        let s = sample_orbit(&e, &orbit_at_parameter(&e, t).unwrap()).unwrap();
        let c = s.cosine_circle_center;
        println!(
            "t = {t:.4}: center ({:+.1e}, {:+.1e}) radius {:.15} (six points within {:.1e})",
            c.x, c.y, s.cosine_circle_radius, s.cosine_circle_spread
        );
    }
}
