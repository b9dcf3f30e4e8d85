//! Walks the first vertex around the table and checks each triangle
//! against the bounce map.
//!
//! ```text
//! cargo run --example orbit_family -- 2 1
//! ```

use std::f64::consts::TAU;

use elliptic_billiards::orbit::{closure_residual, oracle_vertices, orbit_at_parameter};
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

    println!(
        "{:>7} {:>24} {:>24} {:>12} {:>10} {:>10}",
        "t", "p2", "p3", "perimeter", "closure", "oracle"
    );
    for i in 0..12 {
        let t = TAU * i as f64 / 12.0;
        let o = orbit_at_parameter(&e, t).unwrap();
        let oracle = oracle_vertices(&e, o.p1).unwrap();
        let gap = o
            .vertices()
            .iter()
            .zip(oracle)
            .map(|(p, q)| p.distance(q))
            .fold(0.0, f64::max);
        println!(
            "{t:>7.4} ({:>10.6}, {:>10.6}) ({:>10.6}, {:>10.6}) {:>12.9} {:>10.1e} {:>10.1e}",
            o.p2.x,
            o.p2.y,
            o.p3.x,
            o.p3.y,
            o.perimeter(),
            closure_residual(&e, &o),
            gap,
        );
    }
}
