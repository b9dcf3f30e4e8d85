//! Traces triangle-center loci over the family and fits a conic to each.
//! The incenter, centroid, circumcenter, orthocenter and nine-point center
//! trace ellipses, the mittenpunkt stays put, and neither the symmedian point
//! nor the incircle touch points lie on a single conic.

use elliptic_billiards::cli::NON_CONIC_THRESHOLD;
use elliptic_billiards::invariants::locus_trace;
use elliptic_billiards::{conic_fit, CenterKind, Ellipse, LocusKind};

fn main() {
    let e = Ellipse::new(2.0, 1.0).unwrap();
    let kinds = CenterKind::ALL
        .into_iter()
        .map(LocusKind::Center)
        .chain([LocusKind::Intouch]);
    for kind in kinds {
        let points = locus_trace(&e, kind, 240).unwrap();
        let spread = points
            .iter()
            .map(|p| p.distance(points[0]))
            .fold(0.0, f64::max);
        if spread < 1e-9 {
            println!(
                "{kind:<9} stationary at ({:.2e}, {:.2e})",
                points[0].x, points[0].y
            );
            continue;
        }
        let fit = conic_fit(&points).unwrap();
        if fit.residual_rms > NON_CONIC_THRESHOLD {
            println!(
                "{kind:<9} not a conic (best fit rms {:.2e})",
                fit.residual_rms
            );
            continue;
        }
        let [a, b, c, d, ee, f] = fit.coefficients;
        // Centered axis-aligned ellipse: semi-axes from the diagonal terms.
        let axes = if b.abs() < 1e-9 && d.abs() < 1e-9 && ee.abs() < 1e-9 && a * f < 0.0 {
            format!(
                "  semi-axes {:.9} x {:.9}",
                (-f / a).sqrt(),
                (-f / c).sqrt()
            )
        } else {
            String::new()
        };
        println!(
            "{kind:<9} {:<10} rms {:.2e}{axes}",
            fit.kind.as_str(),
            fit.residual_rms
        );
    }
}
