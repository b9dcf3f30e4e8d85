//! Follows general (not periodic) trajectories. Chords that pass between
//! the foci stay tangent to a confocal hyperbola; the rest to a confocal
//! ellipse. Either way the confocal parameter and Joachimsthal's quantity
//! do not drift.

use elliptic_billiards::ellipse::{
    caustic_branch, confocal_caustic_parameter, crosses_focal_segment, joachimsthal, trajectory,
    Ray,
};
use elliptic_billiards::{Ellipse, Point2};

fn main() {
    let e = Ellipse::new(2.0, 1.0).unwrap();
    let launches = [
        ("glancing", Point2::new(2.0, 0.0), Point2::new(-1.0, 0.9)),
        (
            "through the foci",
            Point2::new(0.0, 1.0),
            Point2::new(0.5, -2.0),
        ),
    ];
    for (label, origin, dir) in launches {
        let start = Ray::new(&e, origin, dir).unwrap();
        let rays = trajectory(&e, &start, 200).unwrap();
        let lambda =
            |r: &Ray| confocal_caustic_parameter(&e, r.origin, r.origin + r.direction).unwrap();
        let (l0, j0) = (lambda(&start), joachimsthal(&e, &start).unwrap());
        let (mut dl, mut dj): (f64, f64) = (0.0, 0.0);
        for r in &rays {
            dl = dl.max((lambda(r) - l0).abs());
            dj = dj.max((joachimsthal(&e, r).unwrap() - j0).abs());
        }
        println!(
            "{label:<17} lambda {l0:.12} ({:?}, between foci: {}) drift {dl:.1e}; joachimsthal {j0:.12} drift {dj:.1e}",
            caustic_branch(&e, l0),
            crosses_focal_segment(&e, start.origin, start.origin + start.direction),
        );
        let last = rays.last().unwrap().origin;
        println!(
            "{:<17} after 200 bounces at ({:.6}, {:.6})",
            "", last.x, last.y
        );
    }
}
