//! Triangle metrics, barycentric triangle centers, and derived triangles.
//!
//! Side `sᵢ` is always the side opposite vertex `vᵢ`. Centers are evaluated
//! from normalized barycentric weights in the side lengths rather than by
//! intersecting cevians.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{BilliardError, Result};
use crate::point::{line_intersection, Point2};

/// Relative area below which a triangle counts as degenerate.
pub const DEGENERACY_RATIO: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Triangle {
    pub v1: Point2,
    pub v2: Point2,
    pub v3: Point2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleMetrics {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub perimeter: f64,
    pub area: f64,
    pub inradius: f64,
    pub circumradius: f64,
    pub nine_point_radius: f64,
    /// Interior angles at `v1`, `v2`, `v3`, in radians.
    pub angles: [f64; 3],
}

impl TriangleMetrics {
    pub fn r_over_r(&self) -> f64 {
        self.inradius / self.circumradius
    }

    pub fn cosine_sum(&self) -> f64 {
        self.angles.iter().map(|t| t.cos()).sum()
    }
}

/// The triangle centers used here, by Kimberling index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CenterKind {
    /// Incenter.
    X1,
    /// Barycenter (centroid).
    X2,
    /// Circumcenter.
    X3,
    /// Orthocenter.
    X4,
    /// Nine-point center.
    X5,
    /// Symmedian point.
    X6,
    /// Mittenpunkt.
    X9,
}

impl CenterKind {
    pub const ALL: [CenterKind; 7] = [
        CenterKind::X1,
        CenterKind::X2,
        CenterKind::X3,
        CenterKind::X4,
        CenterKind::X5,
        CenterKind::X6,
        CenterKind::X9,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CenterKind::X1 => "X1",
            CenterKind::X2 => "X2",
            CenterKind::X3 => "X3",
            CenterKind::X4 => "X4",
            CenterKind::X5 => "X5",
            CenterKind::X6 => "X6",
            CenterKind::X9 => "X9",
        }
    }
}

impl fmt::Display for CenterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CenterKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "x1" | "incenter" => CenterKind::X1,
            "x2" | "barycenter" | "centroid" => CenterKind::X2,
            "x3" | "circumcenter" => CenterKind::X3,
            "x4" | "orthocenter" => CenterKind::X4,
            "x5" | "nine-point" | "ninepoint" => CenterKind::X5,
            "x6" | "symmedian" => CenterKind::X6,
            "x9" | "mittenpunkt" => CenterKind::X9,
            other => return Err(format!("unknown triangle center '{other}'")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Circle {
    pub center: Point2,
    pub radius: f64,
}

/// The cosine (second Lemoine) circle together with the six points that define it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CosineCircle {
    /// Centered on the symmedian point; radius is the RMS of the six distances.
    pub circle: Circle,
    pub points: [Point2; 6],
    /// Largest minus smallest of the six center distances.
    pub spread: f64,
}

impl Triangle {
    pub const fn new(v1: Point2, v2: Point2, v3: Point2) -> Self {
        Self { v1, v2, v3 }
    }

    pub fn vertices(&self) -> [Point2; 3] {
        [self.v1, self.v2, self.v3]
    }

    /// Positive when the vertices run counterclockwise.
    pub fn signed_area(&self) -> f64 {
        0.5 * (self.v2 - self.v1).cross(self.v3 - self.v1)
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    /// `[s1, s2, s3]`, each opposite the vertex with the same index.
    pub fn side_lengths(&self) -> [f64; 3] {
        [
            self.v2.distance(self.v3),
            self.v3.distance(self.v1),
            self.v1.distance(self.v2),
        ]
    }

    pub fn check(&self) -> Result<()> {
        let area = self.signed_area();
        let longest = self.side_lengths().into_iter().fold(0.0, f64::max);
        if !area.is_finite() || area.abs() <= DEGENERACY_RATIO * longest * longest {
            return Err(BilliardError::DegenerateTriangle { area });
        }
        Ok(())
    }

    pub fn metrics(&self) -> Result<TriangleMetrics> {
        metrics(self)
    }

    pub fn center(&self, kind: CenterKind) -> Result<Point2> {
        center(self, kind)
    }

    /// Normalized barycentric combination of the vertices.
    pub fn barycentric(&self, w: [f64; 3]) -> Point2 {
        let total = w[0] + w[1] + w[2];
        (self.v1 * w[0] + self.v2 * w[1] + self.v3 * w[2]) / total
    }
}

pub fn metrics(t: &Triangle) -> Result<TriangleMetrics> {
    t.check()?;
    let [s1, s2, s3] = t.side_lengths();
    let perimeter = s1 + s2 + s3;
    let area = t.area();
    let circumradius = s1 * s2 * s3 / (4.0 * area);
    let v = t.vertices();
    let mut angles = [0.0; 3];
    for (i, angle) in angles.iter_mut().enumerate() {
        let u = v[(i + 1) % 3] - v[i];
        let w = v[(i + 2) % 3] - v[i];
        *angle = u.cross(w).abs().atan2(u.dot(w));
    }
    Ok(TriangleMetrics {
        s1,
        s2,
        s3,
        perimeter,
        area,
        inradius: area / (0.5 * perimeter),
        circumradius,
        nine_point_radius: 0.5 * circumradius,
        angles,
    })
}

pub fn center(t: &Triangle, kind: CenterKind) -> Result<Point2> {
    t.check()?;
    let [s1, s2, s3] = t.side_lengths();
    let (q1, q2, q3) = (s1 * s1, s2 * s2, s3 * s3);
    let circumcenter = || {
        t.barycentric([
            q1 * (q2 + q3 - q1),
            q2 * (q3 + q1 - q2),
            q3 * (q1 + q2 - q3),
        ])
    };
    let orthocenter = || t.v1 + t.v2 + t.v3 - circumcenter() * 2.0;
    Ok(match kind {
        CenterKind::X1 => t.barycentric([s1, s2, s3]),
        CenterKind::X2 => t.barycentric([1.0, 1.0, 1.0]),
        CenterKind::X3 => circumcenter(),
        CenterKind::X4 => orthocenter(),
        CenterKind::X5 => (circumcenter() + orthocenter()) * 0.5,
        CenterKind::X6 => t.barycentric([q1, q2, q3]),
        CenterKind::X9 => t.barycentric([
            s1 * (s2 + s3 - s1),
            s2 * (s3 + s1 - s2),
            s3 * (s1 + s2 - s3),
        ]),
    })
}

/// Triangle of the three excenters; vertex `i` is the excenter opposite `vᵢ`.
pub fn excentral(t: &Triangle) -> Result<Triangle> {
    t.check()?;
    let [s1, s2, s3] = t.side_lengths();
    Ok(Triangle::new(
        t.barycentric([-s1, s2, s3]),
        t.barycentric([s1, -s2, s3]),
        t.barycentric([s1, s2, -s3]),
    ))
}

/// Points where the excircles touch the sides; vertex `i` lies on side `sᵢ`.
pub fn extouch(t: &Triangle) -> Result<Triangle> {
    t.check()?;
    let [s1, s2, s3] = t.side_lengths();
    let s = 0.5 * (s1 + s2 + s3);
    Ok(Triangle::new(
        t.v2.lerp(t.v3, (s - s3) / s1),
        t.v3.lerp(t.v1, (s - s1) / s2),
        t.v1.lerp(t.v2, (s - s2) / s3),
    ))
}

fn foot(p: Point2, a: Point2, b: Point2) -> Point2 {
    let d = b - a;
    a + d * ((p - a).dot(d) / d.dot(d))
}

/// Pedal triangle of the incenter; vertex `i` lies on side `sᵢ`.
pub fn intouch(t: &Triangle) -> Result<Triangle> {
    let incenter = center(t, CenterKind::X1)?;
    Ok(Triangle::new(
        foot(incenter, t.v2, t.v3),
        foot(incenter, t.v3, t.v1),
        foot(incenter, t.v1, t.v2),
    ))
}

/// Feet of the altitudes; vertex `i` is the foot from `vᵢ`.
pub fn orthic(t: &Triangle) -> Result<Triangle> {
    t.check()?;
    Ok(Triangle::new(
        foot(t.v1, t.v2, t.v3),
        foot(t.v2, t.v3, t.v1),
        foot(t.v3, t.v1, t.v2),
    ))
}

/// Cosine circle of `reference`: through each vertex, the side of the orthic
/// triangle joining the feet on the two adjacent sides is copied parallel
/// through the symmedian point and cut with those two sides.
pub fn cosine_circle(reference: &Triangle) -> Result<CosineCircle> {
    let symmedian = center(reference, CenterKind::X6)?;
    let feet = orthic(reference)?.vertices();
    let v = reference.vertices();
    let mut points = [Point2::ORIGIN; 6];
    for i in 0..3 {
        let apex = v[i];
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        // Feet on the sides apex–v[k] (foot j) and apex–v[j] (foot k).
        let dir = feet[k] - feet[j];
        for (slot, other) in [(2 * i, v[j]), (2 * i + 1, v[k])] {
            points[slot] = line_intersection(symmedian, dir, apex, other - apex)
                .ok_or(BilliardError::NoIntersection)?;
        }
    }
    let dists = points.map(|p| p.distance(symmedian));
    let radius = (dists.iter().map(|d| d * d).sum::<f64>() / 6.0).sqrt();
    let lo = dists.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = dists.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(CosineCircle {
        circle: Circle {
            center: symmedian,
            radius,
        },
        points,
        spread: hi - lo,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn right345() -> Triangle {
        // Right angle at v1; legs 3 (to v3) and 4 (to v2).
        Triangle::new(
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(0.0, 3.0),
        )
    }

    fn equilateral(side: f64) -> Triangle {
        Triangle::new(
            Point2::new(0.0, 0.0),
            Point2::new(side, 0.0),
            Point2::new(0.5 * side, 0.5 * 3f64.sqrt() * side),
        )
    }

    #[test]
    fn classical_345() {
        let m = right345().metrics().unwrap();
        assert!((m.area - 6.0).abs() < 1e-14);
        assert!((m.inradius - 1.0).abs() < 1e-14);
        assert!((m.circumradius - 2.5).abs() < 1e-14);
        assert!((m.r_over_r() - 0.4).abs() < 1e-14);
        assert!((m.angles[0] - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn equilateral_metrics_and_centers() {
        let t = equilateral(1.0);
        let m = t.metrics().unwrap();
        assert!((m.r_over_r() - 0.5).abs() < 1e-14);
        for a in m.angles {
            assert!((a - PI / 3.0).abs() < 1e-14);
        }
        let g = t.center(CenterKind::X2).unwrap();
        for kind in CenterKind::ALL {
            assert!((t.center(kind).unwrap() - g).norm() < 1e-14, "{kind}");
        }
    }

    #[test]
    fn degenerate_rejected() {
        let t = Triangle::new(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(2.0, 2.0),
        );
        assert!(matches!(
            t.metrics(),
            Err(BilliardError::DegenerateTriangle { .. })
        ));
        assert!(excentral(&t).is_err());
        assert!(cosine_circle(&t).is_err());
    }

    #[test]
    fn equilateral_excentral_doubles() {
        let t = equilateral(1.0);
        let x = excentral(&t).unwrap();
        for s in x.side_lengths() {
            assert!((s - 2.0).abs() < 1e-14);
        }
        let shift = x.center(CenterKind::X2).unwrap() - t.center(CenterKind::X2).unwrap();
        assert!(shift.norm() < 1e-14);
    }

    #[test]
    fn equilateral_touch_triangles_are_medial() {
        let t = equilateral(2.0);
        let medial = [
            t.v2.lerp(t.v3, 0.5),
            t.v3.lerp(t.v1, 0.5),
            t.v1.lerp(t.v2, 0.5),
        ];
        for tri in [extouch(&t).unwrap(), intouch(&t).unwrap()] {
            for (p, q) in tri.vertices().iter().zip(medial) {
                assert!((*p - q).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn touch_points_345() {
        let t = right345();
        // Hypotenuse v2v3; semiperimeter 6.
        let ext = extouch(&t).unwrap();
        assert!((ext.v1.distance(t.v3) - 3.0).abs() < 1e-14);
        assert!((ext.v1.distance(t.v2) - 2.0).abs() < 1e-14);
        let int = intouch(&t).unwrap();
        // Incircle meets each leg one unit from the right angle.
        assert!((int.v2.distance(t.v1) - 1.0).abs() < 1e-14);
        assert!((int.v3.distance(t.v1) - 1.0).abs() < 1e-14);
        let x1 = t.center(CenterKind::X1).unwrap();
        for p in int.vertices() {
            assert!((p.distance(x1) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn nine_point_center_is_midpoint() {
        let t = Triangle::new(
            Point2::new(-1.0, 0.2),
            Point2::new(2.0, -0.5),
            Point2::new(0.3, 1.7),
        );
        let x5 = t.center(CenterKind::X5).unwrap();
        let m = t.metrics().unwrap();
        // The nine-point circle passes through the side midpoints.
        for p in [
            t.v2.lerp(t.v3, 0.5),
            t.v3.lerp(t.v1, 0.5),
            t.v1.lerp(t.v2, 0.5),
        ] {
            assert!((p.distance(x5) - m.nine_point_radius).abs() < 1e-13);
        }
    }

    #[test]
    fn equilateral_cosine_circle_is_concyclic() {
        let c = cosine_circle(&equilateral(2.0)).unwrap();
        assert!(c.spread < 1e-14);
        assert!(c.circle.radius > 0.0);
    }

    #[test]
    fn center_names_parse() {
        assert_eq!("x9".parse::<CenterKind>().unwrap(), CenterKind::X9);
        assert_eq!("Incenter".parse::<CenterKind>().unwrap(), CenterKind::X1);
        assert!("X42".parse::<CenterKind>().is_err());
    }
}
