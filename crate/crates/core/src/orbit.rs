//! Closed-form construction of the 3-periodic orbit through a boundary point.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::ellipse::{next_bounce, Ellipse, Ray};
use crate::error::{BilliardError, Result};
use crate::point::Point2;
use crate::triangle::Triangle;

/// Boundary tolerance for the starting vertex of an orbit.
pub const VERTEX_TOL: f64 = 1e-10;

/// One member of the 3-periodic family, vertices in counterclockwise order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Orbit {
    /// Ellipse parameter of `p1 = (a cos t, b sin t)`, in `[0, 2π)`.
    pub t: f64,
    pub p1: Point2,
    pub p2: Point2,
    pub p3: Point2,
    /// Cosine of the exit angle at `p1`, measured from the normal.
    pub cos_alpha: f64,
}

impl Orbit {
    pub fn vertices(&self) -> [Point2; 3] {
        [self.p1, self.p2, self.p3]
    }

    pub fn triangle(&self) -> Triangle {
        Triangle::new(self.p1, self.p2, self.p3)
    }

    pub fn perimeter(&self) -> f64 {
        self.p1.distance(self.p2) + self.p2.distance(self.p3) + self.p3.distance(self.p1)
    }

    pub fn sin_alpha(&self) -> f64 {
        (1.0 - self.cos_alpha * self.cos_alpha).max(0.0).sqrt()
    }

    /// The chords `p1p2`, `p2p3`, `p3p1`.
    pub fn sides(&self) -> [(Point2, Point2); 3] {
        [(self.p1, self.p2), (self.p2, self.p3), (self.p3, self.p1)]
    }
}

/// Cosine of the exit angle that closes a trajectory after three bounces.
///
/// `cos α = a²b √(2δ - a² - b²) / (c² √(a⁴ - c²x₁²))`, with the first root
/// rationalized to `√3 c² / √(2δ + a² + b²)` so the quotient stays accurate
/// for nearly circular tables.
pub fn exit_cos_alpha(e: &Ellipse, x1: f64) -> Result<f64> {
    let (a, b) = (e.a(), e.b());
    if !x1.is_finite() || x1.abs() > a * (1.0 + 1e-12) {
        return Err(BilliardError::AbscissaOutOfRange { x1, a });
    }
    let x1 = x1.clamp(-a, a);
    let k = e.constants();
    let a2 = a * a;
    Ok(a2 * b * k.gamma / (a2 * a2 - k.c2 * x1 * x1).sqrt())
}

/// The two vertices adjacent to `p1`, exactly as the classical polynomial
/// expressions give them: `P₂ = (p₂ₓ, p₂ᵧ)/q₂`, `P₃ = (p₃ₓ, p₃ᵧ)/q₃`.
///
/// The `x₁³` coefficient of `p₃ₓ` is `b⁴(a² - (a² + b²) cos²α)`, the mirror of
/// the `p₂ₓ` term; the bounce map confirms this grouping.
pub fn adjacent_vertices(
    e: &Ellipse,
    p1: Point2,
    cos_alpha: f64,
    sin_alpha: f64,
) -> (Point2, Point2) {
    let (a, b) = (e.a(), e.b());
    let (a2, b2) = (a * a, b * b);
    let (a4, b4) = (a2 * a2, b2 * b2);
    let (a6, b6) = (a4 * a2, b4 * b2);
    let c2 = a2 - b2;
    let (x, y) = (p1.x, p1.y);
    let (x2, y2) = (x * x, y * y);
    let (x3, y3) = (x2 * x, y2 * y);
    let cc = cos_alpha * cos_alpha;
    let cs = cos_alpha * sin_alpha;

    let p2x = -b4 * ((a2 + b2) * cc - a2) * x3 - 2.0 * a4 * b2 * cs * x2 * y
        + a4 * ((a2 - 3.0 * b2) * cc + b2) * x * y2
        - 2.0 * a6 * cs * y3;
    let p2y = 2.0 * b6 * cs * x3
        + b4 * ((b2 - 3.0 * a2) * cc + a2) * x2 * y
        + 2.0 * a2 * b4 * cs * x * y2
        - a4 * ((a2 + b2) * cc - b2) * y3;
    let q2 = b4 * (a2 - c2 * cc) * x2 + a4 * (b2 + c2 * cc) * y2 - 2.0 * a2 * b2 * c2 * cs * x * y;

    let p3x = b4 * (a2 - (b2 + a2) * cc) * x3
        + 2.0 * a4 * b2 * cs * x2 * y
        + a4 * (cc * (a2 - 3.0 * b2) + b2) * x * y2
        + 2.0 * a6 * cs * y3;
    let p3y = -2.0 * b6 * cs * x3 + b4 * (a2 + (b2 - 3.0 * a2) * cc) * x2 * y
        - 2.0 * a2 * b4 * cs * x * y2
        + a4 * (b2 - (b2 + a2) * cc) * y3;
    let q3 = b4 * (a2 - c2 * cc) * x2 + a4 * (b2 + c2 * cc) * y2 + 2.0 * a2 * b2 * c2 * cs * x * y;

    (
        Point2::new(p2x / q2, p2y / q2),
        Point2::new(p3x / q3, p3y / q3),
    )
}

/// `p₃ₓ` with its leading coefficient read as `b⁴(a² - (b² + a²)) cos²α`.
/// Kept only so tests can show that this reading fails the bounce-map check.
pub fn p3x_ungrouped(e: &Ellipse, p1: Point2, cos_alpha: f64, sin_alpha: f64) -> f64 {
    let (a, b) = (e.a(), e.b());
    let (a2, b2) = (a * a, b * b);
    let (a4, b4) = (a2 * a2, b2 * b2);
    let c2 = a2 - b2;
    let (x, y) = (p1.x, p1.y);
    let cc = cos_alpha * cos_alpha;
    let cs = cos_alpha * sin_alpha;
    let p3x = b4 * (a2 - (b2 + a2)) * cc * x.powi(3)
        + 2.0 * a4 * b2 * cs * x * x * y
        + a4 * (cc * (a2 - 3.0 * b2) + b2) * x * y * y
        + 2.0 * a4 * a2 * cs * y.powi(3);
    let q3 =
        b4 * (a2 - c2 * cc) * x * x + a4 * (b2 + c2 * cc) * y * y + 2.0 * a2 * b2 * c2 * cs * x * y;
    p3x / q3
}

/// The 3-periodic orbit through `p1`, taking `sin α ≥ 0`.
pub fn orbit_from_vertex(e: &Ellipse, p1: Point2) -> Result<Orbit> {
    e.check_on_boundary_within(p1, VERTEX_TOL)?;
    let cos_alpha = exit_cos_alpha(e, p1.x)?;
    let sin_alpha = (1.0 - cos_alpha * cos_alpha).max(0.0).sqrt();
    let (p2, p3) = adjacent_vertices(e, p1, cos_alpha, sin_alpha);
    let t = (p1.y / e.b()).atan2(p1.x / e.a()).rem_euclid(TAU);
    Ok(Orbit {
        t,
        p1,
        p2,
        p3,
        cos_alpha,
    })
}

/// The orbit whose first vertex is `(a cos t, b sin t)`; `t` is taken mod 2π.
pub fn orbit_at_parameter(e: &Ellipse, t: f64) -> Result<Orbit> {
    let t = wrap_parameter(t);
    let mut orbit = orbit_from_vertex(e, e.point_at(t))?;
    orbit.t = t;
    Ok(orbit)
}

pub fn wrap_parameter(t: f64) -> f64 {
    let w = t.rem_euclid(TAU);
    // rem_euclid can round up to TAU itself for tiny negative inputs.
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// `n` orbits at uniformly spaced parameters `t = 2πk/n`.
pub fn sweep(e: &Ellipse, n: usize) -> Result<Vec<Orbit>> {
    (0..n)
        .map(|k| orbit_at_parameter(e, TAU * k as f64 / n as f64))
        .collect()
}

/// Vertices produced by the bounce map alone: launch from `p1` at the
/// closing exit angle and bounce twice.
pub fn oracle_vertices(e: &Ellipse, p1: Point2) -> Result<[Point2; 3]> {
    let cos_alpha = exit_cos_alpha(e, p1.x)?;
    let sin_alpha = (1.0 - cos_alpha * cos_alpha).max(0.0).sqrt();
    let launch = Ray::from_exit_angle(e, p1, cos_alpha, sin_alpha)?;
    let second = next_bounce(e, &launch)?;
    let third = next_bounce(e, &second)?;
    Ok([p1, second.origin, third.origin])
}

/// Distance from `p1` to where the billiard lands after three bounces
/// when launched from `p1` toward `p2`. Infinite if the bounce map fails.
pub fn closure_residual(e: &Ellipse, o: &Orbit) -> f64 {
    let run = || -> Result<Point2> {
        let mut ray = Ray::new(e, o.p1, o.p2 - o.p1)?;
        for _ in 0..3 {
            ray = next_bounce(e, &ray)?;
        }
        Ok(ray.origin)
    };
    run().map(|p| p.distance(o.p1)).unwrap_or(f64::INFINITY)
}

/// Largest mismatch, over the three vertices, between the angles the two
/// incident sides make with the local normal.
pub fn normal_bisection_residual(e: &Ellipse, o: &Orbit) -> f64 {
    let v = o.vertices();
    (0..3)
        .map(|i| {
            let here = v[i];
            let n = e.outward_normal(here);
            let prev = (v[(i + 2) % 3] - here).normalized().unwrap_or_default();
            let next = (v[(i + 1) % 3] - here).normalized().unwrap_or_default();
            (n.dot(prev) - n.dot(next)).abs()
        })
        .fold(0.0, f64::max)
}
