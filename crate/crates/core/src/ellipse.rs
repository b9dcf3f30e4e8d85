//! The billiard table: an axis-aligned ellipse `(x/a)² + (y/b)² = 1`, its
//! family constants, the elastic bounce map, and confocal caustics.
//!
//! The bounce map shares no code with the closed-form orbit construction in
//! [`crate::orbit`]; it is the oracle those formulas are checked against.

use serde::Serialize;

use crate::error::{BilliardError, Result};
use crate::point::Point2;

/// Largest `|f(p) - 1|` accepted for a point claimed to be on the boundary.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Aspect ratios at or below `1 + NEAR_CIRCLE_RATIO` are reported as ill-conditioned.
pub const NEAR_CIRCLE_RATIO: f64 = 1e-7;

/// Billiard boundary with semi-axes `a > b > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ellipse {
    a: f64,
    b: f64,
}

impl Ellipse {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > 0.0 && a > b) {
            return Err(BilliardError::NotAnEllipse { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn aspect_ratio(&self) -> f64 {
        self.a / self.b
    }

    /// Near-circular tables lose most significant digits in `δ - b²` and `a² - δ`.
    pub fn is_ill_conditioned(&self) -> bool {
        self.a / self.b <= 1.0 + NEAR_CIRCLE_RATIO
    }

    /// `f(x, y) = (x/a)² + (y/b)²`.
    pub fn implicit(&self, p: Point2) -> f64 {
        (p.x / self.a).powi(2) + (p.y / self.b).powi(2)
    }

    /// `∇f = 2 (x/a², y/b²)`, an outward normal on the boundary.
    pub fn gradient(&self, p: Point2) -> Point2 {
        Point2::new(2.0 * p.x / (self.a * self.a), 2.0 * p.y / (self.b * self.b))
    }

    pub fn outward_normal(&self, p: Point2) -> Point2 {
        // Never zero away from the center.
        self.gradient(p)
            .normalized()
            .unwrap_or(Point2::new(1.0, 0.0))
    }

    /// `(a cos t, b sin t)`.
    pub fn point_at(&self, t: f64) -> Point2 {
        Point2::new(self.a * t.cos(), self.b * t.sin())
    }

    pub fn boundary_residual(&self, p: Point2) -> f64 {
        (self.implicit(p) - 1.0).abs()
    }

    pub fn check_on_boundary(&self, p: Point2) -> Result<()> {
        self.check_on_boundary_within(p, BOUNDARY_TOL)
    }

    pub fn check_on_boundary_within(&self, p: Point2, tol: f64) -> Result<()> {
        let residual = self.boundary_residual(p);
        if p.is_finite() && residual <= tol {
            Ok(())
        } else {
            Err(BilliardError::OffBoundary {
                x: p.x,
                y: p.y,
                residual,
            })
        }
    }

    /// One Newton step on `f = 1` along the gradient.
    pub fn project(&self, p: Point2) -> Point2 {
        let g = self.gradient(p);
        let g2 = g.dot(g);
        if g2 == 0.0 {
            return p;
        }
        p - g * ((self.implicit(p) - 1.0) / g2)
    }

    pub fn constants(&self) -> BilliardConstants {
        billiard_constants(self)
    }
}

/// Constants shared by every member of the 3-periodic family of one table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BilliardConstants {
    /// `a² - b²`.
    pub c2: f64,
    /// `√(a⁴ - a²b² + b⁴)`.
    pub delta: f64,
    /// Joachimsthal constant of the 3-periodic family.
    pub gamma: f64,
    /// Common perimeter of all 3-periodics.
    pub perimeter: f64,
    /// Semi-axes of the confocal caustic.
    pub caustic_a: f64,
    pub caustic_b: f64,
    /// Radius of the excentral cosine circle.
    pub r_star: f64,
}

/// Closed-form family constants.
///
/// The differences `2δ - a² - b²`, `δ - b²` and `a² - δ` are rationalized
/// (`3c⁴/(2δ + a² + b²)`, `a²c²/(δ + b²)`, `b²c²/(a² + δ)`) so nothing cancels
/// as `a/b → 1`. [`printed_constants`] evaluates the unrationalized forms.
pub fn billiard_constants(e: &Ellipse) -> BilliardConstants {
    let (a, b) = (e.a, e.b);
    let (a2, b2) = (a * a, b * b);
    let c2 = (a - b) * (a + b);
    let delta = (a2 * a2 - a2 * b2 + b2 * b2).sqrt();
    let sum = 2.0 * delta + a2 + b2;
    let gamma = (3.0 / sum).sqrt();
    // √(2δ - a² - b²) without cancellation.
    let root = 3f64.sqrt() * c2 / sum.sqrt();
    let r_star = c2 / root;
    debug_assert!((r_star * gamma - 1.0).abs() <= 1e-12);
    BilliardConstants {
        c2,
        delta,
        gamma,
        perimeter: 2.0 * (delta + a2 + b2) * gamma,
        caustic_a: a * a2 / (delta + b2),
        caustic_b: b * b2 / (a2 + delta),
        r_star,
    }
}

/// The family constants evaluated literally from their textbook expressions.
/// Accurate for well-separated semi-axes; used to cross-check [`billiard_constants`].
pub fn printed_constants(e: &Ellipse) -> BilliardConstants {
    let (a, b) = (e.a, e.b);
    let (a2, b2) = (a * a, b * b);
    let c2 = a2 - b2;
    let delta = (a2 * a2 - a2 * b2 + b2 * b2).sqrt();
    let root = (2.0 * delta - a2 - b2).sqrt();
    let gamma = root / c2;
    BilliardConstants {
        c2,
        delta,
        gamma,
        perimeter: 2.0 * (delta + a2 + b2) * gamma,
        caustic_a: a * (delta - b2) / c2,
        caustic_b: b * (a2 - delta) / c2,
        r_star: c2 / root,
    }
}

impl BilliardConstants {
    /// `a_c/a + b_c/b`, equal to one for a 3-periodic Poncelet pair.
    pub fn poncelet_sum(&self, e: &Ellipse) -> f64 {
        self.caustic_a / e.a + self.caustic_b / e.b
    }

    /// `a/a_c + b/b_c`: the same relation with the ratios inverted. Not one.
    pub fn inverted_poncelet_sum(&self, e: &Ellipse) -> f64 {
        e.a / self.caustic_a + e.b / self.caustic_b
    }

    /// Confocal parameter `λ` of the caustic: `a² - λ = a_c²`.
    pub fn caustic_lambda(&self, e: &Ellipse) -> f64 {
        // Equal to a² - a_c².
        e.b * e.b - self.caustic_b * self.caustic_b
    }

    /// `(x/a_c)² + (y/b_c)² - 1`.
    pub fn caustic_residual(&self, p: Point2) -> f64 {
        (p.x / self.caustic_a).powi(2) + (p.y / self.caustic_b).powi(2) - 1.0
    }
}

/// A launch from a boundary point with a unit direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ray {
    pub origin: Point2,
    pub direction: Point2,
}

impl Ray {
    /// Validates that `origin` is on `e` and normalizes `direction`.
    pub fn new(e: &Ellipse, origin: Point2, direction: Point2) -> Result<Self> {
        e.check_on_boundary(origin)?;
        let direction = direction.normalized().ok_or(BilliardError::BadDirection)?;
        Ok(Self { origin, direction })
    }

    /// Launch at angle `α` from the inward normal, turned counterclockwise
    /// along the boundary when `sin α > 0`.
    pub fn from_exit_angle(
        e: &Ellipse,
        origin: Point2,
        cos_alpha: f64,
        sin_alpha: f64,
    ) -> Result<Self> {
        e.check_on_boundary(origin)?;
        let outward = e.outward_normal(origin);
        // Counterclockwise boundary tangent.
        let tangent = outward.perp();
        Self::new(e, origin, tangent * sin_alpha - outward * cos_alpha)
    }
}

/// `v - 2 (v·n) n` for a unit normal `n`.
pub fn reflect(v: Point2, unit_normal: Point2) -> Point2 {
    v - unit_normal * (2.0 * v.dot(unit_normal))
}

/// Joachimsthal's quantity `½ |v̂ · ∇f|` at the ray's origin.
pub fn joachimsthal(e: &Ellipse, ray: &Ray) -> Result<f64> {
    e.check_on_boundary(ray.origin)?;
    let v = ray
        .direction
        .normalized()
        .ok_or(BilliardError::BadDirection)?;
    Ok(0.5 * v.dot(e.gradient(ray.origin)).abs())
}

/// Follows `ray` to the opposite side of the table and reflects it there.
pub fn next_bounce(e: &Ellipse, ray: &Ray) -> Result<Ray> {
    let (a2, b2) = (e.a * e.a, e.b * e.b);
    let p = ray.origin;
    let v = ray.direction;
    let grad = e.gradient(p);
    let cos_normal = v.dot(grad) / grad.norm();
    if cos_normal.abs() < 1e-12 {
        return Err(BilliardError::DegenerateChord);
    }
    if cos_normal > 0.0 {
        // Leaving the table.
        return Err(BilliardError::BadDirection);
    }
    // f(p + s v) = 1  ⇔  A s² + B s + C = 0 with C ≈ 0 (s ≈ 0 is the origin).
    let qa = v.x * v.x / a2 + v.y * v.y / b2;
    let qb = 2.0 * (p.x * v.x / a2 + p.y * v.y / b2);
    let qc = e.implicit(p) - 1.0;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc <= 0.0 {
        return Err(BilliardError::DegenerateChord);
    }
    // qb < 0, so q is the large-magnitude combination; the near root is qc/q.
    let q = -0.5 * (qb - disc.sqrt());
    let s = q / qa;
    let landing = e.project(p + v * s);
    let n = e.outward_normal(landing);
    let direction = reflect(v, n)
        .normalized()
        .ok_or(BilliardError::BadDirection)?;
    Ok(Ray {
        origin: landing,
        direction,
    })
}

/// The `n` successive bounces after `ray`; element `i` leaves bounce `i + 1`.
pub fn trajectory(e: &Ellipse, ray: &Ray, n: usize) -> Result<Vec<Ray>> {
    let mut out = Vec::with_capacity(n);
    let mut current = *ray;
    for _ in 0..n {
        current = next_bounce(e, &current)?;
        out.push(current);
    }
    Ok(out)
}

/// Which kind of confocal conic a chord is tangent to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CausticBranch {
    Ellipse,
    Hyperbola,
}

impl CausticBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            CausticBranch::Ellipse => "ellipse",
            CausticBranch::Hyperbola => "hyperbola",
        }
    }
}

/// Parameter `λ` of the confocal conic `x²/(a² - λ) + y²/(b² - λ) = 1`
/// tangent to the line through `p` and `q`.
///
/// With the line written `ux + vy = 1`, `λ = (a²u² + b²v² - 1)/(u² + v²)`.
pub fn confocal_caustic_parameter(e: &Ellipse, p: Point2, q: Point2) -> Result<f64> {
    let det = p.cross(q);
    if det.abs() <= 1e-12 * p.norm() * q.norm() || !det.is_finite() {
        return Err(BilliardError::CentralChord);
    }
    let u = (q.y - p.y) / det;
    let v = (p.x - q.x) / det;
    let (a2, b2) = (e.a * e.a, e.b * e.b);
    Ok((a2 * u * u + b2 * v * v - 1.0) / (u * u + v * v))
}

pub fn caustic_branch(e: &Ellipse, lambda: f64) -> CausticBranch {
    if lambda < e.b * e.b {
        CausticBranch::Ellipse
    } else {
        CausticBranch::Hyperbola
    }
}

/// Whether the line through `p` and `q` crosses the open segment between the
/// foci. For a chord of the table this is the hyperbolic-caustic regime.
pub fn crosses_focal_segment(e: &Ellipse, p: Point2, q: Point2) -> bool {
    let dy = p.y - q.y;
    if dy == 0.0 {
        return false;
    }
    let x0 = p.x + (q.x - p.x) * (p.y / dy);
    let c = ((e.a - e.b) * (e.a + e.b)).sqrt();
    x0.abs() < c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e21() -> Ellipse {
        Ellipse::new(2.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_circle_and_inverted_axes() {
        assert!(Ellipse::new(1.0, 1.0).is_err());
        assert!(Ellipse::new(1.0, 2.0).is_err());
        assert!(Ellipse::new(2.0, 0.0).is_err());
        assert!(Ellipse::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn constants_for_two_to_one() {
        let k = e21().constants();
        assert!((k.c2 - 3.0).abs() < 1e-15);
        assert!((k.delta - 13f64.sqrt()).abs() < 1e-15);
        assert!((k.gamma - 0.4956592188330807).abs() < 1e-12);
        assert!((k.perimeter - 8.530841645649005).abs() < 1e-12);
        assert!((k.caustic_a - 1.7370341836426595).abs() < 1e-12);
        assert!((k.caustic_b - 0.13148290817867028).abs() < 1e-12);
        assert!((k.r_star - 2.0175151838278675).abs() < 1e-12);
    }

    #[test]
    fn rationalized_and_printed_forms_agree() {
        for &(a, b) in &[
            (1.1, 1.0),
            (1.25, 1.0),
            (1.5, 1.0),
            (2.0, 1.0),
            (3.0, 1.0),
            (7.0, 2.0),
        ] {
            let e = Ellipse::new(a, b).unwrap();
            let (s, p) = (billiard_constants(&e), printed_constants(&e));
            for (x, y) in [
                (s.gamma, p.gamma),
                (s.perimeter, p.perimeter),
                (s.caustic_a, p.caustic_a),
                (s.caustic_b, p.caustic_b),
                (s.r_star, p.r_star),
            ] {
                assert!(
                    (x - y).abs() <= 1e-12 * y.abs(),
                    "a/b = {}: {x} vs {y}",
                    a / b
                );
            }
            assert!((s.r_star * s.gamma - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gamma_limits() {
        let near = Ellipse::new(1.0 + 1e-6, 1.0).unwrap();
        assert!((near.constants().gamma - 3f64.sqrt() / 2.0).abs() < 1e-5);
        let long = Ellipse::new(100.0, 1.0).unwrap();
        assert!(long.constants().gamma < 0.01);
    }

    #[test]
    fn constant_ordering() {
        for &(a, b) in &[(1.01, 1.0), (2.0, 1.0), (40.0, 3.0)] {
            let e = Ellipse::new(a, b).unwrap();
            let k = e.constants();
            assert!(b * b < k.delta && k.delta < a * a);
            assert!(k.caustic_a > k.caustic_b && k.caustic_b > 0.0);
            assert!(k.r_star > a);
            assert!(k.gamma > 0.0 && k.perimeter > 0.0);
        }
    }

    #[test]
    fn gradient_on_axes() {
        let e = e21();
        assert_eq!(e.gradient(Point2::new(2.0, 0.0)), Point2::new(1.0, 0.0));
        assert_eq!(e.gradient(Point2::new(0.0, 1.0)), Point2::new(0.0, 2.0));
    }

    #[test]
    fn gradient_matches_central_differences() {
        let e = e21();
        let p = Point2::new(2f64.sqrt(), 0.5f64.sqrt());
        let h = 1e-6;
        let fd = Point2::new(
            (e.implicit(p + Point2::new(h, 0.0)) - e.implicit(p - Point2::new(h, 0.0))) / (2.0 * h),
            (e.implicit(p + Point2::new(0.0, h)) - e.implicit(p - Point2::new(0.0, h))) / (2.0 * h),
        );
        assert!((fd - e.gradient(p)).norm() < 1e-8);
    }

    #[test]
    fn joachimsthal_at_major_vertex() {
        let e = e21();
        let cos_alpha = 0.9913184376661614;
        let ray = Ray::from_exit_angle(
            &e,
            Point2::new(2.0, 0.0),
            cos_alpha,
            (1.0 - cos_alpha.powi(2)).sqrt(),
        )
        .unwrap();
        assert!((joachimsthal(&e, &ray).unwrap() - 0.4956592188330807).abs() < 1e-12);
    }

    #[test]
    fn joachimsthal_equilateral_chord_in_near_circle() {
        let e = Ellipse::new(1.0 + 1e-9, 1.0).unwrap();
        let p = Point2::new(e.a(), 0.0);
        let target = Point2::new(
            (2.0 * std::f64::consts::PI / 3.0).cos(),
            (2.0 * std::f64::consts::PI / 3.0).sin(),
        );
        let ray = Ray::new(&e, p, target - p).unwrap();
        assert!((joachimsthal(&e, &ray).unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-8);
    }

    #[test]
    fn joachimsthal_rejects_interior_origin() {
        let ray = Ray {
            origin: Point2::new(0.5, 0.0),
            direction: Point2::new(1.0, 0.0),
        };
        assert!(matches!(
            joachimsthal(&e21(), &ray),
            Err(BilliardError::OffBoundary { .. })
        ));
    }

    #[test]
    fn major_axis_two_periodic() {
        let e = e21();
        let ray = Ray::new(&e, Point2::new(2.0, 0.0), Point2::new(-1.0, 0.0)).unwrap();
        let next = next_bounce(&e, &ray).unwrap();
        assert!((next.origin - Point2::new(-2.0, 0.0)).norm() < 1e-15);
        assert!((next.direction - Point2::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn circle_chord_lands_at_120_degrees() {
        let e = Ellipse::new(1.0 + 1e-9, 1.0).unwrap();
        let p = Point2::new(e.a(), 0.0);
        let target = Point2::new(-0.5, 3f64.sqrt() / 2.0);
        let ray = Ray::new(&e, p, target - p).unwrap();
        let next = next_bounce(&e, &ray).unwrap();
        assert!((next.origin - target).norm() < 1e-8);
    }

    #[test]
    fn tangent_and_outward_directions_rejected() {
        let e = e21();
        let p = Point2::new(2.0, 0.0);
        let tangent = Ray::new(&e, p, Point2::new(0.0, 1.0)).unwrap();
        assert_eq!(
            next_bounce(&e, &tangent),
            Err(BilliardError::DegenerateChord)
        );
        let outward = Ray::new(&e, p, Point2::new(1.0, 0.3)).unwrap();
        assert_eq!(next_bounce(&e, &outward), Err(BilliardError::BadDirection));
    }

    #[test]
    fn reflection_is_an_involution() {
        let n = Point2::new(0.6, 0.8);
        let v = Point2::new(-0.3, 0.953_939_201_416_945_6);
        let twice = reflect(reflect(v, n), n);
        assert!((twice - v).norm() < 1e-14);
    }

    #[test]
    fn caustic_parameter_of_vertical_tangent() {
        let e = e21();
        let k = e.constants();
        let x = k.caustic_a;
        let y = (1.0 - (x / 2.0).powi(2)).sqrt();
        let lambda = confocal_caustic_parameter(&e, Point2::new(x, y), Point2::new(x, -y)).unwrap();
        assert!((lambda - (4.0 - x * x)).abs() < 1e-12);
        assert!((1.0 - lambda - k.caustic_b.powi(2)).abs() < 1e-12);
        assert_eq!(caustic_branch(&e, lambda), CausticBranch::Ellipse);
        assert!((k.caustic_lambda(&e) - lambda).abs() < 1e-12);
    }

    #[test]
    fn central_chord_rejected() {
        let e = e21();
        assert_eq!(
            confocal_caustic_parameter(&e, Point2::new(2.0, 0.0), Point2::new(-2.0, 0.0)),
            Err(BilliardError::CentralChord)
        );
    }

    #[test]
    fn poncelet_sum_orientation() {
        let e = e21();
        let k = e.constants();
        assert!((k.poncelet_sum(&e) - 1.0).abs() < 1e-12);
        assert!((k.inverted_poncelet_sum(&e) - 1.0).abs() > 1.0);
    }

    #[test]
    fn near_circle_flag() {
        assert!(Ellipse::new(1.0000001, 1.0).unwrap().is_ill_conditioned());
        assert!(!Ellipse::new(1.1, 1.0).unwrap().is_ill_conditioned());
    }
}
