//! General-conic least squares by algebraic residual.
//!
//! Fits `Ax² + Bxy + Cy² + Dx + Ey + F = 0` with `‖(A..F)‖ = 1` as the right
//! singular vector of the design matrix for its smallest singular value.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{BilliardError, Result};
use crate::point::Point2;

/// Ratio to the largest singular value below which another singular value
/// counts as zero, i.e. the points admit a pencil of conics.
const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicKind {
    Ellipse,
    Hyperbola,
    Parabola,
    Degenerate,
}

impl ConicKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConicKind::Ellipse => "ellipse",
            ConicKind::Hyperbola => "hyperbola",
            ConicKind::Parabola => "parabola",
            ConicKind::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConicFit {
    /// `[A, B, C, D, E, F]`, unit Euclidean norm.
    pub coefficients: [f64; 6],
    /// RMS of `Ax² + Bxy + Cy² + Dx + Ey + F` over the input points.
    pub residual_rms: f64,
    pub kind: ConicKind,
}

impl ConicFit {
    pub fn evaluate(&self, p: Point2) -> f64 {
        let [a, b, c, d, e, f] = self.coefficients;
        a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f
    }

    /// `B² - 4AC`.
    pub fn discriminant(&self) -> f64 {
        let [a, b, c, ..] = self.coefficients;
        b * b - 4.0 * a * c
    }
}

pub fn conic_fit(points: &[Point2]) -> Result<ConicFit> {
    if points.len() < 6 {
        return Err(BilliardError::TooFewPoints {
            needed: 6,
            got: points.len(),
        });
    }
    let design = DMatrix::from_fn(points.len(), 6, |i, j| {
        let p = points[i];
        match j {
            0 => p.x * p.x,
            1 => p.x * p.y,
            2 => p.y * p.y,
            3 => p.x,
            4 => p.y,
            _ => 1.0,
        }
    });
    let svd = design.clone().svd(false, true);
    let v_t = svd.v_t.as_ref().expect("right singular vectors requested");
    let sigma = &svd.singular_values;
    let mut order: Vec<usize> = (0..sigma.len()).collect();
    order.sort_by(|&i, &j| sigma[i].total_cmp(&sigma[j]));
    let smallest = order[0];
    let largest = sigma[order[order.len() - 1]];

    let mut coefficients = [0.0; 6];
    for (j, c) in coefficients.iter_mut().enumerate() {
        *c = v_t[(smallest, j)];
    }
    let norm = coefficients.iter().map(|c| c * c).sum::<f64>().sqrt();
    // Sign convention: first significant coefficient positive.
    let sign = coefficients
        .iter()
        .find(|c| c.abs() > 1e-12)
        .map_or(1.0, |c| c.signum());
    for c in &mut coefficients {
        *c *= sign / norm;
    }

    let residual = &design * nalgebra::DVector::from_column_slice(&coefficients);
    let residual_rms = (residual.norm_squared() / points.len() as f64).sqrt();

    let pencil = order.len() > 1 && sigma[order[1]] <= RANK_TOL * largest;
    let kind = if pencil || !largest.is_finite() || largest == 0.0 {
        ConicKind::Degenerate
    } else {
        classify(&coefficients)
    };
    Ok(ConicFit {
        coefficients,
        residual_rms,
        kind,
    })
}

fn classify(c: &[f64; 6]) -> ConicKind {
    let [a, b, cc, d, e, f] = *c;
    // det of the symmetric 3×3 conic matrix.
    let (h, g, k) = (0.5 * b, 0.5 * d, 0.5 * e);
    let det = a * (cc * f - k * k) - h * (h * f - k * g) + g * (h * k - cc * g);
    if det.abs() < 1e-12 {
        return ConicKind::Degenerate;
    }
    let disc = b * b - 4.0 * a * cc;
    if disc < -1e-12 {
        ConicKind::Ellipse
    } else if disc > 1e-12 {
        ConicKind::Hyperbola
    } else {
        ConicKind::Parabola
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn ring(n: usize, a: f64, b: f64) -> Vec<Point2> {
        (0..n)
            .map(|k| TAU * k as f64 / n as f64)
            .map(|t| Point2::new(a * t.cos(), b * t.sin()))
            .collect()
    }

    #[test]
    fn exact_ellipse() {
        let fit = conic_fit(&ring(360, 3.0, 2.0)).unwrap();
        assert!(fit.residual_rms < 1e-12);
        assert_eq!(fit.kind, ConicKind::Ellipse);
        // Proportional to (1/9, 0, 1/4, 0, 0, -1).
        let [a, b, c, d, e, f] = fit.coefficients;
        assert!(b.abs() < 1e-12 && d.abs() < 1e-12 && e.abs() < 1e-12);
        assert!((a / c - 4.0 / 9.0).abs() < 1e-10);
        assert!((f / c + 4.0).abs() < 1e-10);
    }

    #[test]
    fn exact_hyperbola() {
        let pts: Vec<_> = (1..40)
            .map(|k| 0.1 * k as f64)
            .flat_map(|x| [Point2::new(x, 1.0 / x), Point2::new(-x, -1.0 / x)])
            .collect();
        let fit = conic_fit(&pts).unwrap();
        assert!(fit.residual_rms < 1e-12);
        assert_eq!(fit.kind, ConicKind::Hyperbola);
    }

    #[test]
    fn too_few_points() {
        assert_eq!(
            conic_fit(&ring(5, 2.0, 1.0)),
            Err(BilliardError::TooFewPoints { needed: 6, got: 5 })
        );
    }

    #[test]
    fn collinear_points_are_degenerate() {
        let pts: Vec<_> = (0..20)
            .map(|k| Point2::new(k as f64, 2.0 * k as f64 - 1.0))
            .collect();
        assert_eq!(conic_fit(&pts).unwrap().kind, ConicKind::Degenerate);
    }

    #[test]
    fn crossing_lines_fit_exactly() {
        let mut pts: Vec<_> = (1..5).map(|k| Point2::new(k as f64, k as f64)).collect();
        pts.extend((1..4).map(|k| Point2::new(k as f64, -(k as f64))));
        let fit = conic_fit(&pts).unwrap();
        assert!(fit.residual_rms < 1e-10);
        // Classification of a line pair is recorded, not pinned.
        assert!(matches!(
            fit.kind,
            ConicKind::Degenerate | ConicKind::Hyperbola
        ));
    }
}
