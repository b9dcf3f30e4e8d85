//! Conserved quantities of the 3-periodic family: closed forms, sweeps, and
//! per-invariant conservation reports; loci of triangle centers.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::ellipse::{confocal_caustic_parameter, joachimsthal, Ellipse, Ray};
use crate::error::{BilliardError, Result};
use crate::orbit::{closure_residual, orbit_at_parameter, Orbit};
use crate::point::Point2;
use crate::triangle::{self, CenterKind, TriangleMetrics};

/// Default relative tolerance for conservation reports.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `r/R = 2(δ - b²)(a² - δ)/(a² - b²)²`, evaluated as `2a²b²/((δ + b²)(a² + δ))`.
pub fn rovr_closed_form(e: &Ellipse) -> f64 {
    let (a2, b2) = (e.a() * e.a(), e.b() * e.b());
    let delta = e.constants().delta;
    2.0 * a2 * b2 / ((delta + b2) * (a2 + delta))
}

/// The same ratio in its unrationalized form.
pub fn rovr_printed(e: &Ellipse) -> f64 {
    let (a2, b2) = (e.a() * e.a(), e.b() * e.b());
    let delta = e.constants().delta;
    2.0 * (delta - b2) * (a2 - delta) / ((a2 - b2) * (a2 - b2))
}

/// Area of the caustic over the area of the table, `a_c b_c / (a b)`.
pub fn caustic_area_ratio(e: &Ellipse) -> f64 {
    let k = e.constants();
    k.caustic_a * k.caustic_b / (e.a() * e.b())
}

/// Smallest and largest inradius and circumradius over the family; the
/// minima occur at the sideways isosceles (`t = 0`), the maxima upright (`t = π/2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalRadii {
    pub r_min: f64,
    #[serde(rename = "R_min")]
    pub big_r_min: f64,
    pub r_max: f64,
    #[serde(rename = "R_max")]
    pub big_r_max: f64,
}

pub fn extremal_radii(e: &Ellipse) -> ExtremalRadii {
    let (a, b) = (e.a(), e.b());
    let (a2, b2) = (a * a, b * b);
    let delta = e.constants().delta;
    ExtremalRadii {
        // b²(δ - b²)/(c²a) and a²(a² - δ)/(c²b), rationalized.
        r_min: a * b2 / (delta + b2),
        big_r_min: (a2 + delta) / (2.0 * a),
        r_max: a2 * b / (a2 + delta),
        big_r_max: (b2 + delta) / (2.0 * b),
    }
}

/// Extremes of `r` and `R` observed on a sweep, with the parameters where they occur.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweptExtremes {
    pub r_min: (f64, f64),
    #[serde(rename = "R_min")]
    pub big_r_min: (f64, f64),
    pub r_max: (f64, f64),
    #[serde(rename = "R_max")]
    pub big_r_max: (f64, f64),
}

/// Scans `n` uniform parameters plus the four axis-vertex configurations.
/// Each entry is `(value, t)`.
pub fn sweep_extremes(e: &Ellipse, n: usize) -> Result<SweptExtremes> {
    if n < 3 {
        return Err(BilliardError::TooFewSamples { needed: 3, got: n });
    }
    let ts = (0..n)
        .map(|k| TAU * k as f64 / n as f64)
        .chain([0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2]);
    let mut out = SweptExtremes {
        r_min: (f64::INFINITY, 0.0),
        big_r_min: (f64::INFINITY, 0.0),
        r_max: (f64::NEG_INFINITY, 0.0),
        big_r_max: (f64::NEG_INFINITY, 0.0),
    };
    for t in ts {
        let m = orbit_at_parameter(e, t)?.triangle().metrics()?;
        if m.inradius < out.r_min.0 {
            out.r_min = (m.inradius, t);
        }
        if m.inradius > out.r_max.0 {
            out.r_max = (m.inradius, t);
        }
        if m.circumradius < out.big_r_min.0 {
            out.big_r_min = (m.circumradius, t);
        }
        if m.circumradius > out.big_r_max.0 {
            out.big_r_max = (m.circumradius, t);
        }
    }
    Ok(out)
}

/// Everything the reports need from one orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitSample {
    pub orbit: Orbit,
    pub metrics: TriangleMetrics,
    pub excentral_area: f64,
    pub excentral_cosine_product: f64,
    pub extouch_area: f64,
    /// Largest `|(x/a_c)² + (y/b_c)² - 1|` over the extouch vertices.
    pub extouch_caustic_residual: f64,
    pub mittenpunkt: Point2,
    pub excentral_symmedian: Point2,
    pub cosine_circle_center: Point2,
    pub cosine_circle_radius: f64,
    pub cosine_circle_spread: f64,
    /// Joachimsthal quantity of the launch `p1 → p2`.
    pub joachimsthal: f64,
    /// Confocal parameter of each side.
    pub side_lambdas: [f64; 3],
    pub closure: f64,
}

pub fn sample_orbit(e: &Ellipse, orbit: &Orbit) -> Result<OrbitSample> {
    let k = e.constants();
    let tri = orbit.triangle();
    let metrics = tri.metrics()?;
    let exc = triangle::excentral(&tri)?;
    let exc_metrics = exc.metrics()?;
    let ext = triangle::extouch(&tri)?;
    let cosine = triangle::cosine_circle(&exc)?;
    let launch = Ray::new(e, orbit.p1, orbit.p2 - orbit.p1)?;
    let mut side_lambdas = [0.0; 3];
    for (slot, (p, q)) in side_lambdas.iter_mut().zip(orbit.sides()) {
        *slot = confocal_caustic_parameter(e, p, q)?;
    }
    Ok(OrbitSample {
        orbit: *orbit,
        metrics,
        excentral_area: exc_metrics.area,
        excentral_cosine_product: exc_metrics.angles.iter().map(|t| t.cos().abs()).product(),
        extouch_area: ext.area(),
        extouch_caustic_residual: ext
            .vertices()
            .iter()
            .map(|&p| k.caustic_residual(p).abs())
            .fold(0.0, f64::max),
        mittenpunkt: tri.center(CenterKind::X9)?,
        excentral_symmedian: exc.center(CenterKind::X6)?,
        cosine_circle_center: cosine.circle.center,
        cosine_circle_radius: cosine.circle.radius,
        cosine_circle_spread: cosine.spread,
        joachimsthal: joachimsthal(e, &launch)?,
        side_lambdas,
        closure: closure_residual(e, orbit),
    })
}

/// `n` uniformly spaced samples of the family.
pub fn sample_family(e: &Ellipse, n: usize) -> Result<Vec<OrbitSample>> {
    (0..n)
        .map(|k| orbit_at_parameter(e, TAU * k as f64 / n as f64).and_then(|o| sample_orbit(e, &o)))
        .collect()
}

/// Conservation summary of one claimed invariant over a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub name: &'static str,
    pub closed_form: f64,
    pub samples: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// `(max - min) / max(|mean|, scale)`.
    pub spread_rel: f64,
    /// Magnitude that stands in for `|mean|` and `|closed_form|` when those vanish.
    pub scale: f64,
    /// Strict lower bound every sample must exceed, if the claim has one.
    pub lower_bound: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub ill_conditioned: bool,
}

impl InvariantReport {
    pub fn from_values(
        name: &'static str,
        closed_form: f64,
        values: &[f64],
        tolerance: f64,
    ) -> Self {
        Self::build(
            name,
            closed_form,
            values,
            tolerance,
            f64::MIN_POSITIVE,
            None,
        )
    }

    fn build(
        name: &'static str,
        closed_form: f64,
        values: &[f64],
        tolerance: f64,
        scale: f64,
        lower_bound: Option<f64>,
    ) -> Self {
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = compensated_sum(values) / values.len() as f64;
        let spread_rel = (max - min) / mean.abs().max(scale);
        let within = (mean - closed_form).abs() < tolerance * closed_form.abs().max(scale);
        let bounded = lower_bound.is_none_or(|lb| min > lb);
        let pass =
            values.iter().all(|v| v.is_finite()) && spread_rel < tolerance && within && bounded;
        Self {
            name,
            closed_form,
            samples: values.len(),
            min,
            max,
            mean,
            spread_rel,
            scale,
            lower_bound,
            tolerance,
            pass,
            ill_conditioned: false,
        }
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<32} closed={:<22.15e} mean={:<22.15e} spread={:.2e} {}{}",
            self.name,
            self.closed_form,
            self.mean,
            self.spread_rel,
            if self.pass { "pass" } else { "FAIL" },
            if self.ill_conditioned {
                " (ill-conditioned)"
            } else {
                ""
            }
        )
    }
}

/// Neumaier summation.
pub fn compensated_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// One report per conserved quantity, over `n_samples` uniformly spaced orbits.
pub fn invariant_report(e: &Ellipse, n_samples: usize, tol: f64) -> Result<Vec<InvariantReport>> {
    if n_samples < 3 {
        return Err(BilliardError::TooFewSamples {
            needed: 3,
            got: n_samples,
        });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(BilliardError::BadTolerance(tol));
    }
    let samples = sample_family(e, n_samples)?;
    Ok(reports_from_samples(e, &samples, tol))
}

pub fn reports_from_samples(
    e: &Ellipse,
    samples: &[OrbitSample],
    tol: f64,
) -> Vec<InvariantReport> {
    let k = e.constants();
    let rovr = rovr_closed_form(e);
    let a = e.a();
    let col = |f: &dyn Fn(&OrbitSample) -> f64| samples.iter().map(f).collect::<Vec<_>>();
    let rel = |name, cf, values: Vec<f64>| {
        InvariantReport::build(name, cf, &values, tol, f64::MIN_POSITIVE, None)
    };
    // Quantities whose closed form is zero are measured against a length or unit scale.
    let abs = |name, values: Vec<f64>, scale| {
        InvariantReport::build(name, 0.0, &values, tol, scale, None)
    };

    let mut reports = vec![
        rel("perimeter", k.perimeter, col(&|s| s.metrics.perimeter)),
        rel("joachimsthal", k.gamma, col(&|s| s.joachimsthal)),
        rel(
            "caustic_lambda",
            k.caustic_lambda(e),
            samples.iter().flat_map(|s| s.side_lambdas).collect(),
        ),
        rel("r_over_R", rovr, col(&|s| s.metrics.r_over_r())),
        rel("cosine_sum", 1.0 + rovr, col(&|s| s.metrics.cosine_sum())),
        rel(
            "excentral_cosine_product",
            rovr / 4.0,
            col(&|s| s.excentral_cosine_product),
        ),
        rel(
            "orbit_to_excentral_area",
            rovr / 2.0,
            col(&|s| s.metrics.area / s.excentral_area),
        ),
        rel(
            "excentral_to_orbit_area",
            2.0 / rovr,
            col(&|s| s.excentral_area / s.metrics.area),
        ),
        rel(
            "excentral_to_extouch_area",
            (2.0 / rovr).powi(2),
            col(&|s| s.excentral_area / s.extouch_area),
        ),
        rel(
            "caustic_to_billiard_area",
            caustic_area_ratio(e),
            col(&|s| s.metrics.area / s.excentral_area),
        ),
        rel(
            "gamma_perimeter_minus_4",
            rovr,
            col(&|s| k.gamma * s.metrics.perimeter - 4.0),
        ),
        rel(
            "cosine_sum_vs_gamma_perimeter",
            k.gamma * k.perimeter - 3.0,
            col(&|s| s.metrics.cosine_sum()),
        ),
        rel(
            "r_star_from_perimeter",
            k.r_star,
            col(&|s| s.metrics.perimeter / (s.metrics.r_over_r() + 4.0)),
        ),
        InvariantReport::build(
            "cosine_circle_radius",
            k.r_star,
            &col(&|s| s.cosine_circle_radius),
            tol,
            f64::MIN_POSITIVE,
            Some(a),
        ),
        abs(
            "cosine_circle_center",
            col(&|s| s.cosine_circle_center.norm()),
            a,
        ),
        abs("mittenpunkt_offset", col(&|s| s.mittenpunkt.norm()), a),
        abs(
            "excentral_symmedian_vs_mittenpunkt",
            col(&|s| s.excentral_symmedian.distance(s.mittenpunkt)),
            a,
        ),
        abs(
            "extouch_on_caustic",
            col(&|s| s.extouch_caustic_residual),
            1.0,
        ),
        abs("closure", col(&|s| s.closure), a),
    ];
    let flag = e.is_ill_conditioned();
    for r in &mut reports {
        r.ill_conditioned = flag;
    }
    reports
}

/// What a locus follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LocusKind {
    Center(CenterKind),
    /// All three incircle touch points of each orbit.
    Intouch,
}

impl fmt::Display for LocusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocusKind::Center(k) => write!(f, "{k}"),
            LocusKind::Intouch => f.write_str("intouch"),
        }
    }
}

impl FromStr for LocusKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "intouch" | "intouch-vertex" | "intouchpoint" => Ok(LocusKind::Intouch),
            other => other.parse().map(LocusKind::Center),
        }
    }
}

pub fn locus_trace(e: &Ellipse, kind: LocusKind, n: usize) -> Result<Vec<Point2>> {
    if n < 12 {
        return Err(BilliardError::TooFewSamples { needed: 12, got: n });
    }
    let mut out = Vec::with_capacity(if kind == LocusKind::Intouch { 3 * n } else { n });
    for i in 0..n {
        let tri = orbit_at_parameter(e, TAU * i as f64 / n as f64)?.triangle();
        match kind {
            LocusKind::Center(c) => out.push(tri.center(c)?),
            LocusKind::Intouch => out.extend(triangle::intouch(&tri)?.vertices()),
        }
    }
    Ok(out)
}

/// Default finite-difference step for [`rovr_inflection`].
pub const INFLECTION_STEP: f64 = 1e-4;

/// Aspect ratio where `r/R`, as a function of `a/b`, changes concavity.
pub fn rovr_inflection(ab_lo: f64, ab_hi: f64) -> Result<f64> {
    rovr_inflection_with_step(ab_lo, ab_hi, INFLECTION_STEP)
}

pub fn rovr_inflection_with_step(ab_lo: f64, ab_hi: f64, step: f64) -> Result<f64> {
    if !(ab_lo > 1.0 && ab_hi > ab_lo && ab_hi.is_finite()) || ab_lo - step <= 1.0 {
        return Err(BilliardError::BadBracket {
            lo: ab_lo,
            hi: ab_hi,
        });
    }
    let rovr = |k: f64| rovr_closed_form(&Ellipse::new(k, 1.0).expect("k > 1"));
    let second = |k: f64| (rovr(k + step) - 2.0 * rovr(k) + rovr(k - step)) / (step * step);

    // Coarse scan for the first sign change, then bisection.
    const CELLS: usize = 256;
    let width = (ab_hi - ab_lo) / CELLS as f64;
    let mut lo = ab_lo;
    let mut f_lo = second(lo);
    let mut bracket = None;
    for i in 1..=CELLS {
        let hi = if i == CELLS {
            ab_hi
        } else {
            ab_lo + width * i as f64
        };
        let f_hi = second(hi);
        if f_lo.signum() != f_hi.signum() {
            bracket = Some((lo, hi, f_lo));
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    let (mut lo, mut hi, f_lo) = bracket.ok_or(BilliardError::InflectionNotFound {
        lo: ab_lo,
        hi: ab_hi,
    })?;
    while hi - lo > 1e-11 {
        let mid = 0.5 * (lo + hi);
        if second(mid).signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e21() -> Ellipse {
        Ellipse::new(2.0, 1.0).unwrap()
    }

    #[test]
    fn rovr_values() {
        assert!((rovr_closed_form(&e21()) - 0.22839030607109917).abs() < 1e-14);
        assert!((rovr_printed(&e21()) - rovr_closed_form(&e21())).abs() < 1e-14);
        let near = Ellipse::new(1.0 + 1e-6, 1.0).unwrap();
        assert!((rovr_closed_form(&near) - 0.5).abs() < 1e-5);
    }

    #[test]
    fn extremal_radii_two_to_one() {
        let x = extremal_radii(&e21());
        assert!((x.r_min - 0.4342585459106649).abs() < 1e-13);
        assert!((x.big_r_min - 1.9013878188659974).abs() < 1e-13);
        assert!((x.r_max - 0.5259316327146811).abs() < 1e-13);
        assert!((x.big_r_max - 2.302775637731995).abs() < 1e-13);
    }

    #[test]
    fn caustic_ratio_two_to_one() {
        assert!((caustic_area_ratio(&e21()) - 0.11419515303554964).abs() < 1e-14);
        assert!((caustic_area_ratio(&e21()) - rovr_closed_form(&e21()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn compensated_sum_recovers_cancelled_terms() {
        assert_eq!(compensated_sum(&[1.0, 1e100, 1.0, -1e100]), 2.0);
    }

    #[test]
    fn report_rejects_bad_arguments() {
        assert!(matches!(
            invariant_report(&e21(), 2, 1e-9),
            Err(BilliardError::TooFewSamples { .. })
        ));
        assert!(matches!(
            invariant_report(&e21(), 10, 0.0),
            Err(BilliardError::BadTolerance(_))
        ));
    }

    #[test]
    fn zero_closed_form_uses_scale() {
        let r = InvariantReport::build("x", 0.0, &[1e-16, 3e-16], 1e-9, 2.0, None);
        assert!(r.pass);
        let r = InvariantReport::build("x", 0.0, &[1e-16, 3e-6], 1e-9, 2.0, None);
        assert!(!r.pass);
    }

    #[test]
    fn lower_bound_enforced() {
        let r = InvariantReport::build("x", 1.0, &[1.0, 1.0], 1e-9, f64::MIN_POSITIVE, Some(1.0));
        assert!(!r.pass);
    }

    #[test]
    fn locus_needs_twelve_samples() {
        assert!(locus_trace(&e21(), LocusKind::Intouch, 11).is_err());
        assert_eq!(
            locus_trace(&e21(), LocusKind::Intouch, 12).unwrap().len(),
            36
        );
    }

    #[test]
    fn locus_kind_parse() {
        assert_eq!(
            "X1".parse::<LocusKind>().unwrap(),
            LocusKind::Center(CenterKind::X1)
        );
        assert_eq!("intouch".parse::<LocusKind>().unwrap(), LocusKind::Intouch);
        assert!("X7".parse::<LocusKind>().is_err());
    }

    #[test]
    fn inflection_bracket_errors() {
        assert!(matches!(
            rovr_inflection(0.9, 2.0),
            Err(BilliardError::BadBracket { .. })
        ));
        assert!(matches!(
            rovr_inflection(2.9, 3.0),
            Err(BilliardError::InflectionNotFound { .. })
        ));
    }
}
