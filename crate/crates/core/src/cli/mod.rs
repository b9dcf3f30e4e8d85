//! The `ebill` command line.
//!
//! Exit codes: 0 when everything passes, 1 for usage errors, 2 when an
//! invariant misses its tolerance, 3 when the only problem is an
//! ill-conditioned (nearly circular) table.

pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::conic_fit::conic_fit;
use crate::ellipse::{
    caustic_branch, confocal_caustic_parameter, crosses_focal_segment, joachimsthal, trajectory,
    Ellipse, Ray,
};
use crate::error::BilliardError;
use crate::invariants::{self, LocusKind, DEFAULT_TOLERANCE};
use crate::orbit::orbit_at_parameter;
use crate::point::Point2;
use crate::triangle::CenterKind;

use output::{Cell, Record, Table};

/// Locus fits with an RMS algebraic residual above this multiple of `a`
/// are labelled non-conic.
pub const NON_CONIC_THRESHOLD: f64 = 1e-6;

/// Tolerance on swept versus closed-form extremal radii.
pub const EXTREMES_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "ebill",
    version,
    about = "Three-periodic orbits of the elliptic billiard"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,

    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, clap::Args)]
pub struct RunConfig {
    /// Semi-major axis.
    #[arg(
        long,
        global = true,
        default_value_t = 2.0,
        allow_negative_numbers = true
    )]
    pub a: f64,
    /// Semi-minor axis.
    #[arg(
        long,
        global = true,
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub b: f64,
    /// Number of orbits (or bounces) sampled.
    #[arg(long, global = true, default_value_t = 360, value_parser = clap::value_parser!(u64).range(3..))]
    pub samples: u64,
    /// Relative tolerance for conservation checks.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE, value_parser = positive_float)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed recorded with the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

fn positive_float(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("must be positive and finite".to_owned())
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// One orbit: vertices, metrics and triangle centers.
    Orbit {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t: f64,
    },
    /// Conservation report for every invariant of the family.
    Report,
    /// Locus of a triangle center (X1..X9) or of the intouch points, with a conic fit.
    Locus {
        #[arg(long)]
        kind: LocusKind,
    },
    /// Bounce points of a trajectory with Joachimsthal and caustic parameters.
    Trajectory {
        #[arg(long, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, allow_negative_numbers = true)]
        y0: f64,
        #[arg(long, allow_negative_numbers = true)]
        dx: f64,
        #[arg(long, allow_negative_numbers = true)]
        dy: f64,
        /// Number of bounces.
        #[arg(long, default_value_t = 50)]
        n: usize,
    },
    /// Extremal inradius and circumradius, closed form against a sweep.
    Extremes,
    /// Closed-form constants of the table.
    Constants,
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Usage,
    Failed,
    IllConditioned,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Usage => 1,
            Outcome::Failed => 2,
            Outcome::IllConditioned => 3,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Billiard(#[from] BilliardError),
    #[error("{message}")]
    Usage { message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Result of a subcommand before encoding.
pub struct Rendered {
    pub config: Record,
    pub table: Table,
    pub outcome: Outcome,
}

impl RunConfig {
    pub fn ellipse(&self) -> Result<Ellipse, CliError> {
        Ellipse::new(self.a, self.b).map_err(|e| CliError::Usage {
            message: e.to_string(),
        })
    }

    fn record(&self, command: &str) -> Record {
        let mut r = Record::default();
        r.push("command", command);
        r.push("a", self.a);
        r.push("b", self.b);
        r.push("samples", self.samples);
        r.push("tolerance", self.tolerance);
        r.push("seed", self.seed);
        r
    }
}

fn point_cells(row: &mut Vec<Cell>, p: Point2) {
    row.push(p.x.into());
    row.push(p.y.into());
}

/// Runs the parsed command and returns its table.
pub fn render(cli: &Cli) -> Result<Rendered, CliError> {
    let cfg = &cli.config;
    let e = cfg.ellipse()?;
    let n = cfg.samples as usize;
    let pass_or = |ok: bool| {
        if e.is_ill_conditioned() {
            Outcome::IllConditioned
        } else if ok {
            Outcome::Pass
        } else {
            Outcome::Failed
        }
    };
    Ok(match &cli.command {
        Command::Orbit { t } => {
            let mut config = cfg.record("orbit");
            config.push("t", *t);
            let o = orbit_at_parameter(&e, *t)?;
            let tri = o.triangle();
            let m = tri.metrics()?;
            let mut rec = Record::default();
            rec.push("t", o.t);
            rec.push("cos_alpha", o.cos_alpha);
            for (name, p) in [("p1", o.p1), ("p2", o.p2), ("p3", o.p3)] {
                rec.push(format!("{name}_x"), p.x);
                rec.push(format!("{name}_y"), p.y);
            }
            rec.push("s1", m.s1);
            rec.push("s2", m.s2);
            rec.push("s3", m.s3);
            rec.push("perimeter", m.perimeter);
            rec.push("area", m.area);
            rec.push("r", m.inradius);
            rec.push("R", m.circumradius);
            rec.push("r9", m.nine_point_radius);
            for kind in [
                CenterKind::X1,
                CenterKind::X2,
                CenterKind::X3,
                CenterKind::X5,
                CenterKind::X6,
                CenterKind::X9,
            ] {
                let c = tri.center(kind)?;
                rec.push(format!("{kind}_x"), c.x);
                rec.push(format!("{kind}_y"), c.y);
            }
            Rendered {
                config,
                table: Table::from_record(rec),
                outcome: pass_or(true),
            }
        }
        Command::Report => {
            let reports = invariants::invariant_report(&e, n, cfg.tolerance)?;
            let mut table = Table::new([
                "name",
                "closed_form",
                "samples",
                "min",
                "max",
                "mean",
                "spread_rel",
                "tolerance",
                "pass",
                "ill_conditioned",
            ]);
            for r in &reports {
                table.push(vec![
                    r.name.into(),
                    r.closed_form.into(),
                    r.samples.into(),
                    r.min.into(),
                    r.max.into(),
                    r.mean.into(),
                    r.spread_rel.into(),
                    r.tolerance.into(),
                    r.pass.into(),
                    r.ill_conditioned.into(),
                ]);
            }
            let k = e.constants();
            table.summary.push("poncelet_sum", k.poncelet_sum(&e));
            table
                .summary
                .push("inverted_poncelet_sum", k.inverted_poncelet_sum(&e));
            Rendered {
                config: cfg.record("report"),
                table,
                outcome: pass_or(reports.iter().all(|r| r.pass)),
            }
        }
        Command::Locus { kind } => {
            let mut config = cfg.record("locus");
            config.push("kind", kind.to_string());
            let points = invariants::locus_trace(&e, *kind, n)?;
            let per_sample = points.len() / n;
            let mut table = Table::new(["index", "t", "x", "y"]);
            for (i, p) in points.iter().enumerate() {
                let t = std::f64::consts::TAU * (i / per_sample) as f64 / n as f64;
                let mut row = vec![Cell::from(i), t.into()];
                point_cells(&mut row, *p);
                table.push(row);
            }
            let fit = conic_fit(&points)?;
            let centroid =
                points.iter().fold(Point2::ORIGIN, |acc, p| acc + *p) / points.len() as f64;
            let extent = points
                .iter()
                .map(|p| p.distance(centroid))
                .fold(0.0, f64::max);
            let classification = if extent <= 1e-10 * e.a() {
                "point"
            } else if fit.residual_rms > NON_CONIC_THRESHOLD * e.a() {
                "non-conic"
            } else {
                fit.kind.as_str()
            };
            let s = &mut table.summary;
            for (name, c) in ["A", "B", "C", "D", "E", "F"].iter().zip(fit.coefficients) {
                s.push(*name, c);
            }
            s.push("residual_rms", fit.residual_rms);
            s.push("conic_kind", fit.kind.as_str());
            s.push("classification", classification);
            s.push("max_distance_from_centroid", extent);
            Rendered {
                config,
                table,
                outcome: pass_or(true),
            }
        }
        Command::Trajectory {
            x0,
            y0,
            dx,
            dy,
            n: bounces,
        } => {
            let mut config = cfg.record("trajectory");
            for (k, v) in [("x0", x0), ("y0", y0), ("dx", dx), ("dy", dy)] {
                config.push(k, *v);
            }
            config.push("n", *bounces);
            let start = Point2::new(*x0, *y0);
            let ray = Ray::new(&e, start, Point2::new(*dx, *dy)).map_err(|err| match err {
                BilliardError::OffBoundary { .. } => {
                    let mut hint = start;
                    for _ in 0..8 {
                        hint = e.project(hint);
                    }
                    let hint = if hint.is_finite() && e.boundary_residual(hint) < 1e-9 {
                        format!(
                            "; nearest boundary point along the gradient is ({:.17}, {:.17})",
                            hint.x, hint.y
                        )
                    } else {
                        String::new()
                    };
                    CliError::Usage {
                        message: format!("{err}{hint}"),
                    }
                }
                other => CliError::Usage {
                    message: other.to_string(),
                },
            })?;
            let rays = trajectory(&e, &ray, *bounces)?;
            let mut table = Table::new([
                "bounce",
                "x",
                "y",
                "dx",
                "dy",
                "gamma",
                "lambda",
                "branch",
                "crosses_foci",
            ]);
            let mut gammas = Vec::with_capacity(rays.len());
            let mut lambdas = Vec::with_capacity(rays.len());
            let mut consistent = true;
            for (i, r) in rays.iter().enumerate() {
                let gamma = joachimsthal(&e, r)?;
                let ahead = r.origin + r.direction;
                let lambda = confocal_caustic_parameter(&e, r.origin, ahead)?;
                let branch = caustic_branch(&e, lambda);
                let crosses = crosses_focal_segment(&e, r.origin, ahead);
                consistent &= (branch == crate::ellipse::CausticBranch::Hyperbola) == crosses;
                gammas.push(gamma);
                lambdas.push(lambda);
                let mut row = vec![Cell::from(i + 1)];
                point_cells(&mut row, r.origin);
                point_cells(&mut row, r.direction);
                row.extend([
                    gamma.into(),
                    lambda.into(),
                    branch.as_str().into(),
                    crosses.into(),
                ]);
                table.push(row);
            }
            let drift = |v: &[f64]| v.iter().map(|x| (x - v[0]).abs()).fold(0.0, f64::max);
            let (gd, ld) = (drift(&gammas), drift(&lambdas));
            table.summary.push("gamma_drift", gd);
            table.summary.push("lambda_drift", ld);
            table.summary.push("branch_matches_foci_rule", consistent);
            let ok = gd < 1e-9 && ld < 1e-9 && consistent;
            Rendered {
                config,
                table,
                outcome: pass_or(ok),
            }
        }
        Command::Extremes => {
            let closed = invariants::extremal_radii(&e);
            let swept = invariants::sweep_extremes(&e, n)?;
            let mut table = Table::new(["name", "closed_form", "swept", "t", "abs_diff", "pass"]);
            let mut ok = true;
            for (name, cf, (value, t)) in [
                ("r_min", closed.r_min, swept.r_min),
                ("R_min", closed.big_r_min, swept.big_r_min),
                ("r_max", closed.r_max, swept.r_max),
                ("R_max", closed.big_r_max, swept.big_r_max),
            ] {
                let diff = (value - cf).abs();
                let pass = diff < EXTREMES_TOLERANCE;
                ok &= pass;
                table.push(vec![
                    name.into(),
                    cf.into(),
                    value.into(),
                    t.into(),
                    diff.into(),
                    pass.into(),
                ]);
            }
            Rendered {
                config: cfg.record("extremes"),
                table,
                outcome: pass_or(ok),
            }
        }
        Command::Constants => {
            let k = e.constants();
            let mut rec = Record::default();
            rec.push("a", e.a());
            rec.push("b", e.b());
            rec.push("c2", k.c2);
            rec.push("delta", k.delta);
            rec.push("gamma", k.gamma);
            rec.push("perimeter", k.perimeter);
            rec.push("caustic_a", k.caustic_a);
            rec.push("caustic_b", k.caustic_b);
            rec.push("r_star", k.r_star);
            rec.push("inverse_gamma", 1.0 / k.gamma);
            rec.push("r_over_R", invariants::rovr_closed_form(&e));
            rec.push("caustic_lambda", k.caustic_lambda(&e));
            rec.push("poncelet_sum", k.poncelet_sum(&e));
            rec.push("inverted_poncelet_sum", k.inverted_poncelet_sum(&e));
            rec.push("ill_conditioned", e.is_ill_conditioned());
            Rendered {
                config: cfg.record("constants"),
                table: Table::from_record(rec),
                outcome: pass_or(true),
            }
        }
    })
}

/// Renders and encodes `cli` into `out`; CSV summaries go to `diag` as `# key=value` lines.
pub fn run(cli: &Cli, out: &mut dyn Write, diag: &mut dyn Write) -> Result<Outcome, CliError> {
    let Rendered {
        config,
        table,
        outcome,
    } = render(cli)?;
    match cli.config.format {
        Format::Csv => {
            table.write_csv(&mut *out)?;
            for (k, v) in &table.summary.0 {
                let text = match v {
                    Cell::Num(x) => output::format_float(*x),
                    Cell::Int(i) => i.to_string(),
                    Cell::Bool(b) => b.to_string(),
                    Cell::Text(s) => s.clone(),
                };
                writeln!(diag, "# {k}={text}")?;
            }
        }
        Format::Json => {
            let mut config = config;
            config.push("format", "json");
            table.write_json(&config, &mut *out)?;
        }
    }
    out.flush()?;
    Ok(outcome)
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(Outcome::Usage.code())
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stderr = io::stderr();
    let result = match &cli.config.out {
        Some(path) => File::create(path)
            .map_err(CliError::from)
            .and_then(|f| run(&cli, &mut BufWriter::new(f), &mut stderr.lock())),
        None => run(&cli, &mut io::stdout().lock(), &mut stderr.lock()),
    };
    match result {
        Ok(outcome) => ExitCode::from(outcome.code()),
        // Downstream reader went away (`ebill ... | head`).
        Err(CliError::Io(err)) if err.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(Outcome::Usage.code())
        }
    }
}
