//! Command-line front end: JSON files in, JSON on standard output.
//!
//! Exit codes: 0 success, 1 failed `verify`, 2 invalid input, 3 the
//! requested set is empty (infeasible geometry).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nconic::apollonius::{solve_apollonius, ApolloniusOptions, ApolloniusSolution};
use nconic::bisectors::{bisector_of, triple_hyperplane_with, Ball};
use nconic::cascade::{
    intersect_bisectors_with, sample_result, tangency_spread, verify_state, CascadeResult, TANGENCY_TOL,
};
use nconic::conics::{point_scale, sample_points, surface_residual, ConicKind, ConicSpec, SheetTag};
use nconic::io;
use nconic::slicer::{sample_slice, slice_with, SliceResult};
use nconic::{Error, Hyperplane, Result, Tolerances, Vector};

/// Relative bound on surface residuals of emitted points.
const SURFACE_TOL: f64 = 1e-8;
/// Relative bound on plane residuals of emitted slice points.
const PLANE_TOL: f64 = 1e-10;
/// Relative bound on Apollonius tangency residuals.
const APOLLONIUS_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(
    name = "nconic",
    version,
    about = "Conic sections, slices and ball bisectors in R^n"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Scale every default tolerance by this factor.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for sampled points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of sampled points.
    #[arg(long, global = true, default_value_t = 100)]
    count: usize,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Include per-step cascade state.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersect a conic with a hyperplane.
    Slice {
        #[arg(long)]
        conic: PathBuf,
        #[arg(long)]
        plane: PathBuf,
    },
    /// Bisector of two balls, or the common hyperplane of three.
    Bisector {
        #[arg(long)]
        balls: PathBuf,
        /// Indices of the pair to bisect when more than two balls are given.
        #[arg(long, num_args = 2, value_names = ["J", "K"])]
        pair: Option<Vec<usize>>,
    },
    /// Intersect all pairwise bisectors of a set of balls.
    Intersect {
        #[arg(long)]
        balls: PathBuf,
    },
    /// Spheres tangent to n+1 given spheres.
    Apollonius {
        #[arg(long)]
        circles: PathBuf,
    },
    /// Emit verified points of a conic, a slice or a bisector intersection.
    Sample(Inputs),
    /// Recompute a result and check its residuals; exit 1 on failure.
    Verify(Inputs),
}

#[derive(Args, Debug)]
struct Inputs {
    #[arg(long)]
    conic: Option<PathBuf>,
    #[arg(long, requires = "conic")]
    plane: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["conic", "circles"])]
    balls: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["conic", "balls"])]
    circles: Option<PathBuf>,
}

/// Runs one invocation; returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    let ctx = Ctx {
        cli: &cli,
        err: std::cell::RefCell::new(err),
    };
    let result = ctx.dispatch();
    let err = ctx.err.into_inner();
    match result {
        Ok((value, code)) => {
            let _ = writeln!(out, "{}", io::write_json(&value, cli.pretty));
            code
        }
        Err(e) => {
            let _ = writeln!(err, "nconic: {e}");
            let _ = writeln!(out, "{}", io::write_json(&io::error_to_json(&e), cli.pretty));
            if e.is_infeasible() {
                3
            } else {
                2
            }
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    err: std::cell::RefCell<&'a mut dyn Write>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

struct Check {
    name: &'static str,
    value: f64,
    limit: f64,
}

/// Residual checks for one emitted point.
type Checker = Box<dyn Fn(&Vector) -> Vec<Check>>;

impl Check {
    fn ok(&self) -> bool {
        self.value <= self.limit
    }
}

impl Ctx<'_> {
    fn warn(&self, msg: &str) {
        let _ = writeln!(self.err.borrow_mut(), "nconic: {msg}");
    }

    fn tol(&self) -> Result<Tolerances> {
        match self.cli.tol {
            None => Ok(Tolerances::default()),
            Some(t) if t > 0.0 && t.is_finite() => Ok(Tolerances::scaled(t)),
            Some(t) => Err(Error::InvalidInput(format!("--tol must be positive, got {t}"))),
        }
    }

    /// Factor applied to every residual limit.
    fn factor(&self) -> f64 {
        self.cli.tol.unwrap_or(1.0)
    }

    fn count(&self) -> Result<usize> {
        match self.cli.count {
            0 => Err(Error::InvalidInput("--count must be positive".into())),
            n => Ok(n),
        }
    }

    fn dispatch(&self) -> Result<(Value, i32)> {
        let tol = self.tol()?;
        match &self.cli.command {
            Command::Slice { conic, plane } => {
                let r = self.slice(conic, plane, &tol)?;
                Ok((io::slice_to_json(&r), 0))
            }
            Command::Bisector { balls, pair } => {
                let balls = io::parse_balls(&read(balls)?)?;
                self.bisector(&balls, pair.as_deref(), &tol).map(|v| (v, 0))
            }
            Command::Intersect { balls } => {
                let balls = io::parse_balls(&read(balls)?)?;
                let r = intersect_bisectors_with(&balls, &tol)?;
                Ok((io::cascade_to_json(&r, self.cli.verbose), 0))
            }
            Command::Apollonius { circles } => {
                let sol = self.apollonius(circles, &tol)?;
                Ok((apollonius_json(&sol), 0))
            }
            Command::Sample(inputs) => {
                let (points, _) = self.sample(inputs, &tol)?;
                Ok((io::points_to_json(&points), 0))
            }
            Command::Verify(inputs) => self.verify(inputs, &tol),
        }
    }

    fn slice(&self, conic: &Path, plane: &Path, tol: &Tolerances) -> Result<SliceResult> {
        let spec = io::parse_conic(&read(conic)?)?;
        let plane = io::parse_hyperplane(&read(plane)?)?;
        slice_with(&spec, &plane, tol)
    }

    fn bisector(&self, balls: &[Ball], pair: Option<&[usize]>, tol: &Tolerances) -> Result<Value> {
        match (balls.len(), pair) {
            (_, Some(&[j, k])) => {
                if j >= balls.len() || k >= balls.len() || j == k {
                    return Err(Error::InvalidInput(format!(
                        "--pair {j} {k} is not a pair of distinct indices below {}",
                        balls.len()
                    )));
                }
                Ok(io::bisector_to_json(&bisector_of(balls, j, k, tol)?))
            }
            (2, None) => Ok(io::bisector_to_json(&bisector_of(balls, 0, 1, tol)?)),
            (3, None) => Ok(io::triple_to_json(&triple_hyperplane_with(
                &balls[0], &balls[1], &balls[2], tol,
            )?)),
            (n, None) => Err(Error::InvalidInput(format!(
                "{n} balls given; pass two or three, or choose a pair with --pair"
            ))),
            _ => unreachable!("clap enforces two values"),
        }
    }

    fn apollonius(&self, circles: &Path, tol: &Tolerances) -> Result<ApolloniusSolution> {
        let circles = io::parse_circles(&read(circles)?)?;
        let options = ApolloniusOptions {
            tol: *tol,
            ..Default::default()
        };
        let sol = solve_apollonius(&circles, &options)?;
        for (p, reason) in &sol.failures {
            self.warn(&format!("pattern {:?}: {reason}", p.0));
        }
        Ok(sol)
    }

    /// Seeded points plus the residual checks they were filtered by.
    fn sample(&self, inputs: &Inputs, tol: &Tolerances) -> Result<(Vec<Vector>, Vec<Check>)> {
        let count = self.count()?;
        let seed = self.cli.seed;
        let (points, keep): (Vec<Vector>, Checker) =
            match (&inputs.conic, &inputs.plane, &inputs.balls, &inputs.circles) {
                (Some(c), Some(p), _, _) => {
                    let spec = io::parse_conic(&read(c)?)?;
                    let plane = io::parse_hyperplane(&read(p)?)?;
                    let r = slice_with(&spec, &plane, tol)?;
                    let pts = sample_slice(&r, count, seed)?;
                    (pts, Box::new(move |x| slice_checks(&spec, &plane, x)))
                }
                (Some(c), None, _, _) => {
                    let spec = io::parse_conic(&read(c)?)?;
                    let pts = sample_conic(&spec, count, seed)?;
                    (pts, Box::new(move |x| conic_checks(&spec, x)))
                }
                (_, _, Some(b), _) => {
                    let balls = io::parse_balls(&read(b)?)?;
                    let r = intersect_bisectors_with(&balls, tol)?;
                    let pts = sample_result(&r, count, seed)?;
                    (pts, Box::new(move |x| cascade_checks(&r, x)))
                }
                (_, _, _, Some(_)) => {
                    return Err(Error::InvalidInput(
                        "sample takes --conic [--plane] or --balls".into(),
                    ))
                }
                _ => return Err(Error::InvalidInput("nothing to sample".into())),
            };
        let mut kept = Vec::with_capacity(points.len());
        let mut checks: Vec<Check> = Vec::new();
        let mut dropped = 0usize;
        for x in points {
            let mut cs = keep(&x);
            for c in &mut cs {
                c.limit *= self.factor();
            }
            if cs.iter().all(Check::ok) && x.is_finite() {
                kept.push(x);
            } else {
                dropped += 1;
            }
            merge(&mut checks, cs);
        }
        if dropped > 0 {
            self.warn(&format!(
                "dropped {dropped} sampled points that failed re-verification"
            ));
        }
        Ok((kept, checks))
    }

    fn verify(&self, inputs: &Inputs, tol: &Tolerances) -> Result<(Value, i32)> {
        let mut checks = Vec::new();
        let subject;
        if let Some(c) = &inputs.circles {
            subject = "apollonius";
            let circles = io::parse_circles(&read(c)?)?;
            let sol = self.apollonius(c, tol)?;
            let scale = circles
                .iter()
                .fold(1f64, |m, b| m.max(b.center.norm_inf()).max(b.radius));
            let worst = sol.circles.iter().fold(0f64, |m, t| m.max(t.residual));
            checks.push(Check {
                name: "tangency_residual",
                value: worst,
                limit: APOLLONIUS_TOL * scale * self.factor(),
            });
        } else {
            subject = match (&inputs.plane, &inputs.balls) {
                (Some(_), _) => "slice",
                (_, Some(_)) => "intersect",
                _ => "conic",
            };
            let (_, cs) = self.sample(inputs, tol)?;
            checks = cs;
            if let Some(b) = &inputs.balls {
                let balls = io::parse_balls(&read(b)?)?;
                let r = intersect_bisectors_with(&balls, tol)?;
                checks.extend(diagnostic_checks(&r).into_iter().map(|mut c| {
                    c.limit *= self.factor();
                    c
                }));
            }
        }
        let ok = checks.iter().all(Check::ok);
        let value = json!({
            "ok": ok,
            "subject": subject,
            "checks": checks
                .iter()
                .map(|c| json!({"name": c.name, "value": c.value, "limit": c.limit, "ok": c.ok()}))
                .collect::<Vec<_>>(),
        });
        if !ok {
            self.warn("verification failed");
        }
        Ok((value, if ok { 0 } else { 1 }))
    }
}

/// Keeps the worst value per check name.
fn merge(into: &mut Vec<Check>, from: Vec<Check>) {
    for c in from {
        match into.iter_mut().find(|d| d.name == c.name) {
            Some(d) => {
                if c.value / c.limit > d.value / d.limit {
                    *d = c;
                }
            }
            None => into.push(c),
        }
    }
}

fn sample_conic(spec: &ConicSpec, count: usize, seed: u64) -> Result<Vec<Vector>> {
    match spec.kind() {
        ConicKind::HyperboloidTwoSheets | ConicKind::Cone => {
            let half = count.div_ceil(2);
            let mut pts = sample_points(spec, SheetTag::Sheet1, half, seed)?;
            if count > half {
                pts.extend(sample_points(
                    spec,
                    SheetTag::Sheet2,
                    count - half,
                    seed.wrapping_add(1),
                )?);
            }
            Ok(pts)
        }
        _ => sample_points(spec, SheetTag::Whole, count, seed),
    }
}

fn conic_checks(spec: &ConicSpec, x: &Vector) -> Vec<Check> {
    let s = point_scale(spec, x);
    let r = surface_residual(spec, x).map(f64::abs).unwrap_or(f64::INFINITY);
    vec![Check {
        name: "surface_residual",
        value: r,
        limit: SURFACE_TOL * s * s,
    }]
}

fn slice_checks(spec: &ConicSpec, plane: &Hyperplane, x: &Vector) -> Vec<Check> {
    let mut cs = conic_checks(spec, x);
    cs.push(Check {
        name: "plane_residual",
        value: plane.signed_distance(x).abs(),
        limit: PLANE_TOL * point_scale(spec, x),
    });
    cs
}

fn cascade_checks(r: &CascadeResult, x: &Vector) -> Vec<Check> {
    vec![Check {
        name: "tangency_spread",
        value: tangency_spread(x, &r.balls),
        limit: TANGENCY_TOL * r.scale().max(x.norm_inf()),
    }]
}

fn diagnostic_checks(r: &CascadeResult) -> Vec<Check> {
    let mut u = 0f64;
    let mut v = f64::INFINITY;
    for s in &r.steps {
        let d = verify_state(s);
        u = u.max(d.max_u_dot_v1);
        v = v.min(d.min_v_dot_v1);
    }
    let mut cs = vec![Check {
        name: "max_u_dot_v1",
        value: u,
        limit: 1e-9,
    }];
    if v.is_finite() {
        // v_k·v_1 must stay positive
        cs.push(Check {
            name: "neg_min_v_dot_v1",
            value: -v,
            limit: 0.0,
        });
    }
    cs
}

fn apollonius_json(sol: &ApolloniusSolution) -> Value {
    json!({
        "circles": io::apollonius_to_json(sol),
        "failures": sol
            .failures
            .iter()
            .map(|(p, reason)| json!({"pattern": p.0.clone(), "reason": reason}))
            .collect::<Vec<_>>(),
    })
}
