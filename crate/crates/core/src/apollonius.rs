//! Spheres tangent to n+1 given spheres in R^n (circles tangent to three
//! circles in the plane).
//!
//! For a sign pattern σ the radii become `r_i' = σ_i r_i + K` with a shift
//! `K` that makes them all positive. A point `x` with
//! `‖x − p_i‖ + r_i' = z'` for every i is the center of a sphere of radius
//! `R = z' − K` with `‖x − p_i‖ = R − σ_i r_i`: internally tangent to
//! (containing) sphere i when `σ_i = +1`, externally tangent when `σ_i = −1`.

use crate::bisectors::{check_dims, Ball};
use crate::cascade::{ball_scale, intersect_bisectors_with, tangency_spread, CascadeKind, TANGENCY_TOL};
use crate::error::{Error, Result};
use crate::geometry::{normalize, Vector};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignPattern(pub Vec<i8>);

impl SignPattern {
    /// All 2^m patterns, all-plus first, bit i of the index negating entry i.
    pub fn all(m: usize) -> Vec<SignPattern> {
        (0..1usize << m)
            .map(|bits| SignPattern((0..m).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect()))
            .collect()
    }

    pub fn negated(&self) -> SignPattern {
        SignPattern(self.0.iter().map(|s| -s).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tangency {
    /// The solution contains the input sphere.
    Internal,
    External,
}

impl Tangency {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tangency::Internal => "internal",
            Tangency::External => "external",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangentCircle {
    pub center: Vector,
    pub radius: f64,
    pub pattern: SignPattern,
    pub tangency: Vec<Tangency>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApolloniusSolution {
    pub circles: Vec<TangentCircle>,
    /// Patterns without a solution, with the reason.
    pub failures: Vec<(SignPattern, String)>,
}

#[derive(Debug, Clone, Default)]
pub struct ApolloniusOptions {
    /// Radius shift; `1 + max r_i` when absent.
    pub shift: Option<f64>,
    /// Patterns to try, in order; all of them when absent.
    pub patterns: Option<Vec<SignPattern>>,
    pub tol: Tolerances,
}

/// Largest tangency-equation residual of `tc` against `circles`.
pub fn verify_tangency(tc: &TangentCircle, circles: &[Ball]) -> f64 {
    circles
        .iter()
        .zip(&tc.tangency)
        .map(|(b, t)| {
            let d = tc.center.distance(&b.center);
            let target = match t {
                Tangency::Internal => tc.radius - b.radius,
                Tangency::External => tc.radius + b.radius,
            };
            (d - target).abs()
        })
        .fold(0.0, f64::max)
}

pub fn solve_apollonius(circles: &[Ball], options: &ApolloniusOptions) -> Result<ApolloniusSolution> {
    let n = check_dims(circles)?;
    if circles.len() != n + 1 {
        return Err(Error::InvalidInput(format!(
            "need {} spheres in dimension {n}, got {}",
            n + 1,
            circles.len()
        )));
    }
    for b in circles {
        if b.radius <= 0.0 {
            return Err(Error::InvalidRadius(b.radius));
        }
    }
    let tol = &options.tol;
    let max_r = circles.iter().fold(0f64, |m, b| m.max(b.radius));
    let shift = options.shift.unwrap_or(1.0 + max_r);
    if !shift.is_finite() || shift <= max_r {
        return Err(Error::InvalidInput(format!("shift {shift} must exceed {max_r}")));
    }
    let patterns = options
        .patterns
        .clone()
        .unwrap_or_else(|| SignPattern::all(circles.len()));
    let scale = ball_scale(circles);

    let mut out = ApolloniusSolution {
        circles: Vec::new(),
        failures: Vec::new(),
    };
    for pattern in patterns {
        if pattern.0.len() != circles.len() || pattern.0.iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidInput(
                "sign pattern does not match the input".into(),
            ));
        }
        let shifted: Vec<Ball> = circles
            .iter()
            .zip(&pattern.0)
            .map(|(b, &s)| Ball::new(b.center.clone(), f64::from(s) * b.radius + shift))
            .collect::<Result<_>>()?;
        let centers = match intersect_bisectors_with(&shifted, tol) {
            Ok(r) => match r.kind {
                CascadeKind::PointPair { points, .. } => points,
                _ => unreachable!("n+1 spheres give a zero-dimensional result"),
            },
            Err(Error::AffineDependence) => return Err(Error::AffineDependence),
            Err(e) => match ray_solution(&shifted, tol) {
                Some(x) => vec![x],
                None => {
                    out.failures.push((pattern, e.to_string()));
                    continue;
                }
            },
        };
        let before = out.circles.len();
        for x in centers {
            let z = (x.distance(&shifted[0].center)) + shifted[0].radius;
            let radius = z - shift;
            if radius < -tol.boundary * scale {
                continue;
            }
            let tangency = pattern
                .0
                .iter()
                .map(|&s| {
                    if s > 0 {
                        Tangency::Internal
                    } else {
                        Tangency::External
                    }
                })
                .collect();
            let mut tc = TangentCircle {
                center: x,
                radius: radius.max(0.0),
                pattern: pattern.clone(),
                tangency,
                residual: 0.0,
            };
            tc.residual = verify_tangency(&tc, circles);
            if tc.residual <= TANGENCY_TOL * scale {
                out.circles.push(tc);
            }
        }
        if out.circles.len() == before {
            out.failures
                .push((pattern, "no candidate passes the tangency test".into()));
        }
    }
    Ok(out)
}

/// When `r_j' − r_k' = ‖p_j − p_k‖` the bisector of j and k is the ray
/// `p_j + α·u`, `u = (p_j − p_k)/‖p_j − p_k‖`, `α ≥ 0`. Each other sphere
/// l fixes `α = (Δ² − ‖w‖²) / (2(u·w − Δ))` with `w = p_j − p_l`,
/// `Δ = r_j' − r_l'`.
fn ray_solution(balls: &[Ball], tol: &Tolerances) -> Option<Vector> {
    let scale = ball_scale(balls);
    for j in 0..balls.len() {
        for k in 0..balls.len() {
            if j == k {
                continue;
            }
            let diff = &balls[j].center - &balls[k].center;
            let l = diff.norm();
            let dr = balls[j].radius - balls[k].radius;
            if (dr - l).abs() > tol.boundary * 1f64.max(l).max(balls[j].radius) * 10.0 {
                continue;
            }
            let u = normalize(&diff).ok()?;
            let mut alpha: Option<f64> = None;
            for (m, bl) in balls.iter().enumerate() {
                if m == j || m == k {
                    continue;
                }
                let w = &balls[j].center - &bl.center;
                let delta = balls[j].radius - bl.radius;
                let den = 2.0 * (u.dot(&w) - delta);
                if den.abs() <= tol.zero * scale {
                    continue;
                }
                let a = (delta * delta - w.norm_sq()) / den;
                match alpha {
                    None => alpha = Some(a),
                    Some(b) if (a - b).abs() <= 1e-9 * scale => {}
                    Some(_) => return None,
                }
            }
            let a = alpha?;
            if a < -tol.boundary * scale {
                return None;
            }
            let x = balls[j].center.add_scaled(a.max(0.0), &u);
            if tangency_spread(&x, balls) <= TANGENCY_TOL * scale {
                return Some(x);
            }
        }
    }
    None
}
