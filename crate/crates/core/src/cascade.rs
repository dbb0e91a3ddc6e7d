//! Intersection of all pairwise bisectors of s balls.
//!
//! The balls are sorted by radius (largest first). The common points of all
//! bisectors are the points of the base bisector `B(1, s)` that also lie on
//! the s − 2 hyperplanes `H_k` built from the triples `(1, k, s)`. The
//! intersection is computed one hyperplane at a time by updating the axis,
//! center, eccentricity and the signed constant `K` of the running conic
//! `[εv·(x−c)]² − ‖x−c‖² = K`, restricted to the flat cut out so far.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bisectors::{bisector_of, check_dims, radii_equal, radius_order, tangent_radius, Ball, Bisector};
use crate::conics::{sample_points_in, ConicKind, ConicSpec, SheetTag};
use crate::error::{Error, Result};
use crate::geometry::{
    normalize, orthonormal_complement, orthonormalize_against_with, Hyperplane, UnitVector, Vector,
};
use crate::slicer::{slice_with, SliceShape};
use crate::tolerance::Tolerances;

/// Tolerance of the all-pairs tangency test, relative to the ball scale.
pub const TANGENCY_TOL: f64 = 1e-7;

/// Running conic after step `k` (step 1 is the base bisector).
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeState {
    pub k: usize,
    /// `v_k`; always on the same side as the base axis.
    pub axis: UnitVector,
    pub center: Vector,
    /// Common point of all directrices used so far.
    pub directrix_point: Vector,
    pub vertex: Vector,
    pub eps: f64,
    pub a: Option<f64>,
    /// `√|K|`.
    pub b: Option<f64>,
    pub c_param: f64,
    /// Signed right-hand side `K`; `None` for a paraboloid.
    pub q_rhs: Option<f64>,
    pub hp: Vec<UnitVector>,
    /// `u_1, …, u_{k−1}`.
    pub u: Vec<UnitVector>,
    pub base_axis: UnitVector,
    pub rho: Option<f64>,
    pub sigma: Option<f64>,
    pub h_hat: Option<f64>,
    pub tilde_c: Option<f64>,
    /// Focal parameter of a parabolic step.
    pub c_hat: Option<f64>,
    /// The running conic in ambient coordinates.
    pub conic: ConicSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CascadeKind {
    /// A conic inside the flat orthogonal to `normals` through its center.
    /// `branch` is the sheet of `conic` that lies on the base bisector.
    Conic {
        conic: ConicSpec,
        branch: SheetTag,
        normals: Vec<UnitVector>,
    },
    /// Equal radii: an affine subspace.
    Flat { point: Vector, basis: Vec<UnitVector> },
    /// Zero-dimensional result. `points` passed the tangency test,
    /// `candidates` are both vertices of the final running conic.
    PointPair {
        points: Vec<Vector>,
        candidates: Vec<Vector>,
    },
}

impl CascadeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CascadeKind::Conic { .. } => "Conic",
            CascadeKind::Flat { .. } => "Flat",
            CascadeKind::PointPair { .. } => "PointPair",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CascadeResult {
    pub kind: CascadeKind,
    /// Dimension of the result set, `n − s + 1`.
    pub dimension: usize,
    /// Center of the smallest ball tangent to all inputs on the result.
    pub sheet_vertex: Vector,
    pub tangent_z: f64,
    /// Input indices by radius, largest first.
    pub order: Vec<usize>,
    pub steps: Vec<CascadeState>,
    pub balls: Vec<Ball>,
}

impl CascadeResult {
    /// `max(1, ‖p_i‖∞, r_i)` over the input balls.
    pub fn scale(&self) -> f64 {
        ball_scale(&self.balls)
    }
}

pub(crate) fn ball_scale(balls: &[Ball]) -> f64 {
    balls
        .iter()
        .fold(1f64, |m, b| m.max(b.center.norm_inf()).max(b.radius))
}

/// `max_i z_i − min_i z_i` with `z_i = ‖p_i − x‖ + r_i`.
pub fn tangency_spread(x: &Vector, balls: &[Ball]) -> f64 {
    let (lo, hi) = balls
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), b| {
            let z = tangent_radius(x, b);
            (lo.min(z), hi.max(z))
        });
    hi - lo
}

fn check_affine_independent(balls: &[Ball], tol: &Tolerances) -> Result<()> {
    for (i, a) in balls.iter().enumerate() {
        for (k, b) in balls.iter().enumerate().skip(i + 1) {
            let s = 1f64.max(a.center.norm_inf()).max(b.center.norm_inf());
            if a.center.distance(&b.center) <= tol.zero * s {
                return Err(Error::CoincidentCenters(i, k));
            }
        }
    }
    let base = &balls[0].center;
    let mut basis: Vec<UnitVector> = Vec::new();
    for b in &balls[1..] {
        let d = &b.center - base;
        let l = d.norm();
        if l <= tol.zero * 1f64.max(base.norm_inf()) {
            return Err(Error::AffineDependence);
        }
        let q = orthonormalize_against_with(&d.scale(1.0 / l), &basis, &Tolerances { zero: 1e-10, ..*tol })
            .map_err(|_| Error::AffineDependence)?;
        basis.push(q);
    }
    Ok(())
}

pub fn intersect_bisectors(balls: &[Ball]) -> Result<CascadeResult> {
    intersect_bisectors_with(balls, &Tolerances::default())
}

pub fn intersect_bisectors_with(balls: &[Ball], tol: &Tolerances) -> Result<CascadeResult> {
    let s = balls.len();
    if s < 2 {
        return Err(Error::TooFewBalls(s));
    }
    let n = check_dims(balls)?;
    if s > n + 1 {
        return Err(Error::TooManyBalls {
            count: s,
            limit: n + 1,
        });
    }
    check_affine_independent(balls, tol)?;
    for i in 0..s {
        for j in i + 1..s {
            bisector_of(balls, i, j, tol)?;
        }
    }
    let order = radius_order(balls);
    let i1 = order[0];
    let is = order[s - 1];
    if radii_equal(balls[i1].radius, balls[is].radius, tol) {
        return flat_result(balls, order, tol);
    }
    run_cascade(balls, order, tol)
}

fn flat_result(balls: &[Ball], order: Vec<usize>, tol: &Tolerances) -> Result<CascadeResult> {
    let n = balls[0].dim();
    let i1 = order[0];
    // n_k·x = o_k for the plane bisectors B(i1, ik); Gram–Schmidt gives
    // n_k = Σ_j R_jk q_j, then forward substitution for x = Σ α_j q_j
    let mut q: Vec<UnitVector> = Vec::new();
    let mut alpha: Vec<f64> = Vec::new();
    for &ik in &order[1..] {
        let Bisector::Plane { plane, .. } = bisector_of(balls, i1, ik, tol)? else {
            unreachable!("equal radii give planes")
        };
        let nk = plane.normal().as_vector().clone();
        let r: Vec<f64> = q.iter().map(|qj| qj.dot(&nk)).collect();
        let qk = orthonormalize_against_with(&nk, &q, tol).map_err(|_| Error::AffineDependence)?;
        let rkk = qk.dot(&nk);
        let known: f64 = r.iter().zip(&alpha).map(|(r, a)| r * a).sum();
        alpha.push((plane.offset() - known) / rkk);
        q.push(qk);
    }
    let mut point = Vector::zeros(n);
    for (qj, a) in q.iter().zip(&alpha) {
        point = point.add_scaled(*a, qj);
    }
    let basis = orthonormal_complement(&q, n);
    // nearest point of the flat to p_i1 minimizes the common tangent radius
    let p = &balls[i1].center;
    let mut vertex = point.clone();
    for b in &basis {
        vertex = vertex.add_scaled(b.dot(&(p - &point)), b);
    }
    let tangent_z = tangent_radius(&vertex, &balls[i1]);
    Ok(CascadeResult {
        dimension: basis.len(),
        kind: CascadeKind::Flat { point, basis },
        sheet_vertex: vertex,
        tangent_z,
        order,
        steps: Vec::new(),
        balls: balls.to_vec(),
    })
}

fn quadric_conic(center: &Vector, axis: &UnitVector, a: f64, eps: f64) -> ConicSpec {
    let kind = if eps > 1.0 {
        ConicKind::HyperboloidTwoSheets
    } else {
        ConicKind::Ellipsoid
    };
    ConicSpec::assemble_quadric(kind, center.clone(), axis.clone(), a, a * eps, eps, None)
}

fn run_cascade(balls: &[Ball], order: Vec<usize>, tol: &Tolerances) -> Result<CascadeResult> {
    let s = balls.len();
    let n = balls[0].dim();
    let i1 = order[0];
    let is = order[s - 1];
    let scale = ball_scale(balls);

    let Bisector::Sheet { conic: base, .. } = bisector_of(balls, i1, is, tol)? else {
        unreachable!("largest and smallest radii differ")
    };
    let v1 = base.axis().clone();
    let eps1 = base.eccentricity().expect("hyperboloid");
    let a1 = base.a().expect("hyperboloid");
    let k1 = base.quadric_rhs().expect("hyperboloid");
    let d1 = base.directrix_points().expect("hyperboloid").0;
    let mut steps = vec![CascadeState {
        k: 1,
        axis: v1.clone(),
        center: base.center().clone(),
        directrix_point: d1,
        vertex: base.vertices().swap_remove(0),
        eps: eps1,
        a: Some(a1),
        b: base.b(),
        c_param: base.c_param(),
        q_rhs: Some(k1),
        hp: Vec::new(),
        u: Vec::new(),
        base_axis: v1.clone(),
        rho: None,
        sigma: None,
        h_hat: None,
        tilde_c: None,
        c_hat: None,
        conic: base.clone(),
    }];

    for (k, &ik) in order.iter().enumerate().take(s - 1).skip(1) {
        let prev = steps.last().expect("at least the base state");
        // H_k and the directrix (or plane) of B(i1, ik) used to move d
        let (h, v_dir, d_dir) = if radii_equal(balls[i1].radius, balls[ik].radius, tol) {
            let Bisector::Plane { plane, .. } = bisector_of(balls, i1, ik, tol)? else {
                unreachable!("equal radii give a plane")
            };
            let mid = (&balls[i1].center + &balls[ik].center).scale(0.5);
            let h = plane.normal().clone();
            (h.clone(), h, mid)
        } else {
            let Bisector::Sheet { conic: b1k, .. } = bisector_of(balls, i1, ik, tol)? else {
                unreachable!("distinct radii give a sheet")
            };
            let e1k = b1k.eccentricity().expect("hyperboloid");
            let raw = b1k.axis().scale(e1k).add_scaled(-eps1, &v1);
            let h = normalize(&raw).map_err(|_| Error::AffineDependence)?;
            let d1k = b1k.directrix_points().expect("hyperboloid").0;
            (h, b1k.axis().clone(), d1k)
        };
        let mut hp = orthonormalize_against_with(&h, &prev.hp, tol).map_err(|_| Error::AffineDependence)?;
        if hp.dot(&h) < 0.0 {
            hp = hp.negated();
        }
        let v_prev = &prev.axis;
        let u = normalize(&hp.add_scaled(-hp.dot(v_prev), v_prev)).map_err(|_| Error::AffineDependence)?;
        let v_new =
            normalize(&v_prev.add_scaled(-v_prev.dot(&hp), &hp)).map_err(|_| Error::AffineDependence)?;
        let denom = v_dir.dot(&u);
        if denom.abs() <= 1e-12 {
            return Err(Error::AffineDependence);
        }
        let d = prev
            .directrix_point
            .add_scaled(v_dir.dot(&(&d_dir - &prev.directrix_point)) / denom, &u);
        let h_hat = hp.dot(&(&d - &prev.center));
        let rho = v_prev.dot(&v_new);
        let sigma = v_prev.dot(&hp);

        let mut hp_list = prev.hp.clone();
        hp_list.push(hp.clone());
        let mut u_list = prev.u.clone();
        u_list.push(u.clone());

        let next = if let Some(k_prev) = prev.q_rhs {
            quadric_step(prev, k_prev, &hp, &v_new, rho, sigma, h_hat, scale, tol)?
        } else {
            paraboloid_step(prev, &hp, &v_new, &d, rho, tol)?
        };
        steps.push(CascadeState {
            k: k + 1,
            directrix_point: d,
            hp: hp_list,
            u: u_list,
            base_axis: v1.clone(),
            rho: Some(rho),
            sigma: Some(sigma),
            h_hat: Some(h_hat),
            ..next
        });
    }

    package(balls, order, steps, n, scale)
}

/// One step of the recurrence for a hyperboloid or ellipsoid running conic.
#[allow(clippy::too_many_arguments)]
fn quadric_step(
    prev: &CascadeState,
    k_prev: f64,
    hp: &UnitVector,
    v_new: &UnitVector,
    rho: f64,
    sigma: f64,
    h_hat: f64,
    scale: f64,
    tol: &Tolerances,
) -> Result<CascadeState> {
    let ep = prev.eps;
    let eps = ep * rho;
    let foot = prev.center.add_scaled(h_hat, hp);
    if (eps - 1.0).abs() <= tol.band * (1.0 + eps) {
        if h_hat == 0.0 || sigma == 0.0 {
            return Err(Error::EmptyIntersection(
                "hyperplane through the center along an asymptote".into(),
            ));
        }
        let c_hat = ep * sigma * h_hat / 2.0;
        let tilde_c = ((ep * ep * sigma * sigma - 1.0) * h_hat * h_hat - k_prev) / (2.0 * ep * sigma * h_hat);
        let center = foot.add_scaled(-tilde_c, v_new);
        let axis = if c_hat < 0.0 {
            v_new.negated()
        } else {
            v_new.clone()
        };
        let conic = ConicSpec::paraboloid(&center, &axis, c_hat.abs())
            .map_err(|_| Error::EmptyIntersection("degenerate parabolic step".into()))?;
        return Ok(CascadeState {
            axis: v_new.clone(),
            vertex: center.clone(),
            center,
            eps: 1.0,
            a: None,
            b: None,
            c_param: c_hat.abs(),
            q_rhs: None,
            tilde_c: Some(tilde_c),
            c_hat: Some(c_hat),
            conic,
            ..prev.clone()
        });
    }
    let m = (eps - 1.0) * (eps + 1.0);
    let tilde_c = ep * ep * rho * sigma * h_hat / m;
    let num = k_prev * m + h_hat * h_hat * (ep * ep - 1.0);
    let mut a2 = num / (m * m);
    let a2_tol = 1e-12
        * (scale * scale)
            .max((k_prev * m).abs() / (m * m))
            .max(h_hat * h_hat * (ep * ep - 1.0).abs() / (m * m));
    if a2 < 0.0 {
        if a2 < -a2_tol {
            return Err(Error::EmptyIntersection(format!(
                "hyperplane {} misses the running conic",
                prev.k + 1
            )));
        }
        a2 = 0.0;
    }
    let a = a2.sqrt();
    let k_new = a2 * m;
    let center = foot.add_scaled(-tilde_c, v_new);
    let vertex = center.add_scaled(a, v_new);
    Ok(CascadeState {
        axis: v_new.clone(),
        conic: quadric_conic(&center, v_new, a, eps),
        center,
        vertex,
        eps,
        a: Some(a),
        b: Some(k_new.abs().sqrt()),
        c_param: a * eps,
        q_rhs: Some(k_new),
        tilde_c: Some(tilde_c),
        c_hat: None,
        ..prev.clone()
    })
}

/// Continuation after a parabolic step: slice the running paraboloid.
fn paraboloid_step(
    prev: &CascadeState,
    hp: &UnitVector,
    v_new: &UnitVector,
    d: &Vector,
    rho: f64,
    tol: &Tolerances,
) -> Result<CascadeState> {
    let plane = Hyperplane::new(hp.clone(), hp.dot(d))?;
    let r = slice_with(&prev.conic, &plane, tol)?;
    match &r.shape {
        SliceShape::Conic(c) if c.kind() == ConicKind::Paraboloid => Ok(CascadeState {
            axis: v_new.clone(),
            center: c.center().clone(),
            vertex: c.center().clone(),
            eps: 1.0,
            a: None,
            b: None,
            c_param: c.c_param(),
            q_rhs: None,
            tilde_c: Some(r.tilde_c),
            c_hat: Some(c.c_param()),
            conic: c.clone(),
            ..prev.clone()
        }),
        SliceShape::Conic(c) => {
            let a = c.a().expect("ellipse");
            let eps = c.eccentricity().unwrap_or(rho);
            let k_new = c.quadric_rhs().expect("ellipse");
            Ok(CascadeState {
                axis: v_new.clone(),
                center: c.center().clone(),
                vertex: c.center().add_scaled(a, v_new),
                eps,
                a: Some(a),
                b: Some(k_new.abs().sqrt()),
                c_param: c.c_param(),
                q_rhs: Some(k_new),
                tilde_c: Some(r.tilde_c),
                c_hat: None,
                conic: quadric_conic(c.center(), v_new, a, eps),
                ..prev.clone()
            })
        }
        SliceShape::Point(p) => Ok(CascadeState {
            axis: v_new.clone(),
            center: p.clone(),
            vertex: p.clone(),
            eps: rho,
            a: Some(0.0),
            b: Some(0.0),
            c_param: 0.0,
            q_rhs: Some(0.0),
            tilde_c: Some(r.tilde_c),
            c_hat: None,
            conic: quadric_conic(p, v_new, 0.0, rho),
            ..prev.clone()
        }),
        _ => Err(Error::EmptyIntersection(format!(
            "hyperplane {} misses the running conic",
            prev.k + 1
        ))),
    }
}

fn package(
    balls: &[Ball],
    order: Vec<usize>,
    steps: Vec<CascadeState>,
    n: usize,
    scale: f64,
) -> Result<CascadeResult> {
    let s = balls.len();
    let i1 = order[0];
    let last = steps.last().expect("base state");
    let base = &steps[0];
    let dimension = n + 1 - s;
    let tangent_ok = |x: &Vector| tangency_spread(x, balls) <= TANGENCY_TOL * scale;
    let on_base_sheet = |x: &Vector| base.axis.dot(&(x - &base.center)) > 0.0;
    let empty = || Error::EmptyIntersection("running conic lies on the far sheet".into());

    let candidates = last.conic.vertices();
    let two_sheeted = last.conic.kind() == ConicKind::HyperboloidTwoSheets;
    if !two_sheeted && !on_base_sheet(last.conic.center()) {
        return Err(empty());
    }

    if dimension == 0 {
        let points: Vec<Vector> = candidates.iter().filter(|x| tangent_ok(x)).cloned().collect();
        let Some(first) = points.first().cloned() else {
            return Err(empty());
        };
        let tangent_z = tangent_radius(&first, &balls[i1]);
        return Ok(CascadeResult {
            kind: CascadeKind::PointPair { points, candidates },
            dimension,
            sheet_vertex: first,
            tangent_z,
            order,
            steps,
            balls: balls.to_vec(),
        });
    }

    // positive-axis vertex first, the other one as a fallback
    let (vertex, branch) = if tangent_ok(&candidates[0]) || candidates.len() == 1 {
        (candidates[0].clone(), SheetTag::Sheet1)
    } else if tangent_ok(&candidates[1]) {
        (candidates[1].clone(), SheetTag::Sheet2)
    } else {
        return Err(empty());
    };
    let branch = if two_sheeted { branch } else { SheetTag::Whole };
    let tangent_z = tangent_radius(&vertex, &balls[i1]);
    Ok(CascadeResult {
        kind: CascadeKind::Conic {
            conic: last.conic.clone(),
            branch,
            normals: last.hp.clone(),
        },
        dimension,
        sheet_vertex: vertex,
        tangent_z,
        order,
        steps,
        balls: balls.to_vec(),
    })
}

/// Orthogonality diagnostics of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    pub max_u_dot_v1: f64,
    pub min_v_dot_v1: f64,
    pub max_hp_cross: f64,
    pub max_v_dot_hp: f64,
}

pub fn verify_state(state: &CascadeState) -> StateDiagnostics {
    let v1 = &state.base_axis;
    let max_u_dot_v1 = state.u.iter().fold(0f64, |m, u| m.max(u.dot(v1).abs()));
    let mut max_hp_cross = 0f64;
    for (i, a) in state.hp.iter().enumerate() {
        for b in &state.hp[i + 1..] {
            max_hp_cross = max_hp_cross.max(a.dot(b).abs());
        }
    }
    let max_v_dot_hp = state.hp.iter().fold(0f64, |m, h| m.max(h.dot(&state.axis).abs()));
    StateDiagnostics {
        max_u_dot_v1,
        min_v_dot_v1: state.axis.dot(v1),
        max_hp_cross,
        max_v_dot_hp,
    }
}

/// Seeded points of the result set.
pub fn sample_result(result: &CascadeResult, count: usize, seed: u64) -> Result<Vec<Vector>> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be positive".into()));
    }
    match &result.kind {
        CascadeKind::Conic {
            conic,
            branch,
            normals,
        } => sample_points_in(conic, *branch, count, seed, normals),
        CascadeKind::Flat { point, basis } => {
            if basis.is_empty() {
                return Ok(vec![point.clone()]);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let span = result.scale();
            Ok((0..count)
                .map(|_| {
                    basis.iter().fold(point.clone(), |x, b| {
                        x.add_scaled(rng.random_range(-span..=span), b)
                    })
                })
                .collect())
        }
        CascadeKind::PointPair { points, .. } => Ok(points.iter().take(count).cloned().collect()),
    }
}
