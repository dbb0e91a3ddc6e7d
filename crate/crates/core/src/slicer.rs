//! Closed-form intersection of a conic with a hyperplane.
//!
//! Everything stays in ambient coordinates. Write `h` for the plane normal,
//! `v` for the conic axis, `σ = h·v`, `ρ = ‖v − σh‖` and
//! `g1 = (v − σh)/ρ` for the in-plane axis. With `ĥ = offset − h·c` the
//! slice of a quadric-form conic is again a conic with eccentricity `ερ`,
//! axis `g1` and center `c + ĥh − c̃·g1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conics::{sample_points_anchored, sample_points_in, ConicKind, ConicSpec, SheetTag};
use crate::error::{Error, Result};
use crate::geometry::{orthonormal_complement, project_out, Hyperplane, UnitVector, Vector};
use crate::tolerance::Tolerances;

/// In-plane frame of a (conic axis, plane normal) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceFrame {
    /// In-plane axis direction; `None` when the axis is normal to the plane.
    pub g1: Option<UnitVector>,
    pub rho: f64,
    pub sigma: f64,
    pub axis_aligned: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SliceClass {
    Hyperbolic,
    Elliptic,
    Parabolic,
    Ball,
    Point,
    DegenerateCone,
    Empty,
}

impl SliceClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SliceClass::Hyperbolic => "HyperbolicSlice",
            SliceClass::Elliptic => "EllipticSlice",
            SliceClass::Parabolic => "ParabolicSlice",
            SliceClass::Ball => "BallSlice",
            SliceClass::Point => "PointSlice",
            SliceClass::DegenerateCone => "DegenerateConeSlice",
            SliceClass::Empty => "EmptySlice",
        }
    }
}

/// Geometry of a slice.
#[derive(Debug, Clone, PartialEq)]
pub enum SliceShape {
    /// Hyperbolic, elliptic or parabolic slice.
    Conic(ConicSpec),
    /// An (n−1)-sphere, stored as a spherical ellipsoid (`c_param = 0`).
    Ball(ConicSpec),
    Point(Vector),
    /// Plane through a cone's apex: a cone of one dimension less.
    Cone(ConicSpec),
    /// Plane through a cone's apex, tangent along one generator.
    Line {
        point: Vector,
        direction: UnitVector,
    },
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceResult {
    pub class: SliceClass,
    pub shape: SliceShape,
    pub plane: Hyperplane,
    pub frame: SliceFrame,
    /// Offset of the plane from the source center, `offset − h·c`.
    pub h_hat: f64,
    /// Shift of the slice center along `−g1` from `c + ĥh`.
    pub tilde_c: f64,
    /// Vertex of a conic slice nearest the foot `c + ĥh`, solved directly
    /// rather than as `center ± â·g1`, which cancels badly near the
    /// parabolic transition where the center runs off to infinity.
    pub vertex: Option<Vector>,
}

impl SliceResult {
    /// The slice as a conic with positive parameters.
    pub fn conic(&self) -> Result<&ConicSpec> {
        match &self.shape {
            SliceShape::Conic(c) | SliceShape::Ball(c) => Ok(c),
            SliceShape::Point(_) => Err(Error::DegenerateOutput("point")),
            SliceShape::Cone(_) => Err(Error::DegenerateOutput("cone through the apex")),
            SliceShape::Line { .. } => Err(Error::DegenerateOutput("line")),
            SliceShape::Empty => Err(Error::EmptyIntersection("plane misses the conic".into())),
        }
    }

    /// Ball radius for [`SliceClass::Ball`].
    pub fn radius(&self) -> Option<f64> {
        match &self.shape {
            SliceShape::Ball(c) => c.a(),
            _ => None,
        }
    }

    /// Orthonormal basis of the complement of the slice's affine hull.
    pub fn hull_basis(&self) -> Vec<UnitVector> {
        vec![self.plane.normal().clone()]
    }
}

/// `σ = h·v`, `g1 = normalize(v − σh)`, `ρ = g1·v`.
pub fn slice_frame(v: &UnitVector, h: &UnitVector) -> Result<SliceFrame> {
    slice_frame_with(v, h, &Tolerances::default())
}

pub fn slice_frame_with(v: &UnitVector, h: &UnitVector, tol: &Tolerances) -> Result<SliceFrame> {
    h.check_dim(v.dim())?;
    let sigma = h.dot(v).clamp(-1.0, 1.0);
    // second pass keeps g1 orthogonal to h even when ρ is tiny
    let w = project_out(&project_out(v, h), h);
    let rho = w.norm();
    if rho <= tol.zero {
        return Ok(SliceFrame {
            g1: None,
            rho: 0.0,
            sigma: sigma.signum(),
            axis_aligned: true,
        });
    }
    let g1 = UnitVector::new_unchecked(w.scale(1.0 / rho));
    let rho = g1.dot(v).clamp(0.0, 1.0);
    Ok(SliceFrame {
        g1: Some(g1),
        rho,
        sigma,
        axis_aligned: false,
    })
}

/// Classification only; never fails except on a dimension mismatch.
pub fn classify_slice(spec: &ConicSpec, plane: &Hyperplane) -> Result<SliceClass> {
    classify_slice_with(spec, plane, &Tolerances::default())
}

pub fn classify_slice_with(spec: &ConicSpec, plane: &Hyperplane, tol: &Tolerances) -> Result<SliceClass> {
    compute(spec, plane, tol).map(|r| r.class)
}

/// The slice of `spec` by `plane`.
///
/// Empty slices are an error. Point, line and apex-cone slices are
/// returned with their class tag; [`SliceResult::conic`] refuses them.
pub fn slice(spec: &ConicSpec, plane: &Hyperplane) -> Result<SliceResult> {
    slice_with(spec, plane, &Tolerances::default())
}

pub fn slice_with(spec: &ConicSpec, plane: &Hyperplane, tol: &Tolerances) -> Result<SliceResult> {
    let r = compute(spec, plane, tol)?;
    if r.class == SliceClass::Empty {
        return Err(Error::EmptyIntersection(format!(
            "plane misses the {}",
            spec.kind().as_str()
        )));
    }
    Ok(r)
}

fn compute(spec: &ConicSpec, plane: &Hyperplane, tol: &Tolerances) -> Result<SliceResult> {
    plane.normal().check_dim(spec.dim())?;
    let h = plane.normal();
    let frame = slice_frame_with(spec.axis(), h, tol)?;
    let c = spec.center();
    let mut h_hat = plane.h_hat(c);
    if h_hat.abs() <= tol.zero * 1f64.max(c.norm_inf()).max(plane.offset().abs()) {
        h_hat = 0.0;
    }
    let foot = c.add_scaled(h_hat, h);
    let (class, shape, tilde_c, vertex) = if spec.kind() == ConicKind::Paraboloid {
        paraboloid_slice(spec, &frame, h, h_hat, foot, tol)
    } else {
        quadric_slice(spec, &frame, h, h_hat, foot, tol)
    };
    Ok(SliceResult {
        class,
        shape,
        plane: plane.clone(),
        frame,
        h_hat,
        tilde_c,
        vertex,
    })
}

type Parts = (SliceClass, SliceShape, f64, Option<Vector>);

fn parts(class: SliceClass, shape: SliceShape, tilde_c: f64) -> Parts {
    (class, shape, tilde_c, None)
}

/// Root of `A t² + 2B t + C` that stays bounded as `A → 0`, given
/// `sd = √(B² − AC)`.
fn bounded_root(b: f64, c: f64, sd: f64) -> Option<f64> {
    let den = if b >= 0.0 { b + sd } else { b - sd };
    (den != 0.0).then(|| -c / den)
}

fn ball_or_point(r2: f64, r2_scale: f64, foot: Vector, h: &UnitVector, tol: &Tolerances) -> Parts {
    if r2.abs() <= tol.boundary * r2_scale {
        parts(SliceClass::Point, SliceShape::Point(foot), 0.0)
    } else if r2 < 0.0 {
        parts(SliceClass::Empty, SliceShape::Empty, 0.0)
    } else {
        let axis = orthonormal_complement(std::slice::from_ref(h), h.dim())
            .into_iter()
            .next()
            .expect("n ≥ 2 leaves a direction in the plane");
        let r = r2.sqrt();
        let ball = ConicSpec::assemble_quadric(ConicKind::Ellipsoid, foot, axis, r, 0.0, 0.0, None);
        parts(SliceClass::Ball, SliceShape::Ball(ball), 0.0)
    }
}

fn quadric_slice(
    spec: &ConicSpec,
    frame: &SliceFrame,
    h: &UnitVector,
    h_hat: f64,
    foot: Vector,
    tol: &Tolerances,
) -> Parts {
    let kind = spec.kind();
    let eps = spec.eccentricity().unwrap_or(0.0);
    let k = spec.quadric_rhs().unwrap_or(0.0);
    let (a, cp) = match kind {
        ConicKind::Cone => (0.0, 0.0),
        _ => (spec.a().unwrap_or(0.0), spec.c_param()),
    };
    let hh = h_hat * h_hat;

    let Some(g1) = frame.g1.clone() else {
        // x − c = ĥh + w with w in the plane: ‖w‖² = (ε²−1)ĥ² − K
        let r2 = (eps * eps - 1.0) * hh - k;
        let s = ((eps * eps + 1.0) * hh).max(k.abs());
        return ball_or_point(r2, s, foot, h, tol);
    };
    let (rho, sigma) = (frame.rho, frame.sigma);
    let er = eps * rho;

    if kind != ConicKind::Ellipsoid && (er - 1.0).abs() <= tol.band * (1.0 + er) {
        if h_hat == 0.0 {
            return match kind {
                ConicKind::Cone => parts(
                    SliceClass::DegenerateCone,
                    SliceShape::Line {
                        point: spec.center().clone(),
                        direction: g1,
                    },
                    0.0,
                ),
                // the in-plane equation reduces to ‖y‖² = −K < 0
                _ => parts(SliceClass::Empty, SliceShape::Empty, 0.0),
            };
        }
        let c_focal = eps * sigma * h_hat / 2.0;
        let tilde_c = ((eps * eps * sigma * sigma - 1.0) * hh - k) / (2.0 * eps * sigma * h_hat);
        let vertex = foot.add_scaled(-tilde_c, &g1);
        let axis = if c_focal < 0.0 { g1.negated() } else { g1 };
        return match ConicSpec::paraboloid(&vertex, &axis, c_focal.abs()) {
            Ok(p) => (SliceClass::Parabolic, SliceShape::Conic(p), tilde_c, Some(vertex)),
            Err(_) => parts(SliceClass::Empty, SliceShape::Empty, tilde_c),
        };
    }

    let m = (er - 1.0) * (er + 1.0);
    let tilde_c = eps * eps * rho * sigma * h_hat / m;
    let center = foot.add_scaled(-tilde_c, &g1);
    // along foot + t·g1 the surface equation is m t² + 2Bt + C = 0
    let b_lin = eps * eps * sigma * h_hat * rho;
    let c_const = (eps * eps * sigma * sigma - 1.0) * hh - k;
    let near = |sd: f64| bounded_root(b_lin, c_const, sd).map(|t| foot.add_scaled(t, &g1));

    if m > 0.0 {
        if kind == ConicKind::Cone && h_hat == 0.0 {
            if spec.dim() == 2 {
                return parts(SliceClass::Point, SliceShape::Point(spec.center().clone()), 0.0);
            }
            let sub = ConicSpec::cone_from_axis(spec.center(), &g1, er).expect("ερ > 1 outside the band");
            return parts(SliceClass::DegenerateCone, SliceShape::Cone(sub), 0.0);
        }
        let d = k * m + (eps * eps - 1.0) * hh;
        let a_hat = (d / (m * m)).sqrt();
        let conic = ConicSpec::assemble_quadric(
            ConicKind::HyperboloidTwoSheets,
            center,
            g1.clone(),
            a_hat,
            a_hat * er,
            er,
            None,
        );
        return (
            SliceClass::Hyperbolic,
            SliceShape::Conic(conic),
            tilde_c,
            near(d.sqrt()),
        );
    }

    // elliptic: ĥ² against a² − ρ²c², which is (ε²−1)·(slice a²)·m²
    let g = hh - (a - rho * cp) * (a + rho * cp);
    let g_scale = hh.max(a * a).max(rho * rho * cp * cp);
    if g.abs() <= tol.boundary * g_scale {
        return parts(SliceClass::Point, SliceShape::Point(center), tilde_c);
    }
    let nonempty = if kind == ConicKind::Ellipsoid {
        g < 0.0
    } else {
        g > 0.0
    };
    if !nonempty {
        return parts(SliceClass::Empty, SliceShape::Empty, tilde_c);
    }
    let a_hat = ((eps * eps - 1.0) * g / (m * m)).sqrt();
    let conic = ConicSpec::assemble_quadric(
        ConicKind::Ellipsoid,
        center,
        g1.clone(),
        a_hat,
        a_hat * er,
        er,
        None,
    );
    let vertex = near(((eps * eps - 1.0) * g).sqrt());
    (SliceClass::Elliptic, SliceShape::Conic(conic), tilde_c, vertex)
}

fn paraboloid_slice(
    spec: &ConicSpec,
    frame: &SliceFrame,
    h: &UnitVector,
    h_hat: f64,
    foot: Vector,
    tol: &Tolerances,
) -> Parts {
    let cp = spec.c_param();
    let Some(g1) = frame.g1.clone() else {
        // x − c = ĥh + w: ‖w‖² = 4c·σĥ
        let r2 = 4.0 * cp * frame.sigma * h_hat;
        return ball_or_point(r2, 4.0 * cp * h_hat.abs(), foot, h, tol);
    };
    let (rho, sigma) = (frame.rho, frame.sigma);

    if (rho - 1.0).abs() <= 2.0 * tol.band {
        let tilde_c = -h_hat * h_hat / (4.0 * cp);
        let vertex = foot.add_scaled(-tilde_c, &g1);
        let p = ConicSpec::paraboloid(&vertex, &g1, cp).expect("c_param > 0");
        return (SliceClass::Parabolic, SliceShape::Conic(p), tilde_c, Some(vertex));
    }

    let q = (rho - 1.0) * (rho + 1.0);
    let tilde_c = rho * (sigma * h_hat + 2.0 * cp) / q;
    let center = foot.add_scaled(-tilde_c, &g1);
    let s = cp * rho * rho + sigma * h_hat;
    if s.abs() <= tol.boundary * (cp * rho * rho).max((sigma * h_hat).abs()) {
        return parts(SliceClass::Point, SliceShape::Point(center), tilde_c);
    }
    if s < 0.0 {
        return parts(SliceClass::Empty, SliceShape::Empty, tilde_c);
    }
    let a_hat = (4.0 * cp * s / (q * q)).sqrt();
    let conic = ConicSpec::assemble_quadric(
        ConicKind::Ellipsoid,
        center,
        g1.clone(),
        a_hat,
        a_hat * rho,
        rho,
        None,
    );
    // along foot + t·g1: q t² + 2ρ(σĥ + 2c)t + ĥ(4cσ − ρ²ĥ) = 0
    let vertex = bounded_root(
        rho * (sigma * h_hat + 2.0 * cp),
        h_hat * (4.0 * cp * sigma - rho * rho * h_hat),
        (4.0 * cp * s).sqrt(),
    )
    .map(|t| foot.add_scaled(t, &g1));
    (SliceClass::Elliptic, SliceShape::Conic(conic), tilde_c, vertex)
}

/// The slice vertex nearest the foot `c + ĥh`: the one that stays bounded
/// as the slice passes through the parabolic case.
pub fn near_vertex(result: &SliceResult) -> Result<Vector> {
    if let Some(v) = &result.vertex {
        return Ok(v.clone());
    }
    match &result.shape {
        SliceShape::Conic(c) => match c.kind() {
            ConicKind::Paraboloid => Ok(c.center().clone()),
            _ => {
                let a = c.a().expect("quadric has a");
                let t = result.tilde_c;
                let s = if (-t + a).abs() <= (-t - a).abs() {
                    1.0
                } else {
                    -1.0
                };
                Ok(c.center().add_scaled(s * a, c.axis()))
            }
        },
        SliceShape::Ball(c) => Ok(c.center().clone()),
        SliceShape::Point(p) => Ok(p.clone()),
        SliceShape::Cone(c) => Ok(c.center().clone()),
        SliceShape::Line { point, .. } => Ok(point.clone()),
        SliceShape::Empty => Err(Error::EmptyIntersection("plane misses the conic".into())),
    }
}

/// Near-side vertices of the slices by a one-parameter family of planes.
pub fn vertex_path<F>(spec: &ConicSpec, family: F, rhos: &[f64]) -> Result<Vec<Vector>>
where
    F: Fn(f64) -> Result<Hyperplane>,
{
    rhos.iter()
        .map(|&r| {
            let plane = family(r)?;
            near_vertex(&slice(spec, &plane)?)
        })
        .collect()
}

/// Seeded points on a nonempty slice, all inside the slicing plane.
pub fn sample_slice(result: &SliceResult, count: usize, seed: u64) -> Result<Vec<Vector>> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be positive".into()));
    }
    let normals = result.hull_basis();
    match &result.shape {
        SliceShape::Conic(c) => {
            let anchor = result.vertex.as_ref().map(|v| {
                let side = if c.axis().dot(&(v - c.center())) >= 0.0 {
                    1.0
                } else {
                    -1.0
                };
                (v, side)
            });
            sample_points_anchored(c, SheetTag::Whole, count, seed, &normals, anchor)
        }
        SliceShape::Ball(c) | SliceShape::Cone(c) => {
            sample_points_in(c, SheetTag::Whole, count, seed, &normals)
        }
        SliceShape::Point(p) => Ok(vec![p.clone()]),
        SliceShape::Line { point, direction } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..count)
                .map(|_| point.add_scaled(rng.random_range(-3.0..=3.0), direction))
                .collect())
        }
        SliceShape::Empty => Err(Error::EmptyIntersection("plane misses the conic".into())),
    }
}
