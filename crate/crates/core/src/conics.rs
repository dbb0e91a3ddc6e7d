//! The four axis-symmetric conics: two-sheeted hyperboloid, ellipsoid,
//! paraboloid and cone, in any dimension n ≥ 2.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{
    normalize, orthonormalize_against, random_unit_orthogonal, Hyperplane, UnitVector, Vector,
};
use crate::tolerance::Tolerances;

/// Margin kept between the hyperbolic sampling parameter and ±π/2.
pub const SEC_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConicKind {
    HyperboloidTwoSheets,
    Ellipsoid,
    Paraboloid,
    Cone,
}

impl ConicKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConicKind::HyperboloidTwoSheets => "HyperboloidTwoSheets",
            ConicKind::Ellipsoid => "Ellipsoid",
            ConicKind::Paraboloid => "Paraboloid",
            ConicKind::Cone => "Cone",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "HyperboloidTwoSheets" => Some(ConicKind::HyperboloidTwoSheets),
            "Ellipsoid" => Some(ConicKind::Ellipsoid),
            "Paraboloid" => Some(ConicKind::Paraboloid),
            "Cone" => Some(ConicKind::Cone),
            _ => None,
        }
    }

    fn two_sheeted(&self) -> bool {
        matches!(self, ConicKind::HyperboloidTwoSheets | ConicKind::Cone)
    }
}

/// Which part of a conic a point or operation refers to.
///
/// Sheet1 is the half on the `+v` side of the center (nearest `p1`),
/// Sheet2 the `−v` half. Ellipsoids and paraboloids only have `Whole`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SheetTag {
    Sheet1,
    Sheet2,
    Whole,
}

impl SheetTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SheetTag::Sheet1 => "Sheet1",
            SheetTag::Sheet2 => "Sheet2",
            SheetTag::Whole => "Whole",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "Sheet1" => Some(SheetTag::Sheet1),
            "Sheet2" => Some(SheetTag::Sheet2),
            "Whole" => Some(SheetTag::Whole),
            _ => None,
        }
    }
}

/// One n-dimensional conic with its full parameter set.
///
/// For a paraboloid `center` is the vertex and `c_param` the
/// vertex-to-focus distance. A cone is stored normalized as
/// `a = 1/ε`, `c_param = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConicSpec {
    kind: ConicKind,
    center: Vector,
    axis: UnitVector,
    a: Option<f64>,
    c_param: f64,
    b: Option<f64>,
    eccentricity: Option<f64>,
    focus1: Option<Vector>,
    focus2: Option<Vector>,
}

fn check_finite(xs: &[f64]) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn check_dim_at_least_two(dim: usize) -> Result<()> {
    if dim < 2 {
        Err(Error::DimensionTooSmall(dim))
    } else {
        Ok(())
    }
}

fn coincidence_tol(p1: &Vector, p2: &Vector, tol: &Tolerances) -> f64 {
    tol.zero * 1f64.max(p1.norm_inf()).max(p2.norm_inf())
}

impl ConicSpec {
    /// Two-sheeted hyperboloid `|‖p2−x‖ − ‖p1−x‖| = two_a`.
    pub fn hyperboloid_from_foci(p1: &Vector, p2: &Vector, two_a: f64) -> Result<Self> {
        Self::hyperboloid_from_foci_with(p1, p2, two_a, &Tolerances::default())
    }

    pub fn hyperboloid_from_foci_with(
        p1: &Vector,
        p2: &Vector,
        two_a: f64,
        tol: &Tolerances,
    ) -> Result<Self> {
        p2.check_dim(p1.dim())?;
        check_dim_at_least_two(p1.dim())?;
        check_finite(&[two_a])?;
        let diff = p1 - p2;
        let dist = diff.norm();
        check_finite(&[dist])?;
        if dist <= coincidence_tol(p1, p2, tol) {
            return Err(Error::CoincidentFoci);
        }
        if two_a <= 0.0 {
            return Err(Error::InvalidConstant(format!("2a = {two_a} must be positive")));
        }
        if (two_a - dist).abs() <= tol.boundary * two_a.max(dist) {
            return Err(Error::DegenerateRays);
        }
        if two_a > dist {
            return Err(Error::InvalidConstant(format!(
                "2a = {two_a} exceeds the focal distance {dist}"
            )));
        }
        let axis = normalize(&diff)?;
        let center = (p1 + p2).scale(0.5);
        let a = two_a / 2.0;
        let c = dist / 2.0;
        Ok(Self::assemble_quadric(
            ConicKind::HyperboloidTwoSheets,
            center,
            axis,
            a,
            c,
            c / a,
            Some((p1.clone(), p2.clone())),
        ))
    }

    /// Ellipsoid `‖p1−x‖ + ‖p2−x‖ = two_a`; a sphere when `p1 = p2`.
    pub fn ellipsoid_from_foci(p1: &Vector, p2: &Vector, two_a: f64) -> Result<Self> {
        Self::ellipsoid_from_foci_with(p1, p2, two_a, &Tolerances::default())
    }

    pub fn ellipsoid_from_foci_with(p1: &Vector, p2: &Vector, two_a: f64, tol: &Tolerances) -> Result<Self> {
        p2.check_dim(p1.dim())?;
        check_dim_at_least_two(p1.dim())?;
        check_finite(&[two_a])?;
        let diff = p1 - p2;
        let dist = diff.norm();
        check_finite(&[dist])?;
        if two_a <= 0.0 {
            return Err(Error::InvalidConstant(format!("2a = {two_a} must be positive")));
        }
        if (two_a - dist).abs() <= tol.boundary * two_a.max(dist) {
            return Err(Error::DegenerateSegment);
        }
        if two_a < dist {
            return Err(Error::InvalidConstant(format!(
                "2a = {two_a} is below the focal distance {dist}"
            )));
        }
        let center = (p1 + p2).scale(0.5);
        let a = two_a / 2.0;
        if dist <= coincidence_tol(p1, p2, tol) {
            let axis = UnitVector::basis(p1.dim(), 0);
            return Ok(Self::assemble_quadric(
                ConicKind::Ellipsoid,
                center.clone(),
                axis,
                a,
                0.0,
                0.0,
                Some((center.clone(), center)),
            ));
        }
        let axis = normalize(&diff)?;
        let c = dist / 2.0;
        Ok(Self::assemble_quadric(
            ConicKind::Ellipsoid,
            center,
            axis,
            a,
            c,
            c / a,
            Some((p1.clone(), p2.clone())),
        ))
    }

    /// Paraboloid of points equidistant from `p1` and the hyperplane through
    /// `p2` orthogonal to `p1 − p2`.
    pub fn paraboloid_from_points(p1: &Vector, p2: &Vector) -> Result<Self> {
        Self::paraboloid_from_points_with(p1, p2, &Tolerances::default())
    }

    pub fn paraboloid_from_points_with(p1: &Vector, p2: &Vector, tol: &Tolerances) -> Result<Self> {
        p2.check_dim(p1.dim())?;
        check_dim_at_least_two(p1.dim())?;
        let diff = p1 - p2;
        let dist = diff.norm();
        check_finite(&[dist])?;
        if dist <= coincidence_tol(p1, p2, tol) {
            return Err(Error::CoincidentFoci);
        }
        let axis = normalize(&diff)?;
        Ok(ConicSpec {
            kind: ConicKind::Paraboloid,
            center: (p1 + p2).scale(0.5),
            axis,
            a: None,
            c_param: dist / 2.0,
            b: None,
            eccentricity: None,
            focus1: Some(p1.clone()),
            focus2: Some(p2.clone()),
        })
    }

    /// Cone with apex `center`, axis `v` and `sec γ = eps`.
    pub fn cone_from_axis(center: &Vector, v: &UnitVector, eps: f64) -> Result<Self> {
        Self::cone_from_axis_with(center, v, eps, &Tolerances::default())
    }

    pub fn cone_from_axis_with(center: &Vector, v: &UnitVector, eps: f64, tol: &Tolerances) -> Result<Self> {
        center.check_dim(v.dim())?;
        check_dim_at_least_two(v.dim())?;
        check_finite(&[eps])?;
        if eps <= 1.0 + tol.boundary {
            return Err(Error::InvalidEccentricity(eps));
        }
        let a = 1.0 / eps;
        let b = ((1.0 - a) * (1.0 + a)).sqrt();
        Ok(ConicSpec {
            kind: ConicKind::Cone,
            center: center.clone(),
            axis: v.clone(),
            a: Some(a),
            c_param: 1.0,
            b: Some(b),
            eccentricity: Some(eps),
            focus1: Some(center.add_scaled(1.0, v)),
            focus2: None,
        })
    }

    /// Hyperboloid from center, axis and the half-constants `0 < a < c`.
    pub fn hyperboloid(center: &Vector, axis: &UnitVector, a: f64, c: f64) -> Result<Self> {
        Self::hyperboloid_with(center, axis, a, c, &Tolerances::default())
    }

    pub fn hyperboloid_with(
        center: &Vector,
        axis: &UnitVector,
        a: f64,
        c: f64,
        tol: &Tolerances,
    ) -> Result<Self> {
        center.check_dim(axis.dim())?;
        check_dim_at_least_two(axis.dim())?;
        check_finite(&[a, c])?;
        if c <= 0.0 {
            return Err(Error::CoincidentFoci);
        }
        if a <= 0.0 {
            return Err(Error::InvalidConstant(format!("a = {a} must be positive")));
        }
        if (a - c).abs() <= tol.boundary * a.max(c) {
            return Err(Error::DegenerateRays);
        }
        if a > c {
            return Err(Error::InvalidConstant(format!("a = {a} exceeds c = {c}")));
        }
        Ok(Self::assemble_quadric(
            ConicKind::HyperboloidTwoSheets,
            center.clone(),
            axis.clone(),
            a,
            c,
            c / a,
            None,
        ))
    }

    /// Ellipsoid from center, axis and `0 ≤ c < a`.
    pub fn ellipsoid(center: &Vector, axis: &UnitVector, a: f64, c: f64) -> Result<Self> {
        Self::ellipsoid_with(center, axis, a, c, &Tolerances::default())
    }

    pub fn ellipsoid_with(
        center: &Vector,
        axis: &UnitVector,
        a: f64,
        c: f64,
        tol: &Tolerances,
    ) -> Result<Self> {
        center.check_dim(axis.dim())?;
        check_dim_at_least_two(axis.dim())?;
        check_finite(&[a, c])?;
        if a <= 0.0 || c < 0.0 {
            return Err(Error::InvalidConstant(format!("a = {a}, c = {c}")));
        }
        if (a - c).abs() <= tol.boundary * a.max(c) {
            return Err(Error::DegenerateSegment);
        }
        if c > a {
            return Err(Error::InvalidConstant(format!("c = {c} exceeds a = {a}")));
        }
        Ok(Self::assemble_quadric(
            ConicKind::Ellipsoid,
            center.clone(),
            axis.clone(),
            a,
            c,
            c / a,
            None,
        ))
    }

    /// Paraboloid with the given vertex, axis and vertex-to-focus distance.
    pub fn paraboloid(vertex: &Vector, axis: &UnitVector, c: f64) -> Result<Self> {
        vertex.check_dim(axis.dim())?;
        check_dim_at_least_two(axis.dim())?;
        check_finite(&[c])?;
        if c <= 0.0 {
            return Err(Error::InvalidConstant(format!("c = {c} must be positive")));
        }
        Ok(ConicSpec {
            kind: ConicKind::Paraboloid,
            center: vertex.clone(),
            axis: axis.clone(),
            a: None,
            c_param: c,
            b: None,
            eccentricity: None,
            focus1: Some(vertex.add_scaled(c, axis)),
            focus2: Some(vertex.add_scaled(-c, axis)),
        })
    }

    /// Builds a hyperboloid or ellipsoid without validation; `eps` is
    /// stored as given so callers can keep an exactly computed value.
    pub(crate) fn assemble_quadric(
        kind: ConicKind,
        center: Vector,
        axis: UnitVector,
        a: f64,
        c: f64,
        eps: f64,
        foci: Option<(Vector, Vector)>,
    ) -> Self {
        let b = ((c - a).abs() * (c + a)).sqrt();
        let (f1, f2) = foci.unwrap_or_else(|| (center.add_scaled(c, &axis), center.add_scaled(-c, &axis)));
        ConicSpec {
            kind,
            center,
            axis,
            a: Some(a),
            c_param: c,
            b: Some(b),
            eccentricity: Some(eps),
            focus1: Some(f1),
            focus2: Some(f2),
        }
    }

    /// Overwrites derived fields with stored ones (used after parsing so a
    /// round trip is exact). The caller has already checked consistency.
    pub(crate) fn with_stored(
        mut self,
        b: Option<f64>,
        eps: Option<f64>,
        focus1: Option<Vector>,
        focus2: Option<Vector>,
    ) -> Self {
        if let (Some(x), Some(_)) = (b, self.b) {
            self.b = Some(x);
        }
        if let (Some(x), Some(_)) = (eps, self.eccentricity) {
            self.eccentricity = Some(x);
        }
        if let (Some(x), Some(_)) = (focus1, &self.focus1) {
            self.focus1 = Some(x);
        }
        if let (Some(x), Some(_)) = (focus2, &self.focus2) {
            self.focus2 = Some(x);
        }
        self
    }

    pub fn kind(&self) -> ConicKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn axis(&self) -> &UnitVector {
        &self.axis
    }

    /// Metric half-constant; absent for paraboloids.
    pub fn a(&self) -> Option<f64> {
        self.a
    }

    pub fn c_param(&self) -> f64 {
        self.c_param
    }

    pub fn b(&self) -> Option<f64> {
        self.b
    }

    pub fn eccentricity(&self) -> Option<f64> {
        self.eccentricity
    }

    pub fn focus1(&self) -> Option<&Vector> {
        self.focus1.as_ref()
    }

    pub fn focus2(&self) -> Option<&Vector> {
        self.focus2.as_ref()
    }

    /// `max(1, ‖c‖∞, c_param)`, the yardstick for absolute tolerances.
    pub fn scale(&self) -> f64 {
        1f64.max(self.center.norm_inf()).max(self.c_param)
    }

    /// Right-hand side `K` of `[εv·(x−c)]² − ‖x−c‖² = K`.
    pub fn quadric_rhs(&self) -> Option<f64> {
        match self.kind {
            ConicKind::HyperboloidTwoSheets | ConicKind::Ellipsoid => {
                let a = self.a.unwrap_or(0.0);
                let c = self.c_param;
                Some((c - a) * (c + a))
            }
            ConicKind::Cone => Some(0.0),
            ConicKind::Paraboloid => None,
        }
    }

    /// `a²/c` for hyperboloids and non-spherical ellipsoids.
    pub fn directrix_offset(&self) -> Option<f64> {
        match self.kind {
            ConicKind::HyperboloidTwoSheets | ConicKind::Ellipsoid if self.c_param > 0.0 => {
                let a = self.a?;
                Some(a * a / self.c_param)
            }
            _ => None,
        }
    }

    /// Directrix points `c ± (a²/c)v`.
    pub fn directrix_points(&self) -> Option<(Vector, Vector)> {
        let d = self.directrix_offset()?;
        Some((
            self.center.add_scaled(d, &self.axis),
            self.center.add_scaled(-d, &self.axis),
        ))
    }

    /// Vertices on the major axis: `c ± a·v`, or the single paraboloid
    /// vertex, or the cone apex.
    pub fn vertices(&self) -> Vec<Vector> {
        match (self.kind, self.a) {
            (ConicKind::HyperboloidTwoSheets | ConicKind::Ellipsoid, Some(a)) => vec![
                self.center.add_scaled(a, &self.axis),
                self.center.add_scaled(-a, &self.axis),
            ],
            _ => vec![self.center.clone()],
        }
    }

    fn check_point(&self, x: &Vector) -> Result<()> {
        x.check_dim(self.dim())
    }
}

/// `[εv·(x−c)]² − ‖x−c‖² − K`; zero on the surface.
pub fn quadric_residual(spec: &ConicSpec, x: &Vector) -> Result<f64> {
    spec.check_point(x)?;
    let k = spec.quadric_rhs().ok_or(Error::KindMismatch {
        op: "quadric_residual",
    })?;
    let eps = spec.eccentricity.unwrap_or(0.0);
    let w = x - &spec.center;
    let t = eps * spec.axis.dot(&w);
    Ok(t * t - w.norm_sq() - k)
}

/// `(v·w)² − ‖w‖² + 4c(v·w)` with `w = x − vertex`; zero on the surface.
pub fn paraboloid_residual(spec: &ConicSpec, x: &Vector) -> Result<f64> {
    spec.check_point(x)?;
    if spec.kind != ConicKind::Paraboloid {
        return Err(Error::KindMismatch {
            op: "paraboloid_residual",
        });
    }
    let w = x - &spec.center;
    let t = spec.axis.dot(&w);
    Ok(t * t - w.norm_sq() + 4.0 * spec.c_param * t)
}

/// Implicit residual of whichever form fits the kind.
pub fn surface_residual(spec: &ConicSpec, x: &Vector) -> Result<f64> {
    match spec.kind {
        ConicKind::Paraboloid => paraboloid_residual(spec, x),
        _ => quadric_residual(spec, x),
    }
}

/// `max(scale, ‖x − c‖)`: residuals are quadratic in the distance from the
/// center, so far points are judged against their own magnitude.
pub fn point_scale(spec: &ConicSpec, x: &Vector) -> f64 {
    spec.scale().max(x.distance(&spec.center))
}

/// Residual of the defining metric equation, tagged with the sheet the
/// point is attributed to.
pub fn metric_residual(spec: &ConicSpec, x: &Vector) -> Result<(f64, SheetTag)> {
    spec.check_point(x)?;
    let mismatch = Error::KindMismatch {
        op: "metric_residual",
    };
    let p1 = spec.focus1.as_ref().ok_or(mismatch.clone())?;
    let d1 = p1.distance(x);
    match spec.kind {
        ConicKind::HyperboloidTwoSheets => {
            let p2 = spec.focus2.as_ref().ok_or(mismatch)?;
            let two_a = 2.0 * spec.a.unwrap_or(0.0);
            let d2 = p2.distance(x);
            if spec.axis.dot(&(x - &spec.center)) >= 0.0 {
                Ok((d2 - d1 - two_a, SheetTag::Sheet1))
            } else {
                Ok((d2 - d1 + two_a, SheetTag::Sheet2))
            }
        }
        ConicKind::Ellipsoid => {
            let p2 = spec.focus2.as_ref().ok_or(mismatch)?;
            let two_a = 2.0 * spec.a.unwrap_or(0.0);
            Ok((p2.distance(x) + d1 - two_a, SheetTag::Whole))
        }
        ConicKind::Paraboloid => {
            let p2 = spec.focus2.as_ref().ok_or(mismatch)?;
            Ok((d1 - spec.axis.dot(&(x - p2)), SheetTag::Whole))
        }
        ConicKind::Cone => Err(mismatch),
    }
}

/// Focus–directrix hyperplane of a sheet (or of the paraboloid).
pub fn directrix(spec: &ConicSpec, which: SheetTag) -> Result<Hyperplane> {
    let v = spec.axis.clone();
    match spec.kind {
        ConicKind::Paraboloid => {
            let p2 = spec.focus2.as_ref().expect("paraboloid stores both foci");
            Hyperplane::through(v, p2)
        }
        ConicKind::HyperboloidTwoSheets | ConicKind::Ellipsoid => {
            if spec.kind == ConicKind::Ellipsoid && spec.c_param == 0.0 {
                return Err(Error::UndefinedDirectrix);
            }
            let (d1, d2) = spec.directrix_points().ok_or(Error::UndefinedDirectrix)?;
            match which {
                SheetTag::Sheet1 => Hyperplane::through(v, &d1),
                SheetTag::Sheet2 => Hyperplane::through(v, &d2),
                SheetTag::Whole => Err(Error::KindMismatch { op: "directrix" }),
            }
        }
        ConicKind::Cone => Err(Error::KindMismatch { op: "directrix" }),
    }
}

/// The cone `[εv·(x−c)]² = ‖x−c‖²` that the hyperboloid approaches.
pub fn asymptotic_cone(spec: &ConicSpec) -> Result<ConicSpec> {
    if spec.kind != ConicKind::HyperboloidTwoSheets {
        return Err(Error::KindMismatch {
            op: "asymptotic_cone",
        });
    }
    let eps = spec.eccentricity.expect("hyperboloid has an eccentricity");
    ConicSpec::cone_from_axis(&spec.center, &spec.axis, eps)
}

fn sheet_allowed(kind: ConicKind, sheet: SheetTag) -> bool {
    kind.two_sheeted() || sheet == SheetTag::Whole
}

/// The point with parameter `t` on the planar section of `spec` spanned by
/// the axis and the unit vector `u ⊥ v`.
///
/// `t` is the angle α for hyperbolas and ellipses, β for cones and α for
/// parabolas, following the parametrizations
/// `c ± a·sec α·v + b·tan α·u`, `c ± a|β|v + bβu`, `c + a·cos α·v + b·sin α·u`
/// and `c + c·α²v + 2cαu`.
pub fn point_at(spec: &ConicSpec, sheet: SheetTag, u: &UnitVector, t: f64) -> Result<Vector> {
    point_near(spec, sheet, u, t, None)
}

/// A vertex known more accurately than `center ± a·v`, with the side
/// (`±1`) it lies on.
pub(crate) type Anchor<'a> = (&'a Vector, f64);

/// [`point_at`], measured from `anchor` when given. For hyperbolas and
/// ellipses whose center is far from the region of interest this avoids the
/// cancellation in `c ± a·sec α·v`.
pub(crate) fn point_near(
    spec: &ConicSpec,
    sheet: SheetTag,
    u: &UnitVector,
    t: f64,
    anchor: Option<Anchor<'_>>,
) -> Result<Vector> {
    spec.check_point(u)?;
    if let (Some((vertex, side)), ConicKind::HyperboloidTwoSheets | ConicKind::Ellipsoid) =
        (anchor, spec.kind)
    {
        let a = spec.a.expect("quadric has a");
        let b = spec.b.expect("quadric has b");
        let v = &spec.axis;
        let half = (t / 2.0).sin();
        return match (spec.kind, sheet) {
            (ConicKind::Ellipsoid, SheetTag::Whole) => {
                // a·cos t − side·a, without cancellation on the anchored side
                let along = if side > 0.0 {
                    -2.0 * a * half * half
                } else {
                    2.0 * a * (t / 2.0).cos().powi(2)
                };
                Ok(vertex.add_scaled(along, v).add_scaled(b * t.sin(), u))
            }
            (ConicKind::HyperboloidTwoSheets, SheetTag::Sheet1 | SheetTag::Sheet2) => {
                let s = if sheet == SheetTag::Sheet1 { 1.0 } else { -1.0 };
                let base = if s == side {
                    vertex.clone()
                } else {
                    vertex.add_scaled(-2.0 * a * side, v)
                };
                // a(sec t − 1) = 2a·sin²(t/2)/cos t
                let along = s * 2.0 * a * half * half / t.cos();
                Ok(base.add_scaled(along, v).add_scaled(b * t.tan(), u))
            }
            _ => Err(Error::KindMismatch { op: "point_at" }),
        };
    }
    let bad = Error::KindMismatch { op: "point_at" };
    let c = &spec.center;
    let v = &spec.axis;
    match spec.kind {
        ConicKind::HyperboloidTwoSheets | ConicKind::Cone => {
            let s = match sheet {
                SheetTag::Sheet1 => 1.0,
                SheetTag::Sheet2 => -1.0,
                SheetTag::Whole => return Err(bad),
            };
            let a = spec.a.expect("quadric has a");
            let b = spec.b.expect("quadric has b");
            if spec.kind == ConicKind::Cone {
                Ok(c.add_scaled(s * a * t.abs(), v).add_scaled(b * t, u))
            } else {
                Ok(c.add_scaled(s * a / t.cos(), v).add_scaled(b * t.tan(), u))
            }
        }
        ConicKind::Ellipsoid => {
            if sheet != SheetTag::Whole {
                return Err(bad);
            }
            let a = spec.a.expect("quadric has a");
            let b = spec.b.expect("quadric has b");
            Ok(c.add_scaled(a * t.cos(), v).add_scaled(b * t.sin(), u))
        }
        ConicKind::Paraboloid => {
            if sheet != SheetTag::Whole {
                return Err(bad);
            }
            let k = spec.c_param;
            Ok(c.add_scaled(k * t * t, v).add_scaled(2.0 * k * t, u))
        }
    }
}

/// Seeded random points on `spec` (restricted to one sheet if asked).
pub fn sample_points(spec: &ConicSpec, sheet: SheetTag, count: usize, seed: u64) -> Result<Vec<Vector>> {
    sample_points_in(spec, sheet, count, seed, &[])
}

/// Like [`sample_points`], but every point also stays inside the flat
/// through the center orthogonal to `normals` (the axis must already be
/// orthogonal to them).
///
/// When the flat leaves no direction orthogonal to the axis, the conic is
/// zero-dimensional and its vertices on the requested sheet are returned.
pub fn sample_points_in(
    spec: &ConicSpec,
    sheet: SheetTag,
    count: usize,
    seed: u64,
    normals: &[UnitVector],
) -> Result<Vec<Vector>> {
    sample_points_anchored(spec, sheet, count, seed, normals, None)
}

pub(crate) fn sample_points_anchored(
    spec: &ConicSpec,
    sheet: SheetTag,
    count: usize,
    seed: u64,
    normals: &[UnitVector],
    anchor: Option<Anchor<'_>>,
) -> Result<Vec<Vector>> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be positive".into()));
    }
    if !sheet_allowed(spec.kind, sheet) {
        return Err(Error::KindMismatch { op: "sample_points" });
    }
    let dim = spec.dim();
    let mut basis: Vec<UnitVector> = Vec::new();
    for n in normals
        .iter()
        .map(|n| n.as_vector())
        .chain([spec.axis.as_vector()])
    {
        n.check_dim(dim)?;
        if let Ok(u) = orthonormalize_against(n, &basis) {
            basis.push(u);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    if random_unit_orthogonal(&mut rng, &basis, dim).is_none() {
        let mut vertices = spec.vertices();
        if let (Some((vertex, side)), Some(a)) = (anchor, spec.a) {
            let other = vertex.add_scaled(-2.0 * a * side, &spec.axis);
            vertices = if side > 0.0 {
                vec![vertex.clone(), other]
            } else {
                vec![other, vertex.clone()]
            };
        }
        let mut pts = match (spec.kind, sheet) {
            (ConicKind::HyperboloidTwoSheets, SheetTag::Sheet1) => vec![vertices[0].clone()],
            (ConicKind::HyperboloidTwoSheets, SheetTag::Sheet2) => vec![vertices[1].clone()],
            _ => vertices,
        };
        pts.truncate(count);
        return Ok(pts);
    }

    let amax = FRAC_PI_2 - SEC_MARGIN;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let u = random_unit_orthogonal(&mut rng, &basis, dim).expect("complement is nonempty");
        let s = match sheet {
            SheetTag::Whole if spec.kind.two_sheeted() => {
                if rng.random::<bool>() {
                    SheetTag::Sheet1
                } else {
                    SheetTag::Sheet2
                }
            }
            s => s,
        };
        let t = match spec.kind {
            ConicKind::HyperboloidTwoSheets => rng.random_range(-amax..=amax),
            ConicKind::Ellipsoid => rng.random_range(0.0..2.0 * PI),
            ConicKind::Cone | ConicKind::Paraboloid => rng.random_range(-3.0..=3.0),
        };
        out.push(point_near(spec, s, &u, t, anchor)?);
    }
    Ok(out)
}
