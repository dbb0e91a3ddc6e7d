//! Additively weighted bisectors of balls and the hyperplane through the
//! common points of the three bisectors of a ball triple.
//!
//! A point `x` is on the bisector of `[p_j, r_j]` and `[p_k, r_k]` when
//! `‖p_j − x‖ + r_j = ‖p_k − x‖ + r_k`, i.e. the ball centred at `x` with
//! that common radius is internally tangent to both.

use crate::conics::{ConicSpec, SheetTag};
use crate::error::{Error, Result};
use crate::geometry::{normalize, orthonormalize_against_with, Hyperplane, UnitVector, Vector};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vector,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Vector, radius: f64) -> Result<Self> {
        if !radius.is_finite() {
            return Err(Error::NonFinite);
        }
        if radius < 0.0 {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Ball { center, radius })
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }
}

/// `‖p − x‖ + r`: radius of the ball centred at `x` tangent to `b` from outside.
pub fn tangent_radius(x: &Vector, b: &Ball) -> f64 {
    b.center.distance(x) + b.radius
}

/// Bisector of an ordered pair `(j, k)` with `r_j ≥ r_k`.
#[derive(Debug, Clone, PartialEq)]
pub enum Bisector {
    Plane {
        plane: Hyperplane,
        pair: (usize, usize),
    },
    /// Sheet1 of the hyperboloid with foci `p_j`, `p_k` and `2a = r_j − r_k`.
    Sheet {
        conic: ConicSpec,
        sheet: SheetTag,
        pair: (usize, usize),
    },
}

impl Bisector {
    pub fn pair(&self) -> (usize, usize) {
        match self {
            Bisector::Plane { pair, .. } | Bisector::Sheet { pair, .. } => *pair,
        }
    }
}

/// Balls sorted by radius descending, ties by index.
pub fn radius_order(balls: &[Ball]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..balls.len()).collect();
    idx.sort_by(|&a, &b| balls[b].radius.total_cmp(&balls[a].radius).then(a.cmp(&b)));
    idx
}

pub(crate) fn radii_equal(r1: f64, r2: f64, tol: &Tolerances) -> bool {
    (r1 - r2).abs() <= tol.radius_eq * 1f64.max(r1).max(r2)
}

pub(crate) fn check_dims(balls: &[Ball]) -> Result<usize> {
    let dim = balls.first().map(Ball::dim).unwrap_or(0);
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    for b in balls {
        b.center.check_dim(dim)?;
    }
    Ok(dim)
}

pub fn bisector(bj: &Ball, bk: &Ball) -> Result<Bisector> {
    bisector_with(bj, bk, &Tolerances::default())
}

pub fn bisector_with(bj: &Ball, bk: &Ball, tol: &Tolerances) -> Result<Bisector> {
    bisector_of(&[bj.clone(), bk.clone()], 0, 1, tol)
}

/// Bisector of `balls[i]` and `balls[k]`; the returned pair is reordered
/// so the larger ball comes first.
pub fn bisector_of(balls: &[Ball], i: usize, k: usize, tol: &Tolerances) -> Result<Bisector> {
    check_dims(balls)?;
    let n = balls.len();
    if i >= n || k >= n || i == k {
        return Err(Error::InvalidInput(format!("bad ball pair ({i}, {k}) of {n}")));
    }
    let (j, k) = if balls[k].radius > balls[i].radius && !radii_equal(balls[i].radius, balls[k].radius, tol) {
        (k, i)
    } else {
        (i, k)
    };
    let (bj, bk) = (&balls[j], &balls[k]);
    let diff = &bj.center - &bk.center;
    let l = diff.norm();
    if !l.is_finite() {
        return Err(Error::NonFinite);
    }
    let coincident = l <= tol.zero * 1f64.max(bj.center.norm_inf()).max(bk.center.norm_inf());
    if radii_equal(bj.radius, bk.radius, tol) {
        if coincident {
            return Err(Error::CoincidentCenters(j, k));
        }
        let normal = normalize(&diff)?;
        let offset = diff.dot(&(&bj.center + &bk.center)) / (2.0 * l);
        return Ok(Bisector::Plane {
            plane: Hyperplane::new(normal, offset)?,
            pair: (j, k),
        });
    }
    if coincident {
        return Err(Error::CoincidentCenters(j, k));
    }
    let dr = bj.radius - bk.radius;
    if dr >= l - tol.boundary * 1f64.max(l).max(bj.radius) {
        return Err(Error::ContainedBall {
            larger: j,
            smaller: k,
        });
    }
    let conic =
        ConicSpec::hyperboloid_from_foci_with(&bj.center, &bk.center, dr, tol).map_err(|e| match e {
            Error::DegenerateRays | Error::InvalidConstant(_) => Error::ContainedBall {
                larger: j,
                smaller: k,
            },
            e => e,
        })?;
    Ok(Bisector::Sheet {
        conic,
        sheet: SheetTag::Sheet1,
        pair: (j, k),
    })
}

/// Smallest ball containing both; the larger ball if it already contains
/// the other.
pub fn min_containing_two(bj: &Ball, bk: &Ball) -> Result<Ball> {
    let tol = Tolerances::default();
    check_dims(&[bj.clone(), bk.clone()])?;
    let (big, small) = if bk.radius > bj.radius { (bk, bj) } else { (bj, bk) };
    let l = big.center.distance(&small.center);
    if big.radius - small.radius >= l {
        return Ok(big.clone());
    }
    if radii_equal(big.radius, small.radius, &tol) {
        let mid = (&big.center + &small.center).scale(0.5);
        return Ball::new(mid, l / 2.0 + big.radius);
    }
    match bisector_with(big, small, &tol) {
        Ok(Bisector::Sheet { conic, .. }) => {
            let vertex = conic.vertices().swap_remove(0);
            let r = tangent_radius(&vertex, big);
            Ball::new(vertex, r)
        }
        Ok(Bisector::Plane { .. }) => unreachable!("radii are distinct"),
        // containment up to tolerance
        Err(Error::ContainedBall { .. }) => Ok(big.clone()),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleCase {
    /// `r_j > r_k > r_l`.
    Distinct,
    /// `r_k = r_l`: the plane bisector of k and l.
    KlEqual,
    /// `r_j = r_k`: the plane bisector of j and k.
    JkEqual,
}

impl TripleCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            TripleCase::Distinct => "distinct",
            TripleCase::KlEqual => "r_k=r_l",
            TripleCase::JkEqual => "r_j=r_k",
        }
    }
}

/// Hyperplane containing every common point of any two of the three
/// bisectors of a ball triple.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleHyperplane {
    pub plane: Hyperplane,
    /// Common point of the two directrices (distinct radii only).
    pub d_point: Option<Vector>,
    pub u_t: Option<UnitVector>,
    pub case: TripleCase,
    /// Input indices sorted by radius, `[j, k, l]`.
    pub order: [usize; 3],
}

fn check_affine(points: &[&Vector], tol: &Tolerances) -> Result<()> {
    let mut basis: Vec<UnitVector> = Vec::new();
    let base = points[0];
    for p in &points[1..] {
        let d = *p - base;
        let scale = d.norm();
        if scale <= tol.zero * 1f64.max(base.norm_inf()) {
            return Err(Error::AffineDependence);
        }
        let d = d.scale(1.0 / scale);
        basis.push(
            orthonormalize_against_with(&d, &basis, &Tolerances { zero: 1e-10, ..*tol })
                .map_err(|_| Error::AffineDependence)?,
        );
    }
    Ok(())
}

pub fn triple_hyperplane(bj: &Ball, bk: &Ball, bl: &Ball) -> Result<TripleHyperplane> {
    triple_hyperplane_with(bj, bk, bl, &Tolerances::default())
}

pub fn triple_hyperplane_with(b0: &Ball, b1: &Ball, b2: &Ball, tol: &Tolerances) -> Result<TripleHyperplane> {
    let balls = [b0.clone(), b1.clone(), b2.clone()];
    check_dims(&balls)?;
    check_affine(&[&b0.center, &b1.center, &b2.center], tol)?;
    let o = radius_order(&balls);
    let order = [o[0], o[1], o[2]];
    let (j, k, l) = (order[0], order[1], order[2]);
    let (rj, rk, rl) = (balls[j].radius, balls[k].radius, balls[l].radius);
    if radii_equal(rj, rl, tol) {
        return Err(Error::AllRadiiEqual);
    }
    let b_jk = bisector_of(&balls, j, k, tol)?;
    let b_jl = bisector_of(&balls, j, l, tol)?;
    let b_kl = bisector_of(&balls, k, l, tol)?;

    if radii_equal(rk, rl, tol) {
        let Bisector::Plane { plane, .. } = b_kl else {
            unreachable!("equal radii give a plane")
        };
        return Ok(TripleHyperplane {
            plane,
            d_point: None,
            u_t: None,
            case: TripleCase::KlEqual,
            order,
        });
    }
    if radii_equal(rj, rk, tol) {
        let Bisector::Plane { plane, .. } = b_jk else {
            unreachable!("equal radii give a plane")
        };
        return Ok(TripleHyperplane {
            plane,
            d_point: None,
            u_t: None,
            case: TripleCase::JkEqual,
            order,
        });
    }

    let (Bisector::Sheet { conic: h_jk, .. }, Bisector::Sheet { conic: h_jl, .. }) = (b_jk, b_jl) else {
        unreachable!("distinct radii give sheets")
    };
    let (plane, d, u) = directrix_plane(&h_jk, &h_jl)?;
    Ok(TripleHyperplane {
        plane,
        d_point: Some(d),
        u_t: Some(u),
        case: TripleCase::Distinct,
        order,
    })
}

/// The plane `(ε₁v₁ − ε₂v₂)·x = const` obtained by subtracting the Sheet1
/// focus–directrix equations of two hyperboloids sharing the focus `p1`,
/// together with the common directrix point and the in-plane direction used
/// to find it.
pub(crate) fn directrix_plane(h1: &ConicSpec, h2: &ConicSpec) -> Result<(Hyperplane, Vector, UnitVector)> {
    let (v1, v2) = (h1.axis(), h2.axis());
    let e1 = h1.eccentricity().expect("hyperboloid");
    let e2 = h2.eccentricity().expect("hyperboloid");
    let d1 = h1.directrix_points().expect("hyperboloid").0;
    let d2 = h2.directrix_points().expect("hyperboloid").0;
    let ht = v1.scale(e1).add_scaled(-e2, v2);
    let h_unit = normalize(&ht).map_err(|_| Error::AffineDependence)?;
    let u = normalize(&h_unit.add_scaled(-v1.dot(&h_unit), v1)).map_err(|_| Error::AffineDependence)?;
    let denom = v2.dot(&u);
    if denom.abs() <= 1e-12 {
        return Err(Error::AffineDependence);
    }
    let d = d1.add_scaled(v2.dot(&(&d2 - &d1)) / denom, &u);
    let plane = Hyperplane::through(h_unit, &d)?;
    Ok((plane, d, u))
}

/// Closed-form `(N, rhs)` with `N·x = rhs` the triple hyperplane, for
/// distinct radii.
pub fn symmetric_normal(b0: &Ball, b1: &Ball, b2: &Ball) -> Result<(Vector, f64)> {
    let tol = Tolerances::default();
    let balls = [b0.clone(), b1.clone(), b2.clone()];
    check_dims(&balls)?;
    check_affine(&[&b0.center, &b1.center, &b2.center], &tol)?;
    let o = radius_order(&balls);
    let (bj, bk, bl) = (&balls[o[0]], &balls[o[1]], &balls[o[2]]);
    let (rj, rk, rl) = (bj.radius, bk.radius, bl.radius);
    if radii_equal(rj, rl, &tol) {
        return Err(Error::AllRadiiEqual);
    }
    if radii_equal(rj, rk, &tol) || radii_equal(rk, rl, &tol) {
        return Err(Error::InvalidInput("closed form needs distinct radii".into()));
    }
    for (x, y) in [(o[0], o[1]), (o[0], o[2]), (o[1], o[2])] {
        bisector_of(&balls, x, y, &tol)?;
    }
    let (pj, pk, pl) = (&bj.center, &bk.center, &bl.center);
    let den = (rj - rk) * (rj - rl);
    let n = (pl - pk)
        .scale(rj)
        .add_scaled(rk, &(pj - pl))
        .add_scaled(rl, &(pk - pj))
        .scale(1.0 / den);
    let (sj, sk, sl) = (pj.norm_sq(), pk.norm_sq(), pl.norm_sq());
    let rhs = (rj * (sl - sk) + rk * (sj - sl) + rl * (sk - sj)) / (2.0 * den) - (rk - rl) / 2.0;
    Ok((n, rhs))
}
