//! Dimension-generic vectors, unit vectors, hyperplanes and Gram–Schmidt.

use std::ops::{Add, Deref, Mul, Neg, Sub};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// A point or direction in R^n. Coordinates are always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    /// Checked constructor: rejects empty and non-finite input.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionTooSmall(0));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Vector(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    /// The i-th coordinate vector of R^dim.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in dot");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        // hypot-style scaling avoids overflow for huge coordinates
        let m = self.norm_inf();
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        let s: f64 = self.0.iter().map(|x| (x / m) * (x / m)).sum();
        m * s.sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn distance(&self, other: &Vector) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in add_scaled");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|a| a * s).collect())
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            })
        }
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        self.add_scaled(-1.0, rhs)
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;
    fn mul(self, rhs: f64) -> Vector {
        self.scale(rhs)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

/// A vector of unit Euclidean length (within 1e-12).
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector(Vector);

impl UnitVector {
    /// Accepts `v` only if it already has unit norm.
    pub fn try_new(v: Vector) -> Result<Self> {
        let n = v.norm();
        if (n - 1.0).abs() <= 1e-12 {
            Ok(UnitVector(v))
        } else {
            Err(Error::NotUnit(n))
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        UnitVector(Vector::basis(dim, i))
    }

    pub(crate) fn new_unchecked(v: Vector) -> Self {
        UnitVector(v)
    }

    pub fn as_vector(&self) -> &Vector {
        &self.0
    }

    pub fn into_vector(self) -> Vector {
        self.0
    }

    pub fn negated(&self) -> UnitVector {
        UnitVector(-&self.0)
    }
}

impl Deref for UnitVector {
    type Target = Vector;
    fn deref(&self) -> &Vector {
        &self.0
    }
}

/// `x / ‖x‖`, failing when `‖x‖ ≤ 1e-12 · max(1, ‖x‖∞)`.
pub fn normalize(x: &Vector) -> Result<UnitVector> {
    normalize_with(x, &Tolerances::default())
}

pub fn normalize_with(x: &Vector, tol: &Tolerances) -> Result<UnitVector> {
    let n = x.norm();
    if !n.is_finite() {
        return Err(Error::NonFinite);
    }
    if n <= tol.zero * x.norm_inf().max(1.0) {
        return Err(Error::ZeroVector);
    }
    let u = x.scale(1.0 / n);
    // one polish step keeps the norm within a couple of ulps of 1
    let m = u.norm();
    Ok(UnitVector(u.scale(1.0 / m)))
}

/// `x − (x·u)u`.
pub fn project_out(x: &Vector, u: &UnitVector) -> Vector {
    x.add_scaled(-x.dot(u), u)
}

/// Gram–Schmidt step with one re-orthogonalization pass.
///
/// `basis` must already be orthonormal.
pub fn orthonormalize_against(x: &Vector, basis: &[UnitVector]) -> Result<UnitVector> {
    orthonormalize_against_with(x, basis, &Tolerances::default())
}

pub fn orthonormalize_against_with(x: &Vector, basis: &[UnitVector], tol: &Tolerances) -> Result<UnitVector> {
    for b in basis {
        x.check_dim(b.dim())?;
    }
    let mut r = x.clone();
    for _ in 0..2 {
        for b in basis {
            r = project_out(&r, b);
        }
    }
    let n = r.norm();
    if !n.is_finite() {
        return Err(Error::NonFinite);
    }
    if n <= tol.zero * x.norm_inf().max(1.0) {
        return Err(Error::DependentVector);
    }
    normalize_with(&r, tol).map_err(|_| Error::DependentVector)
}

/// Completes an orthonormal `basis` of R^dim, returning the missing vectors.
pub fn orthonormal_complement(basis: &[UnitVector], dim: usize) -> Vec<UnitVector> {
    let mut all: Vec<UnitVector> = basis.to_vec();
    let mut out = Vec::new();
    // Try coordinate vectors in order of least overlap with the basis.
    let mut order: Vec<(f64, usize)> = (0..dim)
        .map(|i| (all.iter().map(|b| b.coords()[i].powi(2)).sum::<f64>(), i))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    for (_, i) in order {
        if all.len() == dim {
            break;
        }
        let e = Vector::basis(dim, i);
        let mut r = e.clone();
        for _ in 0..2 {
            for b in &all {
                r = project_out(&r, b);
            }
        }
        if r.norm() > 1e-6 {
            let u = normalize(&r).expect("residual norm checked above");
            all.push(u.clone());
            out.push(u);
        }
    }
    out
}

/// Uniform random unit vector orthogonal to every element of `basis`,
/// or `None` when the basis already spans R^dim.
pub fn random_unit_orthogonal<R: Rng + ?Sized>(
    rng: &mut R,
    basis: &[UnitVector],
    dim: usize,
) -> Option<UnitVector> {
    let comp = orthonormal_complement(basis, dim);
    if comp.is_empty() {
        return None;
    }
    loop {
        let mut x = Vector::zeros(dim);
        for e in &comp {
            let g: f64 = rng.sample(StandardNormal);
            x = x.add_scaled(g, e);
        }
        if let Ok(u) = normalize(&x) {
            return Some(u);
        }
    }
}

/// The hyperplane `h·x = offset` with unit normal `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    normal: UnitVector,
    offset: f64,
}

impl Hyperplane {
    pub fn new(normal: UnitVector, offset: f64) -> Result<Self> {
        if !offset.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Hyperplane { normal, offset })
    }

    /// From an unnormalized normal; both sides are divided by its norm.
    pub fn from_raw(normal: &Vector, offset: f64) -> Result<Self> {
        let n = normal.norm();
        let h = normalize(normal)?;
        Hyperplane::new(h, offset / n)
    }

    /// The plane with normal `normal` passing through `point`.
    pub fn through(normal: UnitVector, point: &Vector) -> Result<Self> {
        point.check_dim(normal.dim())?;
        let offset = normal.dot(point);
        Hyperplane::new(normal, offset)
    }

    pub fn normal(&self) -> &UnitVector {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// Offset of the plane measured from `center`: `offset − h·center`.
    pub fn h_hat(&self, center: &Vector) -> f64 {
        self.offset - self.normal.dot(center)
    }

    /// `h·x − offset`.
    pub fn signed_distance(&self, x: &Vector) -> f64 {
        self.normal.dot(x) - self.offset
    }
}
