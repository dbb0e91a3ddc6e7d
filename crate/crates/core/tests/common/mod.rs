// Shared generators for the integration tests. Everything is seeded.
#![allow(dead_code)]

use nconic::{Ball, ConicKind, ConicSpec, Hyperplane, UnitVector, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub const DIMS: [usize; 4] = [2, 3, 5, 8];
pub const KINDS: [ConicKind; 4] = [
    ConicKind::HyperboloidTwoSheets,
    ConicKind::Ellipsoid,
    ConicKind::Paraboloid,
    ConicKind::Cone,
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vec(x: &[f64]) -> Vector {
    Vector::new(x.to_vec()).unwrap()
}

pub fn ball(c: &[f64], r: f64) -> Ball {
    Ball::new(vec(c), r).unwrap()
}

pub fn descartes() -> Vec<Ball> {
    vec![
        ball(&[0.0, 0.0], 1.0),
        ball(&[3.0, 0.0], 2.0),
        ball(&[0.0, 4.0], 3.0),
    ]
}

pub fn rand_point(rng: &mut impl Rng, n: usize, half: f64) -> Vector {
    Vector::new((0..n).map(|_| rng.random_range(-half..half)).collect()).unwrap()
}

pub fn rand_unit(rng: &mut impl Rng, n: usize) -> UnitVector {
    loop {
        let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            let u: Vec<f64> = g.iter().map(|x| x / norm).collect();
            return UnitVector::try_new(Vector::new(u).unwrap()).unwrap();
        }
    }
}

/// A unit vector orthogonal to `v` (n ≥ 2).
pub fn rand_unit_perp(rng: &mut impl Rng, v: &UnitVector) -> UnitVector {
    loop {
        let g = rand_unit(rng, v.dim());
        let w = g.add_scaled(-g.dot(v), v);
        let norm = w.norm();
        if norm > 1e-3 {
            return UnitVector::try_new(w.scale(1.0 / norm)).unwrap();
        }
    }
}

/// Random conic of the given kind, built through the focal constructors
/// where they exist.
pub fn rand_spec(rng: &mut impl Rng, kind: ConicKind, n: usize) -> ConicSpec {
    let center = rand_point(rng, n, 5.0);
    let v = rand_unit(rng, n);
    match kind {
        ConicKind::HyperboloidTwoSheets => {
            let a = rng.random_range(0.2..3.0);
            let eps = rng.random_range(1.05..4.0);
            let c = a * eps;
            ConicSpec::hyperboloid_from_foci(&center.add_scaled(c, &v), &center.add_scaled(-c, &v), 2.0 * a)
                .unwrap()
        }
        ConicKind::Ellipsoid => {
            let a = rng.random_range(0.2..3.0);
            let eps = rng.random_range(0.05..0.95);
            let c = a * eps;
            ConicSpec::ellipsoid_from_foci(&center.add_scaled(c, &v), &center.add_scaled(-c, &v), 2.0 * a)
                .unwrap()
        }
        ConicKind::Paraboloid => {
            let c = rng.random_range(0.2..3.0);
            // focus at vertex + c v, directrix through vertex − c v
            ConicSpec::paraboloid_from_points(&center.add_scaled(c, &v), &center.add_scaled(-c, &v)).unwrap()
        }
        ConicKind::Cone => ConicSpec::cone_from_axis(&center, &v, rng.random_range(1.05..4.0)).unwrap(),
    }
}

/// A plane with normal `σv + ρw` (w ⊥ v) at signed offset `h_hat` from the
/// center of `spec`.
pub fn plane_with_rho(rng: &mut impl Rng, spec: &ConicSpec, rho: f64, h_hat: f64) -> Hyperplane {
    let v = spec.axis();
    let w = rand_unit_perp(rng, v);
    let sigma = (1.0 - rho * rho).max(0.0).sqrt();
    let h = v.scale(sigma).add_scaled(rho, &w);
    let h = UnitVector::try_new(h.scale(1.0 / h.norm())).unwrap();
    let offset = h.dot(spec.center()) + h_hat;
    Hyperplane::new(h, offset).unwrap()
}

/// Mixed plane population: generic normals plus near-parabolic,
/// axis-aligned and axis-containing ones.
pub fn rand_plane(rng: &mut impl Rng, spec: &ConicSpec) -> Hyperplane {
    let s = spec.scale();
    let h_hat = rng.random_range(-3.0 * s..3.0 * s);
    let eps = spec.eccentricity().unwrap_or(1.0);
    match rng.random_range(0..10) {
        0 | 1 => {
            // near the parabolic transition ερ = 1 (ρ = 1 for paraboloids)
            let delta =
                10f64.powf(rng.random_range(-8.0..-2.0)) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let rho = ((1.0 + delta) / eps).clamp(0.0, 1.0);
            plane_with_rho(rng, spec, rho, h_hat)
        }
        2 => plane_with_rho(rng, spec, 0.0, h_hat),
        3 => plane_with_rho(rng, spec, 1.0, h_hat),
        _ => {
            let h = rand_unit(rng, spec.dim());
            let offset = h.dot(spec.center()) + h_hat;
            Hyperplane::new(h, offset).unwrap()
        }
    }
}

/// `s` balls in R^n sharing a common tangent point `x0`: every radius is
/// `z − ‖p_i − x0‖`, so the bisector intersection is nonempty.
pub fn rand_balls_through(rng: &mut impl Rng, n: usize, s: usize) -> (Vec<Ball>, Vector) {
    loop {
        let x0 = rand_point(rng, n, 3.0);
        let centers: Vec<Vector> = (0..s).map(|_| rand_point(rng, n, 5.0)).collect();
        let far = centers.iter().map(|p| p.distance(&x0)).fold(0.0, f64::max);
        let z = far + rng.random_range(0.5..3.0);
        let balls: Vec<Ball> = centers
            .into_iter()
            .map(|p| {
                let r = z - p.distance(&x0);
                Ball::new(p, r).unwrap()
            })
            .collect();
        // keep clear of containment and near-equal radii
        let ok = (0..s).all(|i| {
            (i + 1..s).all(|k| {
                let l = balls[i].center.distance(&balls[k].center);
                let dr = (balls[i].radius - balls[k].radius).abs();
                dr < 0.98 * l && dr > 1e-3
            })
        });
        if ok {
            return (balls, x0);
        }
    }
}

pub fn ball_scale(balls: &[Ball]) -> f64 {
    balls
        .iter()
        .fold(1f64, |m, b| m.max(b.center.norm_inf()).max(b.radius))
}

/// `max z_i − min z_i` with `z_i = ‖p_i − x‖ + r_i`, computed from raw
/// coordinates.
pub fn spread(x: &Vector, balls: &[Ball]) -> f64 {
    let zs: Vec<f64> = balls
        .iter()
        .map(|b| {
            let d2: f64 = x
                .coords()
                .iter()
                .zip(b.center.coords())
                .map(|(a, c)| (a - c) * (a - c))
                .sum();
            d2.sqrt() + b.radius
        })
        .collect();
    let hi = zs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = zs.iter().cloned().fold(f64::INFINITY, f64::min);
    hi - lo
}

/// Dense Gaussian elimination with partial pivoting; `None` when singular.
#[allow(clippy::needless_range_loop)]
pub fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-13 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

/// Gauss–Newton with minimum-norm steps on `z_0 = z_i` for all i, from `x`.
/// Returns the converged point, if any.
pub fn newton_equal_z(balls: &[Ball], start: &Vector) -> Option<Vector> {
    let n = start.dim();
    let m = balls.len() - 1;
    let mut x = start.coords().to_vec();
    let scale = ball_scale(balls);
    for _ in 0..100 {
        let grads: Vec<(f64, Vec<f64>)> = balls
            .iter()
            .map(|b| {
                let d: Vec<f64> = x.iter().zip(b.center.coords()).map(|(a, c)| a - c).collect();
                let l = d.iter().map(|t| t * t).sum::<f64>().sqrt();
                (l + b.radius, d.iter().map(|t| t / l).collect())
            })
            .collect();
        let f: Vec<f64> = (1..=m).map(|i| grads[0].0 - grads[i].0).collect();
        if f.iter().all(|t| t.abs() <= 1e-13 * scale) {
            return Some(Vector::new(x).unwrap());
        }
        let j: Vec<Vec<f64>> = (1..=m)
            .map(|i| (0..n).map(|k| grads[0].1[k] - grads[i].1[k]).collect())
            .collect();
        let jjt: Vec<Vec<f64>> = (0..m)
            .map(|r| (0..m).map(|c| (0..n).map(|k| j[r][k] * j[c][k]).sum()).collect())
            .collect();
        let y = solve_linear(jjt, f.clone())?;
        for k in 0..n {
            x[k] -= (0..m).map(|r| j[r][k] * y[r]).sum::<f64>();
        }
        if x.iter().any(|t| !t.is_finite()) {
            return None;
        }
    }
    None
}
