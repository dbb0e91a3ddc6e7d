mod common;

use common::*;
use nconic::apollonius::{solve_apollonius, verify_tangency, ApolloniusOptions, SignPattern, Tangency};
use nconic::{Ball, Error, Vector};
use proptest::prelude::*;
use rand::Rng;

/// Roots of ‖x − p_i‖ = R − σ_i r_i for one pattern, found without the
/// cascade: differencing against sphere 0 makes x affine in R, then sphere
/// 0 itself gives a quadratic in R. Each root comes with its margin
/// `min(R, min_i (R − σ_i r_i))`; `None` when the linear part is singular
/// or the quadratic is too close to a double root to compare.
fn oracle(balls: &[Ball], pattern: &[i8]) -> Option<Vec<(Vec<f64>, f64, f64)>> {
    let n = balls[0].dim();
    let p: Vec<&[f64]> = balls.iter().map(|b| b.center.coords()).collect();
    let s: Vec<f64> = balls
        .iter()
        .zip(pattern)
        .map(|(b, &g)| f64::from(g) * b.radius)
        .collect();
    let sq = |v: &[f64]| v.iter().map(|t| t * t).sum::<f64>();
    let m: Vec<Vec<f64>> = (1..=n)
        .map(|i| (0..n).map(|k| 2.0 * (p[i][k] - p[0][k])).collect())
        .collect();
    let b0: Vec<f64> = (1..=n)
        .map(|i| sq(p[i]) - sq(p[0]) - s[i] * s[i] + s[0] * s[0])
        .collect();
    let b1: Vec<f64> = (1..=n).map(|i| 2.0 * (s[i] - s[0])).collect();
    let x0 = solve_linear(m.clone(), b0)?;
    let x1 = solve_linear(m, b1)?;
    let y0: Vec<f64> = (0..n).map(|k| x0[k] - p[0][k]).collect();
    let qa = sq(&x1) - 1.0;
    let qb = x1.iter().zip(&y0).map(|(a, b)| a * b).sum::<f64>() + s[0];
    let qc = sq(&y0) - s[0] * s[0];
    let mut roots = Vec::new();
    if qa.abs() < 1e-9 {
        roots.push(-qc / (2.0 * qb));
    } else {
        let disc = qb * qb - qa * qc;
        let mag = qb * qb + (qa * qc).abs();
        if disc.abs() < 1e-6 * mag {
            return None;
        }
        if disc > 0.0 {
            let q = -(qb + qb.signum() * disc.sqrt());
            roots.push(q / qa);
            roots.push(qc / q);
        }
    }
    Some(
        roots
            .into_iter()
            .map(|r| {
                let x: Vec<f64> = (0..n).map(|k| x0[k] + r * x1[k]).collect();
                let margin = s.iter().fold(r, |m, si| m.min(r - si));
                (x, r, margin)
            })
            .collect(),
    )
}

fn rand_spheres(rng: &mut impl Rng, n: usize) -> Vec<Ball> {
    (0..=n)
        .map(|_| Ball::new(rand_point(rng, n, 5.0), rng.random_range(0.2..2.0)).unwrap())
        .collect()
}

fn close(a: &Vector, r: f64, x: &[f64], rr: f64, tol: f64) -> bool {
    let d = a
        .coords()
        .iter()
        .zip(x)
        .fold(0f64, |m, (u, v)| m.max((u - v).abs()));
    d <= tol && (r - rr).abs() <= tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // per pattern, the emitted circles are exactly the oracle's admissible
    // roots
    #[test]
    fn matches_the_algebraic_oracle(seed in any::<u64>(), n in 2usize..4) {
        let mut rng = rng(seed);
        let balls = rand_spheres(&mut rng, n);
        let scale = ball_scale(&balls);
        let sol = match solve_apollonius(&balls, &ApolloniusOptions::default()) {
            Ok(s) => s,
            Err(Error::AffineDependence) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        let tol = 1e-6 * scale;
        for pattern in SignPattern::all(n + 1) {
            let Some(roots) = oracle(&balls, &pattern.0) else { continue };
            let emitted: Vec<_> = sol.circles.iter().filter(|c| c.pattern == pattern).collect();
            for c in &emitted {
                prop_assert!(
                    roots.iter().any(|(x, r, m)| *m > -tol && close(&c.center, c.radius, x, *r, tol)),
                    "spurious circle {:?} r={} for {:?}", c.center, c.radius, pattern
                );
            }
            for (x, r, m) in &roots {
                if *m > 1e-4 * scale {
                    prop_assert!(
                        emitted.iter().any(|c| close(&c.center, c.radius, x, *r, tol)),
                        "missed circle {:?} r={} for {:?}", x, r, pattern
                    );
                }
            }
        }
    }

    #[test]
    fn emitted_circles_are_tangent(seed in any::<u64>(), n in 2usize..4) {
        let mut rng = rng(seed);
        let balls = rand_spheres(&mut rng, n);
        let Ok(sol) = solve_apollonius(&balls, &ApolloniusOptions::default()) else { return Ok(()) };
        let scale = ball_scale(&balls);
        for c in &sol.circles {
            prop_assert!(c.radius >= 0.0);
            prop_assert!(verify_tangency(c, &balls) <= 1e-8 * scale);
            prop_assert_eq!(c.residual, verify_tangency(c, &balls));
            for ((t, &g), b) in c.tangency.iter().zip(&c.pattern.0).zip(&balls) {
                let d = c.center.distance(&b.center);
                match t {
                    Tangency::Internal => {
                        prop_assert_eq!(g, 1);
                        prop_assert!((d - (c.radius - b.radius)).abs() <= 1e-8 * scale);
                    }
                    Tangency::External => {
                        prop_assert_eq!(g, -1);
                        prop_assert!((d - (c.radius + b.radius)).abs() <= 1e-8 * scale);
                    }
                }
            }
        }
    }

    // three disjoint circles, none inside another, have all eight
    #[test]
    fn separated_circles_give_eight(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let balls = loop {
            let b = rand_spheres(&mut rng, 2);
            let apart = (0..3).all(|i| (i + 1..3).all(|k| {
                b[i].center.distance(&b[k].center) > b[i].radius + b[k].radius + 0.1
            }));
            let (p, q, r) = (b[0].center.coords(), b[1].center.coords(), b[2].center.coords());
            let area = ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])).abs();
            if apart && area > 1.0 {
                break b;
            }
        };
        let sol = solve_apollonius(&balls, &ApolloniusOptions::default()).unwrap();
        // a pattern and its negation may share their two circles, so only
        // the total is fixed
        prop_assert_eq!(sol.circles.len(), 8, "{:?}", sol.failures);
    }

    // the shift constant does not change the answer
    #[test]
    fn shift_invariance(seed in any::<u64>(), extra in 0.5f64..20.0) {
        let mut rng = rng(seed);
        let balls = rand_spheres(&mut rng, 2);
        let Ok(a) = solve_apollonius(&balls, &ApolloniusOptions::default()) else { return Ok(()) };
        let max_r = balls.iter().fold(0f64, |m, b| m.max(b.radius));
        let opts = ApolloniusOptions { shift: Some(max_r + extra), ..Default::default() };
        let b = solve_apollonius(&balls, &opts).unwrap();
        let scale = ball_scale(&balls);
        for c in a.circles.iter().filter(|c| c.radius > 1e-4 * scale) {
            prop_assert!(b.circles.iter().any(|d| d.pattern == c.pattern
                && close(&d.center, d.radius, c.center.coords(), c.radius, 1e-7 * scale)));
        }
    }

    // running the negated patterns covers the same geometric circles
    #[test]
    fn negated_patterns_cover_the_same_set(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let balls = rand_spheres(&mut rng, 2);
        let Ok(a) = solve_apollonius(&balls, &ApolloniusOptions::default()) else { return Ok(()) };
        let neg: Vec<SignPattern> = SignPattern::all(3).iter().map(SignPattern::negated).collect();
        let b = solve_apollonius(&balls, &ApolloniusOptions { patterns: Some(neg), ..Default::default() }).unwrap();
        prop_assert_eq!(a.circles.len(), b.circles.len());
        for c in &a.circles {
            prop_assert!(b.circles.iter().any(|d| close(&d.center, d.radius, c.center.coords(), c.radius, 1e-8)));
        }
    }
}

#[test]
fn descartes_circles() {
    let balls = descartes();
    let sol = solve_apollonius(&balls, &ApolloniusOptions::default()).unwrap();
    let outer = sol
        .circles
        .iter()
        .find(|c| c.pattern.0 == [1, 1, 1])
        .expect("enclosing circle");
    assert!(outer.center.distance(&vec(&[3.0, 4.0])) < 1e-9);
    assert!((outer.radius - 6.0).abs() < 1e-9);
    let inner = sol
        .circles
        .iter()
        .find(|c| c.pattern.0 == [-1, -1, -1])
        .expect("inner Soddy circle");
    assert!((inner.radius - 6.0 / 23.0).abs() < 1e-9);
    assert!(inner.center.distance(&vec(&[21.0 / 23.0, 20.0 / 23.0])) < 1e-9);
}

#[test]
fn verify_tangency_fixture() {
    let balls = descartes();
    let sol = solve_apollonius(&balls, &ApolloniusOptions::default()).unwrap();
    let mut c = sol
        .circles
        .iter()
        .find(|c| c.pattern.0 == [1, 1, 1])
        .unwrap()
        .clone();
    c.center = vec(&[3.0, 4.0]);
    c.radius = 6.0;
    assert!(verify_tangency(&c, &balls) < 1e-12);
    c.radius += 1e-3;
    assert!((verify_tangency(&c, &balls) - 1e-3).abs() < 1e-12);
}

#[test]
fn input_errors() {
    let collinear = [
        ball(&[0.0, 0.0], 1.0),
        ball(&[3.0, 0.0], 1.0),
        ball(&[6.0, 0.0], 1.0),
    ];
    assert_eq!(
        solve_apollonius(&collinear, &ApolloniusOptions::default()),
        Err(Error::AffineDependence)
    );
    let two = [ball(&[0.0, 0.0], 1.0), ball(&[3.0, 0.0], 1.0)];
    assert!(solve_apollonius(&two, &ApolloniusOptions::default()).is_err());
    let bad_shift = ApolloniusOptions {
        shift: Some(1.0),
        ..Default::default()
    };
    assert!(solve_apollonius(&descartes(), &bad_shift).is_err());
}
