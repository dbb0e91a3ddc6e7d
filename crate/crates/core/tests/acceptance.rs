// Acceptance suite: one PASS/FAIL line per criterion. Runs without the
// libtest harness so the lines show up in plain `cargo test` output; the
// process exits nonzero if any criterion fails.

mod common;

use std::time::Instant;

use common::*;
use nconic::apollonius::{solve_apollonius, ApolloniusOptions};
use nconic::bisectors::{symmetric_normal, triple_hyperplane, TripleCase};
use nconic::cascade::{intersect_bisectors, sample_result, CascadeKind, CascadeResult};
use nconic::conics::{
    asymptotic_cone, directrix, metric_residual, point_at, point_scale, sample_points, surface_residual,
};
use nconic::slicer::{classify_slice, near_vertex, sample_slice, slice, SliceClass, SliceShape};
use nconic::{Ball, ConicKind, ConicSpec, Hyperplane, SheetTag, UnitVector, Vector};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn sheets(kind: ConicKind) -> &'static [SheetTag] {
    match kind {
        ConicKind::HyperboloidTwoSheets | ConicKind::Cone => &[SheetTag::Sheet1, SheetTag::Sheet2],
        _ => &[SheetTag::Whole],
    }
}

// 1. residuals of sampled points, metric and quadratic forms and the
// focus–directrix relation
fn conic_residuals() -> Outcome {
    let mut worst_q = 0f64;
    let mut worst_m = 0f64;
    let mut worst_d = 0f64;
    let mut points = 0usize;
    let mut rng = rng(1);
    for kind in KINDS {
        for i in 0..100 {
            let n = DIMS[i % 4];
            let spec = rand_spec(&mut rng, kind, n);
            let per = 1000 / sheets(kind).len();
            for (si, &sheet) in sheets(kind).iter().enumerate() {
                let pts = sample_points(&spec, sheet, per, (i * 2 + si) as u64).unwrap();
                for x in &pts {
                    points += 1;
                    let s = point_scale(&spec, x);
                    let q = surface_residual(&spec, x).unwrap().abs() / (s * s);
                    worst_q = worst_q.max(q);
                    if kind == ConicKind::Cone {
                        continue;
                    }
                    let (m, _) = metric_residual(&spec, x).unwrap();
                    worst_m = worst_m.max(m.abs() / s);
                    let eps = spec.eccentricity().unwrap_or(1.0);
                    let pairs: Vec<(&Vector, Hyperplane)> = match kind {
                        ConicKind::Paraboloid => {
                            vec![(spec.focus1().unwrap(), directrix(&spec, SheetTag::Whole).unwrap())]
                        }
                        _ => vec![
                            (
                                spec.focus1().unwrap(),
                                directrix(&spec, SheetTag::Sheet1).unwrap(),
                            ),
                            (
                                spec.focus2().unwrap(),
                                directrix(&spec, SheetTag::Sheet2).unwrap(),
                            ),
                        ],
                    };
                    for (f, plane) in pairs {
                        let r = f.distance(x) - eps * plane.signed_distance(x).abs();
                        worst_d = worst_d.max(r.abs() / s);
                    }
                }
            }
        }
    }
    let pass = worst_q <= 1e-8 && worst_m <= 1e-8 && worst_d <= 1e-8;
    outcome(
        pass,
        format!(
            "{points} points; worst quadratic {worst_q:.1e}·s², metric {worst_m:.1e}·s, directrix {worst_d:.1e}·s (limit 1e-8)"
        ),
    )
}

/// `ρ = ‖v − σh‖`.
fn rho_of(spec: &ConicSpec, plane: &Hyperplane) -> (f64, f64) {
    let v = spec.axis();
    let h = plane.normal();
    let sigma = h.dot(v);
    (v.add_scaled(-sigma, h).norm(), sigma)
}

/// Maximum over the plane of the interior-positive implicit function, when
/// it is concave there (the elliptic side); `None` otherwise.
fn concave_max(spec: &ConicSpec, plane: &Hyperplane) -> Option<f64> {
    let (rho, sigma) = rho_of(spec, plane);
    let hh = plane.offset() - plane.normal().dot(spec.center());
    match spec.kind() {
        ConicKind::Paraboloid => {
            // (σĥ + ρt)² − ĥ² − t² + 4c(σĥ + ρt)
            let c = spec.c_param();
            let a = rho * rho - 1.0;
            let b = sigma * hh * rho + 2.0 * c * rho;
            let c0 = sigma * sigma * hh * hh - hh * hh + 4.0 * c * sigma * hh;
            (a < 0.0).then(|| c0 - b * b / a)
        }
        _ => {
            // ε²(σĥ + ρt)² − ĥ² − t² − K
            let eps = spec.eccentricity().unwrap();
            let k = spec.quadric_rhs().unwrap();
            let a = eps * eps * rho * rho - 1.0;
            let b = eps * eps * sigma * hh * rho;
            let c0 = eps * eps * sigma * sigma * hh * hh - hh * hh - k;
            (a < 0.0).then(|| c0 - b * b / a)
        }
    }
}

struct SliceStats {
    pairs: usize,
    checked_class: usize,
    misclassified: usize,
    class_errors: Vec<String>,
    nonempty: usize,
    worst_res: f64,
    worst_res_fixed: f64,
    worst_plane: f64,
    ecc_checked: usize,
    worst_ecc: f64,
}

// 2 and 4 share one population of 10 000 (conic, plane) pairs.
fn slice_population() -> SliceStats {
    let mut st = SliceStats {
        pairs: 0,
        checked_class: 0,
        misclassified: 0,
        class_errors: Vec::new(),
        nonempty: 0,
        worst_res: 0.0,
        worst_res_fixed: 0.0,
        worst_plane: 0.0,
        ecc_checked: 0,
        worst_ecc: 0.0,
    };
    let mut rng = rng(2);
    for i in 0..10_000usize {
        let kind = KINDS[i % 4];
        let n = DIMS[(i / 4) % 4];
        let spec = rand_spec(&mut rng, kind, n);
        let plane = rand_plane(&mut rng, &spec);
        st.pairs += 1;
        let class = classify_slice(&spec, &plane).unwrap();
        let (rho, _) = rho_of(&spec, &plane);
        let er = match kind {
            ConicKind::Paraboloid => rho,
            _ => spec.eccentricity().unwrap() * rho,
        };
        let band = 2e-9 * (1.0 + er);
        let s = spec.scale();
        let hh = plane.offset() - plane.normal().dot(spec.center());
        let s2 = s.max(hh.abs()).powi(2);
        let expect_ok = if er > 1.0 + band {
            match kind {
                ConicKind::Paraboloid | ConicKind::Ellipsoid => false,
                ConicKind::Cone if hh == 0.0 => class == SliceClass::DegenerateCone,
                _ => class == SliceClass::Hyperbolic,
            }
        } else if er < 1.0 - band {
            let fmax = concave_max(&spec, &plane).expect("concave side");
            if fmax > 1e-9 * s2 {
                matches!(class, SliceClass::Elliptic | SliceClass::Ball)
            } else if fmax < -1e-9 * s2 {
                class == SliceClass::Empty
            } else {
                true
            }
        } else {
            true
        };
        if er > 1.0 + band || er < 1.0 - band {
            st.checked_class += 1;
            if !expect_ok {
                st.misclassified += 1;
                if st.class_errors.len() < 5 {
                    st.class_errors.push(format!("#{i} {kind:?} ερ={er} → {class:?}"));
                }
            }
        }
        if class == SliceClass::Empty {
            continue;
        }
        let r = slice(&spec, &plane).unwrap();
        st.nonempty += 1;
        for x in sample_slice(&r, 20, i as u64).unwrap() {
            let ps = point_scale(&spec, &x);
            let res = surface_residual(&spec, &x).unwrap().abs();
            st.worst_res = st.worst_res.max(res / (ps * ps));
            st.worst_res_fixed = st.worst_res_fixed.max(res / (s * s));
            st.worst_plane = st.worst_plane.max(plane.signed_distance(&x).abs() / ps);
        }
        if kind != ConicKind::Paraboloid && r.class != SliceClass::Parabolic {
            let child = match &r.shape {
                SliceShape::Conic(c) | SliceShape::Ball(c) | SliceShape::Cone(c) => Some(c),
                _ => None,
            };
            if let Some(c) = child {
                st.ecc_checked += 1;
                let e = c.eccentricity().unwrap();
                st.worst_ecc = st.worst_ecc.max((e - er).abs());
            }
        }
    }
    st
}

fn slice_membership(st: &SliceStats) -> Outcome {
    let errors = st.misclassified;
    let pass = errors == 0 && st.worst_res <= 1e-8 && st.worst_plane <= 1e-10;
    let mut detail = format!(
        "{} pairs, {} classified outside the band, {} misclassified; {} nonempty; worst parent residual {:.1e}·s² (fixed-scale {:.1e}), plane {:.1e}·s",
        st.pairs, st.checked_class, errors, st.nonempty, st.worst_res, st.worst_res_fixed, st.worst_plane
    );
    for e in &st.class_errors {
        detail.push_str(&format!("; {e}"));
    }
    outcome(pass, detail)
}

fn eccentricity_law(st: &SliceStats) -> Outcome {
    outcome(
        st.worst_ecc <= 1e-10 && st.ecc_checked > 0,
        format!(
            "{} slices, worst |ε̂ − ερ| = {:.1e} (limit 1e-10)",
            st.ecc_checked, st.worst_ecc
        ),
    )
}

// 3. hyperboloid a=1, c=2 about e3 cut by x1 = 1
fn exact_fixture() -> Outcome {
    let spec = ConicSpec::hyperboloid(&Vector::zeros(3), &UnitVector::basis(3, 2), 1.0, 2.0).unwrap();
    let plane = Hyperplane::new(UnitVector::basis(3, 0), 1.0).unwrap();
    let r = slice(&spec, &plane).unwrap();
    let c = r.conic().unwrap();
    let a = c.a().unwrap();
    let b = c.b().unwrap();
    let errs = [
        (a * a - 4.0 / 3.0).abs(),
        (b * b - 4.0).abs(),
        c.center().distance(&vec(&[1.0, 0.0, 0.0])),
        (c.axis().dot(&UnitVector::basis(3, 2)).abs() - 1.0).abs(),
        c.axis()
            .distance(&vec(&[0.0, 0.0, 1.0]))
            .min(c.axis().distance(&vec(&[0.0, 0.0, -1.0]))),
        (c.eccentricity().unwrap() - 2.0).abs(),
    ];
    let worst = errs.iter().cloned().fold(0.0, f64::max);
    outcome(
        worst <= 1e-12 && r.class == SliceClass::Hyperbolic,
        format!(
            "{:?}, â²={}, b̂²={}, worst error {worst:.1e} (limit 1e-12)",
            r.class,
            a * a,
            b * b
        ),
    )
}

/// Plane `N·x = rhs` scaled to a unit normal with a positive first nonzero
/// normal coordinate.
fn canonical(normal: &Vector, offset: f64) -> (Vec<f64>, f64) {
    let l = normal.norm();
    let sign = normal
        .coords()
        .iter()
        .find(|t| t.abs() > 1e-12 * l)
        .map(|t| t.signum())
        .unwrap_or(1.0);
    (
        normal.coords().iter().map(|t| sign * t / l).collect(),
        sign * offset / l,
    )
}

fn plane_gap(a: (Vec<f64>, f64), b: (Vec<f64>, f64), scale: f64) -> f64 {
    let dn =
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
    dn.max((a.1 - b.1).abs() / scale)
}

// 5. the common hyperplane of three bisectors
fn triple_suite() -> Outcome {
    let fixture = {
        let t = triple_hyperplane(
            &ball(&[0.0, 0.0], 3.0),
            &ball(&[4.0, 0.0], 2.0),
            &ball(&[0.0, 3.0], 1.0),
        )
        .unwrap();
        let want = canonical(&vec(&[-16.0, 6.0]), -25.0);
        plane_gap(canonical(t.plane.normal(), t.plane.offset()), want, 1.0)
    };
    let mut rng = rng(5);
    let mut worst_on = 0f64;
    let mut solved = 0usize;
    let mut worst_sym = 0f64;
    for i in 0..500usize {
        let n = [2, 3, 5][i % 3];
        let (balls, x0) = rand_balls_through(&mut rng, n, 3);
        let scale = ball_scale(&balls);
        let t = triple_hyperplane(&balls[0], &balls[1], &balls[2]).unwrap();
        let mut starts = vec![x0.clone()];
        for _ in 0..4 {
            starts.push(x0.add_scaled(1.0, &rand_point(&mut rng, n, 2.0)));
        }
        for st in &starts {
            if let Some(x) = newton_equal_z(&balls, st) {
                solved += 1;
                worst_on = worst_on.max(t.plane.signed_distance(&x).abs() / scale);
            }
        }
        let (nv, rhs) = symmetric_normal(&balls[0], &balls[1], &balls[2]).unwrap();
        let g = plane_gap(
            canonical(&nv, rhs),
            canonical(t.plane.normal(), t.plane.offset()),
            scale,
        );
        worst_sym = worst_sym.max(g);
    }

    // equal-radius branches against the plain perpendicular bisector
    let mut worst_eq = 0f64;
    let mut eq_cases = 0usize;
    for i in 0..100usize {
        let n = [2, 3, 5][i % 3];
        let p: Vec<Vector> = (0..3).map(|_| rand_point(&mut rng, n, 5.0)).collect();
        let small = rng.random_range(0.1..0.5);
        let big = small + rng.random_range(0.1..0.5);
        // (big, small, small) exercises r_k = r_l, (big, big, small) r_j = r_k
        let (radii, pair) = if i % 2 == 0 {
            ([big, small, small], (1, 2))
        } else {
            ([big, big, small], (0, 1))
        };
        let balls: Vec<Ball> = p
            .iter()
            .zip(radii)
            .map(|(c, r)| Ball::new(c.clone(), r).unwrap())
            .collect();
        let t = match triple_hyperplane(&balls[0], &balls[1], &balls[2]) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let want_case = if i % 2 == 0 {
            TripleCase::KlEqual
        } else {
            TripleCase::JkEqual
        };
        let (pj, pk) = (&balls[pair.0].center, &balls[pair.1].center);
        let normal = pj - pk;
        let mid = (pj + pk).scale(0.5);
        let want = canonical(&normal, normal.dot(&mid));
        let g = plane_gap(
            canonical(t.plane.normal(), t.plane.offset()),
            want,
            ball_scale(&balls),
        );
        worst_eq = worst_eq.max(if t.case == want_case { g } else { f64::INFINITY });
        eq_cases += 1;
    }
    let pass =
        fixture <= 1e-12 && worst_on <= 1e-7 && solved >= 500 && worst_eq <= 1e-12 && worst_sym <= 1e-9;
    outcome(
        pass,
        format!(
            "fixture gap {fixture:.1e}; {solved} solved points, worst |H_T| {worst_on:.1e}·s; {eq_cases} equal-radius cases, worst gap {worst_eq:.1e}; closed form gap {worst_sym:.1e}"
        ),
    )
}

// 6. Descartes configuration
fn descartes_fixture() -> Outcome {
    let r = intersect_bisectors(&descartes()).unwrap();
    let e = r
        .sheet_vertex
        .distance(&vec(&[3.0, 4.0]))
        .max((r.tangent_z - 6.0).abs());
    outcome(
        e <= 1e-9 && r.kind.as_str() == "PointPair",
        format!(
            "{} at {:?}, z = {}, error {e:.1e} (limit 1e-9)",
            r.kind.as_str(),
            r.sheet_vertex.coords(),
            r.tangent_z
        ),
    )
}

fn same_result(a: &CascadeResult, b: &CascadeResult, shift: f64) -> f64 {
    let scale = a.scale();
    let mut gap = a.sheet_vertex.distance(&b.sheet_vertex) / scale;
    gap = gap.max((b.tangent_z - a.tangent_z - shift).abs() / scale);
    match (&a.kind, &b.kind) {
        (CascadeKind::Conic { conic: c1, .. }, CascadeKind::Conic { conic: c2, .. }) => {
            gap = gap.max(c1.center().distance(c2.center()) / scale);
            gap = gap.max(c1.axis().distance(c2.axis()));
            if let (Some(a1), Some(a2)) = (c1.a(), c2.a()) {
                gap = gap.max((a1 - a2).abs() / scale);
            }
            gap = gap.max((c1.c_param() - c2.c_param()).abs() / scale);
        }
        (CascadeKind::PointPair { points: p1, .. }, CascadeKind::PointPair { points: p2, .. }) => {
            if p1.len() != p2.len() {
                return f64::INFINITY;
            }
            for (x, y) in p1.iter().zip(p2) {
                gap = gap.max(x.distance(y) / scale);
            }
        }
        (CascadeKind::Flat { point: x, .. }, CascadeKind::Flat { point: y, .. }) => {
            gap = gap.max(x.distance(y) / scale);
        }
        _ => return f64::INFINITY,
    }
    gap
}

// 7. random cascades
fn cascade_suite() -> Outcome {
    let mut rng = rng(7);
    let mut worst_spread = 0f64;
    let mut worst_u = 0f64;
    let mut min_v = f64::INFINITY;
    let mut worst_shift = 0f64;
    let mut failures = Vec::new();
    let mut points = 0usize;
    for i in 0..200usize {
        let n = [3, 4, 6][i % 3];
        let s = rng.random_range(3..=(n + 1).min(5));
        let (balls, _) = rand_balls_through(&mut rng, n, s);
        let r = match intersect_bisectors(&balls) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("#{i}: {e}"));
                continue;
            }
        };
        let scale = r.scale();
        for x in sample_result(&r, 50, i as u64).unwrap() {
            points += 1;
            worst_spread = worst_spread.max(spread(&x, &balls) / scale.max(x.norm_inf()));
        }
        for st in &r.steps {
            for u in &st.u {
                worst_u = worst_u.max(u.dot(&st.base_axis).abs());
            }
            min_v = min_v.min(st.axis.dot(&st.base_axis));
        }
        let min_r = balls.iter().map(|b| b.radius).fold(f64::INFINITY, f64::min);
        for delta in [rng.random_range(0.5..2.0), -0.5 * min_r] {
            let shifted: Vec<Ball> = balls
                .iter()
                .map(|b| Ball::new(b.center.clone(), b.radius + delta).unwrap())
                .collect();
            match intersect_bisectors(&shifted) {
                Ok(r2) => worst_shift = worst_shift.max(same_result(&r, &r2, delta)),
                Err(e) => failures.push(format!("#{i} shifted by {delta}: {e}")),
            }
        }
    }
    let pass =
        failures.is_empty() && worst_spread <= 1e-7 && worst_u <= 1e-9 && min_v > 0.0 && worst_shift <= 1e-10;
    let mut detail = format!(
        "{points} points, worst spread {worst_spread:.1e}·s; max |u·v1| {worst_u:.1e}; min v·v1 {min_v:.3}; worst shift gap {worst_shift:.1e}·s"
    );
    if !failures.is_empty() {
        detail.push_str(&format!("; {} errors, first: {}", failures.len(), failures[0]));
    }
    outcome(pass, detail)
}

// 8. Apollonius on the Descartes configuration
fn apollonius_fixture() -> Outcome {
    let circles = descartes();
    let sol = solve_apollonius(&circles, &ApolloniusOptions::default()).unwrap();
    let scale = ball_scale(&circles);
    let has = |x: f64, y: f64, r: f64| {
        sol.circles
            .iter()
            .map(|c| c.center.distance(&vec(&[x, y])).max((c.radius - r).abs()))
            .fold(f64::INFINITY, f64::min)
    };
    let outer = has(3.0, 4.0, 6.0);
    let inner = sol
        .circles
        .iter()
        .map(|c| (c.radius - 6.0 / 23.0).abs())
        .fold(f64::INFINITY, f64::min);
    // residuals from the raw tangency equations
    let worst = sol
        .circles
        .iter()
        .map(|c| {
            circles
                .iter()
                .zip(&c.pattern.0)
                .map(|(b, &s)| (c.center.distance(&b.center) - (c.radius - f64::from(s) * b.radius)).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let count = sol.circles.len();
    let pass = count == 8 && outer <= 1e-9 && inner <= 1e-9 && worst <= 1e-8 * scale;
    outcome(
        pass,
        format!(
            "{count} circles (8 required; the configuration has 5 distinct tangent circles); outer error {outer:.1e}, inner Soddy error {inner:.1e}, worst residual {worst:.1e}"
        ),
    )
}

// 9. slices approaching the parabolic one from both sides
fn parabolic_continuity() -> Outcome {
    let spec = ConicSpec::hyperboloid(&Vector::zeros(3), &UnitVector::basis(3, 2), 1.0, 2.0).unwrap();
    let q = vec(&[0.0, 0.0, 2.0]);
    let eps = spec.eccentricity().unwrap();
    let plane = |rho: f64| {
        let sigma = (1.0 - rho * rho).sqrt();
        let h = UnitVector::try_new(vec(&[rho, 0.0, sigma])).unwrap();
        Hyperplane::through(h, &q).unwrap()
    };
    let target = slice(&spec, &plane(1.0 / eps)).unwrap();
    let tv = near_vertex(&target).unwrap();
    let mut detail = format!("limit {:?} at {:?}", target.class, tv.coords());
    let mut pass = target.class == SliceClass::Parabolic;
    for side in [-1.0, 1.0] {
        let mut last = f64::INFINITY;
        let mut dists = Vec::new();
        for delta in [1e-2, 1e-3, 1e-4] {
            let r = slice(&spec, &plane(1.0 / eps + side * delta)).unwrap();
            let d = near_vertex(&r).unwrap().distance(&tv);
            pass &= d < last;
            last = d;
            dists.push(format!("{d:.1e}"));
        }
        pass &= last <= 1e-3 * spec.scale();
        detail.push_str(&format!(
            "; {} side {}",
            if side < 0.0 { "elliptic" } else { "hyperbolic" },
            dists.join(" > ")
        ));
    }
    outcome(pass, detail)
}

// 10. hyperbola points against the asymptotic cone
fn asymptote_suite() -> Outcome {
    let mut rng = rng(10);
    let mut monotone = true;
    let mut within = 0usize;
    let mut worst_ratio = 0f64;
    let mut worst_formula = 0f64;
    for i in 0..50usize {
        let n = DIMS[i % 4];
        let spec = rand_spec(&mut rng, ConicKind::HyperboloidTwoSheets, n);
        let cone = asymptotic_cone(&spec).unwrap();
        let u = rand_unit_perp(&mut rng, spec.axis());
        let a = spec.a().unwrap();
        let mut last = f64::INFINITY;
        for alpha in [1.0f64, 1.3, 1.5] {
            let x = point_at(&spec, SheetTag::Sheet1, &u, alpha).unwrap();
            let beta = alpha.tan() * spec.b().unwrap() / cone.b().unwrap();
            let y = point_at(&cone, SheetTag::Sheet1, &u, beta).unwrap();
            let d = x.distance(&y);
            worst_formula = worst_formula.max((d - a * (1.0 / alpha.cos() - alpha.tan())).abs());
            monotone &= d < last;
            last = d;
        }
        let ratio = last / spec.scale();
        worst_ratio = worst_ratio.max(ratio);
        if ratio <= 1e-2 {
            within += 1;
        }
    }
    outcome(
        monotone && within == 50 && worst_formula <= 1e-10,
        format!(
            "monotone: {monotone}; {within}/50 within 1e-2·scale at α = 1.5 (worst {worst_ratio:.4}, the exact gap a(sec α − tan α) = {:.4}a); formula agreement {worst_formula:.1e}",
            1.0 / 1.5f64.cos() - 1.5f64.tan()
        ),
    )
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    results.push((1, "conic residual suite", conic_residuals()));
    let pop = slice_population();
    results.push((2, "slice membership closure", slice_membership(&pop)));
    results.push((3, "exact slice fixture", exact_fixture()));
    results.push((4, "eccentricity law", eccentricity_law(&pop)));
    results.push((5, "triple hyperplane suite", triple_suite()));
    results.push((6, "cascade fixture", descartes_fixture()));
    results.push((7, "cascade property suite", cascade_suite()));
    results.push((8, "Apollonius fixture", apollonius_fixture()));
    results.push((9, "parabolic continuity", parabolic_continuity()));
    results.push((10, "asymptotic cone", asymptote_suite()));
    let mut failed = 0;
    for (k, name, o) in &results {
        println!(
            "criterion {k:>2} {} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
