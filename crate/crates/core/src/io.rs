//! JSON input and output.
//!
//! Numbers are written with 17 significant digits (`%.17g`), so every
//! `f64` survives a write/read round trip exactly and output is
//! byte-for-byte reproducible.

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::apollonius::ApolloniusSolution;
use crate::bisectors::{Ball, Bisector, TripleHyperplane};
use crate::cascade::{verify_state, CascadeKind, CascadeResult, CascadeState};
use crate::conics::{ConicKind, ConicSpec};
use crate::error::{Error, Result};
use crate::geometry::{normalize, Hyperplane, UnitVector, Vector};
use crate::slicer::{SliceResult, SliceShape};

fn invalid(msg: impl std::fmt::Display) -> Error {
    Error::InvalidInput(msg.to_string())
}

fn from_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(invalid)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConicDto {
    kind: String,
    dim: Option<usize>,
    center: Option<Vec<f64>>,
    axis: Option<Vec<f64>>,
    a: Option<f64>,
    c: Option<f64>,
    b: Option<f64>,
    eccentricity: Option<f64>,
    focus1: Option<Vec<f64>>,
    focus2: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaneDto {
    normal: Vec<f64>,
    offset: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BallDto {
    center: Vec<f64>,
    radius: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BallsDto {
    balls: Vec<BallDto>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CirclesDto {
    circles: Vec<BallDto>,
}

fn unit(coords: Vec<f64>) -> Result<UnitVector> {
    let v = Vector::new(coords)?;
    match UnitVector::try_new(v.clone()) {
        Ok(u) => Ok(u),
        Err(_) => normalize(&v),
    }
}

fn close(x: f64, y: f64, scale: f64) -> bool {
    (x - y).abs() <= 1e-10 * scale.max(x.abs()).max(y.abs())
}

fn close_vec(x: &Vector, y: &Vector, scale: f64) -> bool {
    x.dim() == y.dim()
        && x.coords()
            .iter()
            .zip(y.coords())
            .all(|(a, b)| close(*a, *b, scale))
}

/// Reads a conic from JSON.
///
/// Either the center form (`center`, `axis` and enough of `a`, `c`,
/// `eccentricity`) or the focal form (`focus1`, `focus2` and `a`) is
/// accepted. Any further fields must agree with the derived ones within
/// 1e-10 relative and are then kept verbatim.
pub fn parse_conic(s: &str) -> Result<ConicSpec> {
    let d: ConicDto = from_str(s)?;
    let kind = ConicKind::parse(&d.kind).ok_or_else(|| invalid(format!("unknown kind {:?}", d.kind)))?;
    let f1 = d.focus1.clone().map(Vector::new).transpose()?;
    let f2 = d.focus2.clone().map(Vector::new).transpose()?;
    let center = d.center.clone().map(Vector::new).transpose()?;
    let axis = d.axis.clone().map(unit).transpose()?;
    let missing = |what: &str| invalid(format!("{} needs {what}", kind.as_str()));

    // a and c from whichever pair is present
    let (a, c) = match (d.a, d.c, d.eccentricity) {
        (Some(a), Some(c), _) => (Some(a), Some(c)),
        (Some(a), None, Some(e)) => (Some(a), Some(a * e)),
        (None, Some(c), Some(e)) if e != 0.0 => (Some(c / e), Some(c)),
        (a, c, _) => (a, c),
    };

    let spec = match kind {
        ConicKind::HyperboloidTwoSheets | ConicKind::Ellipsoid => {
            let hyper = kind == ConicKind::HyperboloidTwoSheets;
            match (&center, &axis, a, c, &f1, &f2) {
                (Some(cen), Some(ax), Some(a), Some(c), _, _) => {
                    if hyper {
                        ConicSpec::hyperboloid(cen, ax, a, c)?
                    } else {
                        ConicSpec::ellipsoid(cen, ax, a, c)?
                    }
                }
                (_, _, Some(a), _, Some(p1), Some(p2)) => {
                    if hyper {
                        ConicSpec::hyperboloid_from_foci(p1, p2, 2.0 * a)?
                    } else {
                        ConicSpec::ellipsoid_from_foci(p1, p2, 2.0 * a)?
                    }
                }
                _ => return Err(missing("center, axis, a and c, or both foci and a")),
            }
        }
        ConicKind::Paraboloid => match (&center, &axis, c, &f1, &f2) {
            (Some(cen), Some(ax), Some(c), _, _) => ConicSpec::paraboloid(cen, ax, c)?,
            (_, _, _, Some(p1), Some(p2)) => ConicSpec::paraboloid_from_points(p1, p2)?,
            _ => return Err(missing("center, axis and c, or both foci")),
        },
        ConicKind::Cone => match (&center, &axis, d.eccentricity) {
            (Some(cen), Some(ax), Some(e)) => ConicSpec::cone_from_axis(cen, ax, e)?,
            _ => return Err(missing("center, axis and eccentricity")),
        },
    };

    if let Some(n) = d.dim {
        if n != spec.dim() {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: spec.dim(),
            });
        }
    }
    let scale = spec.scale();
    let mismatch = |field: &str| invalid(format!("field {field} disagrees with the other parameters"));
    if let Some(x) = &center {
        if !close_vec(x, spec.center(), scale) {
            return Err(mismatch("center"));
        }
    }
    if let Some(x) = &axis {
        if !close_vec(x, spec.axis(), 1.0) {
            return Err(mismatch("axis"));
        }
    }
    for (name, given, derived) in [
        ("a", d.a, spec.a()),
        ("c", d.c, Some(spec.c_param())),
        ("b", d.b, spec.b()),
        ("eccentricity", d.eccentricity, spec.eccentricity()),
    ] {
        if let Some(g) = given {
            match derived {
                Some(x) if close(g, x, scale) => {}
                _ => return Err(mismatch(name)),
            }
        }
    }
    for (name, given, derived) in [("focus1", &f1, spec.focus1()), ("focus2", &f2, spec.focus2())] {
        if let Some(g) = given {
            match derived {
                Some(x) if close_vec(g, x, scale) => {}
                _ => return Err(mismatch(name)),
            }
        }
    }
    Ok(spec.with_stored(d.b, d.eccentricity, f1, f2))
}

/// `{"normal": [...], "offset": x}`; the normal need not be unit, both
/// sides are divided by its norm.
pub fn parse_hyperplane(s: &str) -> Result<Hyperplane> {
    let d: PlaneDto = from_str(s)?;
    let n = Vector::new(d.normal)?;
    match UnitVector::try_new(n.clone()) {
        Ok(u) => Hyperplane::new(u, d.offset),
        Err(_) => Hyperplane::from_raw(&n, d.offset),
    }
}

fn balls_from(dtos: Vec<BallDto>) -> Result<Vec<Ball>> {
    let balls: Vec<Ball> = dtos
        .into_iter()
        .map(|b| Ball::new(Vector::new(b.center)?, b.radius))
        .collect::<Result<_>>()?;
    if let Some(first) = balls.first() {
        for b in &balls {
            b.center.check_dim(first.dim())?;
        }
    }
    Ok(balls)
}

/// `{"balls": [{"center": [...], "radius": r}, ...]}`.
pub fn parse_balls(s: &str) -> Result<Vec<Ball>> {
    balls_from(from_str::<BallsDto>(s)?.balls)
}

/// `{"circles": [{"center": [...], "radius": r}, ...]}`.
pub fn parse_circles(s: &str) -> Result<Vec<Ball>> {
    balls_from(from_str::<CirclesDto>(s)?.circles)
}

fn vec_json(v: &Vector) -> Value {
    Value::from(v.coords().to_vec())
}

fn opt<T: Into<Value>>(x: Option<T>) -> Value {
    x.map(Into::into).unwrap_or(Value::Null)
}

pub fn conic_to_json(c: &ConicSpec) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), c.kind().as_str().into());
    m.insert("dim".into(), c.dim().into());
    m.insert("center".into(), vec_json(c.center()));
    m.insert("axis".into(), vec_json(c.axis()));
    if let Some(a) = c.a() {
        m.insert("a".into(), a.into());
    }
    m.insert("c".into(), c.c_param().into());
    if let Some(b) = c.b() {
        m.insert("b".into(), b.into());
    }
    if let Some(e) = c.eccentricity() {
        m.insert("eccentricity".into(), e.into());
    }
    if let Some(f) = c.focus1() {
        m.insert("focus1".into(), vec_json(f));
    }
    if let Some(f) = c.focus2() {
        m.insert("focus2".into(), vec_json(f));
    }
    Value::Object(m)
}

pub fn hyperplane_to_json(p: &Hyperplane) -> Value {
    json!({"normal": vec_json(p.normal()), "offset": p.offset()})
}

pub fn ball_to_json(b: &Ball) -> Value {
    json!({"center": vec_json(&b.center), "radius": b.radius})
}

pub fn slice_to_json(r: &SliceResult) -> Value {
    let mut m = Map::new();
    m.insert("class".into(), r.class.as_str().into());
    m.insert(
        "conic".into(),
        r.conic().map(conic_to_json).unwrap_or(Value::Null),
    );
    m.insert(
        "hull_basis".into(),
        Value::from(r.hull_basis().iter().map(|u| vec_json(u)).collect::<Vec<_>>()),
    );
    m.insert("tilde_c".into(), r.tilde_c.into());
    m.insert("h_hat".into(), r.h_hat.into());
    m.insert("radius".into(), opt(r.radius()));
    m.insert("vertex".into(), opt(r.vertex.as_ref().map(vec_json)));
    match &r.shape {
        SliceShape::Point(p) => {
            m.insert("point".into(), vec_json(p));
        }
        SliceShape::Cone(c) => {
            m.insert("cone".into(), conic_to_json(c));
        }
        SliceShape::Line { point, direction } => {
            m.insert(
                "line".into(),
                json!({"point": vec_json(point), "direction": vec_json(direction)}),
            );
        }
        _ => {}
    }
    m.insert(
        "frame".into(),
        json!({
            "g1": opt(r.frame.g1.as_ref().map(|g| vec_json(g))),
            "rho": r.frame.rho,
            "sigma": r.frame.sigma,
            "axis_aligned": r.frame.axis_aligned,
        }),
    );
    Value::Object(m)
}

pub fn bisector_to_json(b: &Bisector) -> Value {
    match b {
        Bisector::Plane { plane, pair } => json!({
            "type": "plane",
            "pair": [pair.0, pair.1],
            "plane": hyperplane_to_json(plane),
        }),
        Bisector::Sheet { conic, sheet, pair } => json!({
            "type": "sheet",
            "pair": [pair.0, pair.1],
            "conic": conic_to_json(conic),
            "sheet": sheet.as_str(),
        }),
    }
}

pub fn triple_to_json(t: &TripleHyperplane) -> Value {
    json!({
        "plane": hyperplane_to_json(&t.plane),
        "d_point": opt(t.d_point.as_ref().map(vec_json)),
        "u_t": opt(t.u_t.as_ref().map(|u| vec_json(u))),
        "source_case": t.case.as_str(),
        "order": t.order.to_vec(),
    })
}

fn state_to_json(s: &CascadeState) -> Value {
    let d = verify_state(s);
    json!({
        "k": s.k,
        "axis": vec_json(&s.axis),
        "center": vec_json(&s.center),
        "directrix_point": vec_json(&s.directrix_point),
        "vertex": vec_json(&s.vertex),
        "eps": s.eps,
        "a": opt(s.a),
        "b": opt(s.b),
        "c_param": s.c_param,
        "q_rhs": opt(s.q_rhs),
        "rho": opt(s.rho),
        "sigma": opt(s.sigma),
        "h_hat": opt(s.h_hat),
        "tilde_c": opt(s.tilde_c),
        "c_hat": opt(s.c_hat),
        "diagnostics": {
            "max_u_dot_v1": d.max_u_dot_v1,
            "min_v_dot_v1": d.min_v_dot_v1,
            "max_hp_cross": d.max_hp_cross,
            "max_v_dot_hp": d.max_v_dot_hp,
        },
    })
}

pub fn cascade_to_json(r: &CascadeResult, verbose: bool) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), r.kind.as_str().into());
    m.insert("sheet_vertex".into(), vec_json(&r.sheet_vertex));
    m.insert("tangent_z".into(), r.tangent_z.into());
    m.insert("dimension".into(), r.dimension.into());
    m.insert("order".into(), r.order.clone().into());
    match &r.kind {
        CascadeKind::Conic {
            conic,
            branch,
            normals,
        } => {
            m.insert("conic".into(), conic_to_json(conic));
            m.insert("branch".into(), branch.as_str().into());
            m.insert(
                "normals".into(),
                Value::from(normals.iter().map(|u| vec_json(u)).collect::<Vec<_>>()),
            );
        }
        CascadeKind::Flat { point, basis } => {
            m.insert(
                "flat".into(),
                json!({
                    "point": vec_json(point),
                    "basis": basis.iter().map(|u| vec_json(u)).collect::<Vec<_>>(),
                }),
            );
        }
        CascadeKind::PointPair { points, candidates } => {
            m.insert("points".into(), points_to_json(points));
            m.insert("candidates".into(), points_to_json(candidates));
        }
    }
    if verbose {
        m.insert(
            "steps".into(),
            Value::from(r.steps.iter().map(state_to_json).collect::<Vec<_>>()),
        );
    }
    Value::Object(m)
}

pub fn apollonius_to_json(sol: &ApolloniusSolution) -> Value {
    Value::from(
        sol.circles
            .iter()
            .map(|c| {
                json!({
                    "center": vec_json(&c.center),
                    "radius": c.radius,
                    "pattern": c.pattern.0.clone(),
                    "tangency": c.tangency.iter().map(|t| t.as_str()).collect::<Vec<_>>(),
                    "residual": c.residual,
                })
            })
            .collect::<Vec<_>>(),
    )
}

pub fn points_to_json(points: &[Vector]) -> Value {
    Value::from(points.iter().map(vec_json).collect::<Vec<_>>())
}

pub fn error_to_json(e: &Error) -> Value {
    json!({"error": e.code(), "message": e.to_string()})
}

/// `%.17g`: shortest of fixed or exponent notation, trailing zeros removed.
pub fn format_g17(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mant = strip_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let prec = (16 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", prec, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Serializes `v` with [`format_g17`] numbers; two-space indentation when
/// `pretty`.
pub fn write_json(v: &Value, pretty: bool) -> String {
    let mut out = String::new();
    write_value(v, pretty, 0, &mut out);
    out
}

fn write_value(v: &Value, pretty: bool, depth: usize, out: &mut String) {
    let newline = |out: &mut String, d: usize| {
        if pretty {
            out.push('\n');
            out.push_str(&"  ".repeat(d));
        }
    };
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                out.push_str(&format_g17(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(xs) => {
            if xs.is_empty() {
                out.push_str("[]");
                return;
            }
            // short numeric arrays stay on one line
            let flat = xs.iter().all(|x| x.is_number() || x.is_null() || x.is_string());
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                    if pretty && flat {
                        out.push(' ');
                    }
                }
                if !flat {
                    newline(out, depth + 1);
                }
                write_value(x, pretty, depth + 1, out);
            }
            if !flat {
                newline(out, depth);
            }
            out.push(']');
        }
        Value::Object(m) => {
            if m.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (k, x)) in m.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                newline(out, depth + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                if pretty {
                    out.push(' ');
                }
                write_value(x, pretty, depth + 1, out);
            }
            newline(out, depth);
            out.push('}');
        }
    }
}
