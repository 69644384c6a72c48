//! Boundary functions of the realizable set and the two equivalent
//! realizability criteria.
//!
//! A normalized spectrum `(1, x, y, d-x-y, -d-1)` is realizable exactly when,
//! for its value of `d`, the point `(x, y)` lies in
//!
//! * triangle `ABC` for `d ∈ [-3/4, -1/2]`,
//! * quadrangle `ABFG` for `d ∈ [-1/2, d*]`,
//! * the five-vertex shape `P = AHIFG` for `d ∈ [d*, 0]`,
//!
//! where `d* = -3/4 + √5/4` and the edge `HI` of `P` is the curve
//! `y = h(x, d)` on which the third power sum vanishes. Equivalently: the
//! third power sum is nonnegative and `λ2 + λ5 ≤ 0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{lit, real_cbrt, Dd, Real, Tolerances};
use crate::spectrum::{NormalizedSpectrum, RegionPoint};

/// `-3/4 + √5/4`, the value of `d` at which the curve `HI` appears.
pub fn transition_d<T: Real>() -> T {
    lit::<T>(-0.75) + lit::<T>(5.0).sqrt() / lit(4.0)
}

fn domain<T: Real>(what: &'static str, value: T, domain: &'static str) -> Error {
    Error::Domain { what, value: value.as_f64(), domain }
}

fn check_r_domain<T: Real>(d: T) -> Result<()> {
    if !(d >= -T::one() && d <= T::zero()) {
        return Err(domain("r", d, "[-1, 0]"));
    }
    Ok(())
}

/// `r(d) = 4d³ + 27d² + 27d + 3√3 √(d²(d+1)(8d²+27d+27))`, evaluated as
/// written but in double-word arithmetic: the two halves nearly cancel, and
/// in plain working precision the result loses about `1/|r|` ulps.
pub fn eval_r_direct<T: Real>(d: T) -> Result<T> {
    check_r_domain(d)?;
    let c27 = lit::<T>(27.0);
    let x = Dd::from(d);
    // d(27 + d(27 + 4d))
    let poly = x.mul(x.mul(x.scale(lit(4.0)).add(Dd::from(c27))).add(Dd::from(c27)));
    let quad = x.mul(x.scale(lit(8.0)).add(Dd::from(c27))).add(Dd::from(c27));
    // 3√3 √rad = 3 √(3 rad)
    let rad3 = x.mul(x).mul(x.add(Dd::from(T::one()))).mul(quad).scale(lit(3.0));
    let r = poly.add(rad3.sqrt().scale(lit(3.0)));
    Ok(r.hi + r.lo)
}

/// `r(d) = 16d⁵ / (4d² + 27d + 27 + 3√3 √((d+1)(8d²+27d+27)))`, the same
/// function with the cancellation near `d = 0` removed.
pub fn eval_r_rationalized<T: Real>(d: T) -> Result<T> {
    check_r_domain(d)?;
    let c27 = lit::<T>(27.0);
    let inner = (d + T::one()) * (lit::<T>(8.0) * d * d + c27 * d + c27);
    let den =
        lit::<T>(4.0) * d * d + c27 * d + c27 + lit::<T>(3.0) * lit::<T>(3.0).sqrt() * inner.max(T::zero()).sqrt();
    Ok(lit::<T>(16.0) * d.powi(5) / den)
}

/// `r(d)` on `[-1, 0]`; rationalized for `d > -1/4`, direct otherwise.
pub fn eval_r<T: Real>(d: T) -> Result<T> {
    if d > lit(-0.25) {
        eval_r_rationalized(d)
    } else {
        eval_r_direct(d)
    }
}

/// Bracketed Newton iteration for an increasing function with
/// `f(lo) ≤ 0 ≤ f(hi)`, started from `x0`.
fn polish_increasing_root<T: Real>(f: impl Fn(T) -> T, df: impl Fn(T) -> T, mut lo: T, mut hi: T, x0: T) -> T {
    let slack = lit::<T>(1e-8);
    let mut x =
        if x0.is_finite() && x0 >= lo - slack && x0 <= hi + slack { x0.max(lo).min(hi) } else { (lo + hi) / lit(2.0) };
    for _ in 0..200 {
        let fx = f(x);
        if fx == T::zero() {
            return x;
        }
        if fx < T::zero() {
            lo = x;
        } else {
            hi = x;
        }
        let step = fx / df(x);
        let mut next = x - step;
        if !next.is_finite() || next <= lo || next >= hi {
            next = (lo + hi) / lit(2.0);
        }
        if (next - x).abs() <= T::epsilon() * x.abs().max(T::min_positive_value().sqrt())
            || hi - lo <= T::epsilon() * hi.abs().max(lo.abs())
        {
            return next;
        }
        x = next;
    }
    x
}

/// The cubics `h3`, `h4` and the quadratic `h5` whose roots delimit the
/// curve `HI`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CubicValues<T> {
    pub h3: T,
    pub h4: T,
    pub h5: T,
}

/// `h3(x) = x³ + dx² − d²x − 4d − 4d² − d³`.
pub fn h3<T: Real>(x: T, d: T) -> T {
    let four = lit::<T>(4.0);
    x * x * x + d * x * x - d * d * x - four * d - four * d * d - d * d * d
}

/// `h4(x) = 8x³ − 16dx² + 8d²x + 4d + 4d²`.
pub fn h4<T: Real>(x: T, d: T) -> T {
    let four = lit::<T>(4.0);
    let eight = lit::<T>(8.0);
    eight * x * x * x - lit::<T>(16.0) * d * x * x + eight * d * d * x + four * d + four * d * d
}

/// `h5(x) = −4(2d+1)x² + 4(2d+1)²x − 8d²(d+1)`.
pub fn h5<T: Real>(x: T, d: T) -> T {
    let four = lit::<T>(4.0);
    let w = lit::<T>(2.0) * d + T::one();
    -four * w * x * x + four * w * w * x - lit::<T>(8.0) * d * d * (d + T::one())
}

pub fn cubic_diagnostics<T: Real>(x: T, d: T) -> CubicValues<T> {
    CubicValues { h3: h3(x, d), h4: h4(x, d), h5: h5(x, d) }
}

/// `f(d)`: the root of `h4` where the curve `HI` meets the diagonal `y = x`.
///
/// The closed form is polished on `h4`, which is increasing on `[d/3, 1]`
/// and changes sign there.
pub fn eval_f<T: Real>(d: T) -> Result<T> {
    if !(d >= -T::one() && d <= T::zero()) {
        return Err(domain("f", d, "[-1, 0)"));
    }
    if d == T::zero() {
        return Ok(T::zero());
    }
    let three = lit::<T>(3.0);
    let r = eval_r(d)?;
    let cbrt4 = real_cbrt(lit::<T>(4.0));
    let cr = real_cbrt(r);
    let closed = lit::<T>(2.0) / three * d - cbrt4 * d * d / (three * cr) - cr / (three * cbrt4);
    let dh4 = |x: T| lit::<T>(24.0) * (x - d) * (x - d / three);
    Ok(polish_increasing_root(|x| h4(x, d), dh4, d / three, T::one(), closed))
}

/// `x3(d)`: the single real root of `h3`, which satisfies `x3(d) ≤ d/3`.
pub fn eval_x3<T: Real>(d: T) -> Result<T> {
    if !(d >= -T::one() && d < T::zero()) {
        return Err(domain("x3", d, "[-1, 0)"));
    }
    let three = lit::<T>(3.0);
    let r = eval_r(d)?;
    let cr = real_cbrt(r);
    let closed = -d / three
        + lit::<T>(2.0) * real_cbrt(lit::<T>(4.0)) * d * d / (three * cr)
        + real_cbrt(lit::<T>(2.0)) * cr / three;
    let dh3 = |x: T| three * (x + d) * (x - d / three);
    Ok(polish_increasing_root(|x| h3(x, d), dh3, lit(-3.0), d / three, closed))
}

/// `g(d) = √((d − d*)(d − d̄*) / (2d+1))`, written as `√((4d²+6d+1) / (4(2d+1)))`.
pub fn eval_g<T: Real>(d: T) -> Result<T> {
    if !(d >= transition_d() && d <= T::zero()) {
        return Err(domain("g", d, "[-3/4+√5/4, 0]"));
    }
    let num = lit::<T>(4.0) * d * d + lit::<T>(6.0) * d + T::one();
    let den = lit::<T>(4.0) * (lit::<T>(2.0) * d + T::one());
    Ok((num / den).max(T::zero()).sqrt())
}

/// Roots `p1 = d + 1/2 + g(d)` and `p2 = d + 1/2 − g(d)` of `h5`.
pub fn eval_p1_p2<T: Real>(d: T) -> Result<(T, T)> {
    let g = eval_g(d)?;
    let mid = d + lit(0.5);
    Ok((mid + g, mid - g))
}

/// `h(t) = −(t−d)/2 + √(h3(t)/(t−d))/2`, the upper root in `y` of the third
/// power sum.
///
/// Evaluated as `B / (2(√(A²+B) + A))` with `A = t − d` and
/// `B = 4d(t+1)(t−d−1)/(t−d)`, which uses `h3(t) = (t−d)³ + 4d(t+1)(t−d−1)`
/// and avoids the cancellation for small `|d|`.
pub fn eval_h<T: Real>(t: T, d: T) -> Result<T> {
    let a = t - d;
    if a < T::zero() || (a == T::zero() && d != T::zero()) || !a.is_finite() {
        return Err(domain("h", t, "(d, ∞)"));
    }
    let b = if d == T::zero() { T::zero() } else { lit::<T>(4.0) * d * (t + T::one()) * (t - d - T::one()) / a };
    let rad = a * a + b;
    if rad < -Tolerances::<T>::default().geom {
        return Err(domain("h", t, "nonnegative radicand"));
    }
    let den = lit::<T>(2.0) * (rad.max(T::zero()).sqrt() + a);
    if den == T::zero() {
        return Ok(T::zero());
    }
    Ok(b / den)
}

/// Third power sum as a quadratic in `y`:
/// `3(d−x)y² + 3(2dx−d²−x²)y + 3(dx²−d²x−d−d²)`.
pub fn eval_s3<T: Real>(p: RegionPoint<T>) -> T {
    let RegionPoint { d, x, y } = p;
    let three = lit::<T>(3.0);
    three * (d - x) * y * y
        + three * (lit::<T>(2.0) * d * x - d * d - x * x) * y
        + three * (d * x * x - d * d * x - d - d * d)
}

/// Labeled points `A`–`J` and `O` for a fixed `d`, as `[x, y]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexTable<T> {
    pub d: T,
    pub points: BTreeMap<&'static str, [T; 2]>,
}

impl<T: Real> VertexTable<T> {
    pub fn get(&self, label: &str) -> Option<[T; 2]> {
        self.points.get(label).copied()
    }
}

pub fn vertices<T: Real>(d: T) -> Result<VertexTable<T>> {
    if !(d >= lit(-0.75) && d <= T::zero()) {
        return Err(domain("vertices", d, "[-3/4, 0]"));
    }
    let half = lit::<T>(0.5);
    let one = T::one();
    let mut points = BTreeMap::new();
    points.insert("A", [d / lit(3.0), d / lit(3.0)]);
    points.insert("B", [d + half, d + half]);
    points.insert("C", [lit::<T>(3.0) * d + lit(2.0), -d - one]);
    points.insert("D", [one, lit::<T>(2.0) * d]);
    points.insert("E", [one, half * d - half]);
    points.insert("F", [d + one, d]);
    points.insert("G", [d + one, -half]);
    points.insert("J", [lit::<T>(2.0) * d + one, T::zero()]);
    points.insert("O", [T::zero(), T::zero()]);
    if d >= transition_d() {
        let f = eval_f(d)?;
        let g = eval_g(d)?;
        points.insert("H", [f, f]);
        points.insert("I", [d + half + g, d + half - g]);
    }
    Ok(VertexTable { d, points })
}

/// `y ≤ x`, `y ≤ −x + 2d + 1`, `y ≥ (d − x)/2`, each with `tol.geom` slack.
pub fn in_triangle_abc<T: Real>(p: RegionPoint<T>, tol: &Tolerances<T>) -> bool {
    first_triangle_violation(p, tol).is_none()
}

fn first_triangle_violation<T: Real>(p: RegionPoint<T>, tol: &Tolerances<T>) -> Option<&'static str> {
    let RegionPoint { d, x, y } = p;
    let e = tol.geom;
    if y > x + e {
        Some("λ3 > λ2 (y > x)")
    } else if y > -x + lit::<T>(2.0) * d + T::one() + e {
        Some("λ4 > λ3 (y > 2d + 1 − x)")
    } else if y < (d - x) / lit(2.0) - e {
        Some("λ5 > λ4 (y < (d − x)/2)")
    } else {
        None
    }
}

/// Triangle `ABC` plus `x ≤ d + 1`, the `λ2 + λ5 ≤ 0` condition.
pub fn in_quadrangle_abfg<T: Real>(p: RegionPoint<T>, tol: &Tolerances<T>) -> bool {
    first_quadrangle_violation(p, tol).is_none()
}

fn first_quadrangle_violation<T: Real>(p: RegionPoint<T>, tol: &Tolerances<T>) -> Option<&'static str> {
    first_triangle_violation(p, tol).or_else(|| if p.x > p.d + T::one() + tol.geom { Some("λ2+λ5 > 0") } else { None })
}

/// Quadrangle `ABFG` with the edges next to `B` replaced by the curve
/// `y = h(x, d)` for `x ∈ [f(d), p1(d)]`.
pub fn in_shape_p<T: Real>(p: RegionPoint<T>, tol: &Tolerances<T>) -> bool {
    first_shape_p_violation(p, tol).is_none()
}

fn first_shape_p_violation<T: Real>(p: RegionPoint<T>, tol: &Tolerances<T>) -> Option<&'static str> {
    if let Some(v) = first_quadrangle_violation(p, tol) {
        return Some(v);
    }
    let RegionPoint { d, x, y } = p;
    let (Ok(f), Ok((p1, _))) = (eval_f(d), eval_p1_p2(d)) else {
        // below d* the curve does not exist and the constraint is vacuous
        return None;
    };
    if x >= f && x <= p1 {
        match eval_h(x, d) {
            Ok(h) if y > h + tol.geom => return Some("s3 < 0 (above curve HI)"),
            _ => {}
        }
    }
    None
}

/// Which region of the realizability theorem applies for a value of `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RegionLabel {
    #[serde(rename = "ABC")]
    Abc,
    #[serde(rename = "ABFG")]
    Abfg,
    #[serde(rename = "P")]
    P,
    #[serde(rename = "none")]
    None,
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionLabel::Abc => "ABC",
            RegionLabel::Abfg => "ABFG",
            RegionLabel::P => "P",
            RegionLabel::None => "none",
        })
    }
}

/// Regime label for `d`; shared endpoints go to the lower regime.
pub fn regime<T: Real>(d: T) -> RegionLabel {
    if d <= lit(-0.5) {
        RegionLabel::Abc
    } else if d <= transition_d() {
        RegionLabel::Abfg
    } else {
        RegionLabel::P
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub realizable: bool,
    pub region_label: RegionLabel,
    pub failed_condition: Option<String>,
}

impl Verdict {
    fn yes(label: RegionLabel) -> Self {
        Self { realizable: true, region_label: label, failed_condition: None }
    }

    fn no(reason: &str) -> Self {
        Self { realizable: false, region_label: RegionLabel::None, failed_condition: Some(reason.to_owned()) }
    }
}

fn clamp_d<T: Real>(d: T, tol: &Tolerances<T>) -> Result<T> {
    if !(d >= lit::<T>(-0.75) - tol.geom && d <= tol.geom) {
        return Err(domain("d", d, "[-3/4, 0]"));
    }
    Ok(d.max(lit(-0.75)).min(T::zero()))
}

/// Geometric criterion: membership in `ABC`, `ABFG` or `P` depending on `d`.
///
/// At `d = -1/2` and `d = d*` both adjacent predicates are evaluated; they
/// agree up to the `tol.geom` band and the point must satisfy both.
pub fn theorem2_check<T: Real>(p: RegionPoint<T>, tol: &Tolerances<T>) -> Result<Verdict> {
    let d = clamp_d(p.d, tol)?;
    let p = RegionPoint { d, ..p };
    let half = lit::<T>(-0.5);
    let star = transition_d::<T>();
    let violation = if d < half {
        first_triangle_violation(p, tol)
    } else if d == half {
        first_triangle_violation(p, tol).or_else(|| first_quadrangle_violation(p, tol))
    } else if d < star {
        first_quadrangle_violation(p, tol)
    } else if d == star {
        first_quadrangle_violation(p, tol).or_else(|| first_shape_p_violation(p, tol))
    } else {
        first_shape_p_violation(p, tol)
    };
    Ok(match violation {
        None => Verdict::yes(regime(d)),
        Some(reason) => Verdict::no(reason),
    })
}

/// Power-sum criterion: `s3 ≥ 0` and `λ2 + λ5 ≤ 0` (`s1 = 0` holds by
/// construction of the normalized spectrum).
pub fn theorem3_check<T: Real>(n: &NormalizedSpectrum<T>, tol: &Tolerances<T>) -> Verdict {
    if n.x() + n.lambda5() > tol.geom {
        return Verdict::no("λ2+λ5 > 0");
    }
    if n.power_sum(3) < -tol.geom {
        return Verdict::no("s3 < 0");
    }
    Verdict::yes(regime(n.d()))
}

/// Counterclockwise boundary of the realizable region for `d`, with the
/// curve `HI` discretized by `samples` points (endpoints included).
/// Consecutive coincident vertices are merged, so degenerate regions come
/// out as fewer points.
pub fn boundary_polyline<T: Real>(d: T, samples: usize) -> Result<Vec<[T; 2]>> {
    if samples < 2 {
        return Err(Error::Precondition(format!("boundary needs at least 2 curve samples, got {samples}")));
    }
    let table = vertices(d)?;
    let v = |l: &str| table.get(l).expect("vertex present");
    let mut pts = match regime(d) {
        RegionLabel::Abc => vec![v("A"), v("C"), v("B")],
        RegionLabel::Abfg => vec![v("A"), v("G"), v("F"), v("B")],
        _ => {
            let mut pts = vec![v("A"), v("G"), v("F"), v("I")];
            let (f, p1) = (eval_f(d)?, eval_p1_p2(d)?.0);
            let last = lit::<T>((samples - 1) as f64);
            // interior points of the arc, walking from I back to H
            for k in (1..samples - 1).rev() {
                let t = lit::<T>(k as f64) / last;
                let x = (T::one() - t) * f + t * p1;
                pts.push([x, eval_h(x, d)?]);
            }
            pts.push(v("H"));
            pts
        }
    };
    let close = |a: [T; 2], b: [T; 2]| {
        let e = lit::<T>(4.0) * T::epsilon();
        (a[0] - b[0]).abs() <= e && (a[1] - b[1]).abs() <= e
    };
    pts.dedup_by(|b, a| close(*a, *b));
    while pts.len() > 1 && close(pts[0], *pts.last().unwrap()) {
        pts.pop();
    }
    // a flat arc (d = 0) leaves interior points on a straight edge
    let mut i = 0;
    while pts.len() > 3 && i < pts.len() {
        let n = pts.len();
        let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
        let (u, w) = ([b[0] - a[0], b[1] - a[1]], [c[0] - b[0], c[1] - b[1]]);
        let cross = u[0] * w[1] - u[1] * w[0];
        let dot = u[0] * w[0] + u[1] * w[1];
        let scale = (u[0].abs() + u[1].abs()) * (w[0].abs() + w[1].abs());
        if cross.abs() <= lit::<T>(4.0) * T::epsilon() * scale && dot > T::zero() {
            pts.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(pts)
}

/// Boundary polygon plus the vertex table, the unit of CSV/JSON export.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Boundary<T> {
    pub d: T,
    pub vertices: Vec<[T; 2]>,
    pub labels: BTreeMap<&'static str, [T; 2]>,
}

impl<T: Real> Boundary<T> {
    pub fn new(d: T, samples: usize) -> Result<Self> {
        let vertices = boundary_polyline(d, samples)?;
        let labels = self::vertices(d)?.points;
        Ok(Self { d, vertices, labels })
    }

    /// `x,y` header followed by one vertex per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y\n");
        for [x, y] in &self.vertices {
            out.push_str(&format!("{x},{y}\n"));
        }
        out
    }
}
