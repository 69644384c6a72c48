//! Brute-force ground truth: random zero-diagonal nonnegative matrices,
//! grid scans of the power-sum lemmas and of the agreement between the two
//! realizability criteria.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`), seeded with
//! `seed_from_u64(seed)`; trial `i` of a run uses stream `i`, so results do
//! not depend on how trials are split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::eig;
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::region::{self, eval_f, eval_h, eval_p1_p2, theorem2_check, theorem3_check, transition_d};
use crate::scalar::Tolerances;
use crate::spectrum::{NormalizedSpectrum, RegionPoint, Spectrum5};

/// Index in scan order, violation size, offending coordinates.
type Hit = (usize, f64, Vec<f64>);

/// Violating points kept in a report; the count is always exact.
pub const MAX_REPORTED_POINTS: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub claim: String,
    pub resolution: usize,
    pub samples: usize,
    pub tolerance: f64,
    pub max_violation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arg_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_arg_error: Option<f64>,
    pub violations: usize,
    pub violating_points: Vec<Vec<f64>>,
    pub passed: bool,
}

impl ScanReport {
    fn finish(
        claim: String,
        resolution: usize,
        samples: usize,
        tolerance: f64,
        mut found: Vec<Hit>,
        max_violation: f64,
    ) -> Self {
        found.sort_by_key(|(i, _, _)| *i);
        let violations = found.len();
        let max_violation = found.iter().map(|(_, v, _)| *v).fold(max_violation.max(0.0), f64::max);
        let violating_points = found.into_iter().take(MAX_REPORTED_POINTS).map(|(_, _, p)| p).collect();
        Self {
            claim,
            resolution,
            samples,
            tolerance,
            max_violation,
            arg_tolerance: None,
            max_arg_error: None,
            violations,
            violating_points,
            passed: violations == 0 && max_violation <= tolerance,
        }
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Zero diagonal, off-diagonal entries uniform on `[0, 1)`, drawn in the
/// order `(0,1), (0,2), …, (3,4)`.
pub fn random_realizable_matrix(seed: u64) -> SymMatrix<f64> {
    random_realizable_matrix_stream(seed, 0)
}

pub fn random_realizable_matrix_stream(seed: u64, stream: u64) -> SymMatrix<f64> {
    let mut rng = rng_for(seed, stream);
    let mut m = SymMatrix::zeros(5).expect("order 5");
    for i in 0..5 {
        for j in (i + 1)..5 {
            m.set(i, j, rng.gen::<f64>());
        }
    }
    m
}

/// Signed distance-like margin of the geometric criterion: the largest of the
/// active constraint values, positive outside the region.
pub fn theorem2_margin(p: RegionPoint<f64>) -> f64 {
    let RegionPoint { d, x, y } = p;
    let d = d.clamp(-0.75, 0.0);
    let mut m = (y - x).max(y - (2.0 * d + 1.0 - x)).max((d - x) / 2.0 - y);
    if d >= -0.5 {
        m = m.max(x - (d + 1.0));
    }
    if d >= transition_d::<f64>() {
        if let (Ok(f), Ok((p1, _))) = (eval_f(d), eval_p1_p2(d)) {
            if x >= f && x <= p1 {
                if let Ok(h) = eval_h(x, d) {
                    m = m.max(y - h);
                }
            }
        }
    }
    m
}

/// Samples `trials` matrices and checks that every normalized spectrum is
/// accepted by both criteria. A trial's violation is the largest of
/// `λ2 + λ5`, `−s3` and [`theorem2_margin`].
pub fn mc_necessity(trials: usize, seed: u64, tol: &Tolerances<f64>) -> Result<ScanReport> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    let results: Vec<Result<(f64, Option<Hit>)>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let m = random_realizable_matrix_stream(seed, i as u64);
            let values = eig::eigenvalues(&m)?;
            let s = Spectrum5::validate_and_sort(&values, tol)?;
            let n = s.normalize(tol)?;
            let p = n.region_point();
            let v = (n.x() + n.lambda5()).max(-n.power_sum(3)).max(theorem2_margin(p));
            let ok = theorem3_check(&n, tol).realizable && theorem2_check(p, tol)?.realizable;
            let bad = (!ok).then(|| (i, v.max(f64::MIN_POSITIVE), vec![p.d, p.x, p.y]));
            Ok((v, bad))
        })
        .collect();
    let mut found = Vec::new();
    let mut worst = 0.0_f64;
    for r in results {
        let (v, bad) = r?;
        worst = worst.max(v);
        found.extend(bad);
    }
    Ok(ScanReport::finish(format!("necessity, seed {seed}"), 0, trials, tol.geom, found, worst))
}

fn power_sum(d: f64, x: f64, y: f64, k: i32) -> f64 {
    1.0 + x.powi(k) + y.powi(k) + (d - x - y).powi(k) + (-d - 1.0).powi(k)
}

/// Barycentric grid on triangle `OBJ`: `(i/res)·B + (j/res)·J`, `i + j ≤ res`.
pub fn obj_grid(d: f64, resolution: usize) -> Vec<[f64; 2]> {
    let b = d + 0.5;
    let jx = 2.0 * d + 1.0;
    let r = resolution as f64;
    let mut pts = Vec::with_capacity((resolution + 1) * (resolution + 2) / 2);
    for i in 0..=resolution {
        for j in 0..=(resolution - i) {
            let (u, w) = (i as f64 / r, j as f64 / r);
            pts.push([u * b + w * jx, u * b]);
        }
    }
    pts
}

fn check_scan_args(d: f64, resolution: usize) -> Result<()> {
    if !(-0.5..=0.0).contains(&d) {
        return Err(Error::Domain { what: "d", value: d, domain: "[-1/2, 0]" });
    }
    if resolution < 50 {
        return Err(Error::Precondition(format!("resolution {resolution} is below 50")));
    }
    Ok(())
}

/// Claimed extrema of `s_k` over `OBJ`: `(argmin, min, argmax, max)`.
pub fn lemma1_extrema(d: f64, k: u32) -> ([f64; 2], f64, [f64; 2], f64) {
    let k = k as i32;
    let o = [0.0, 0.0];
    let at_o = 1.0 + d.powi(k) + (-d - 1.0).powi(k);
    if k % 2 == 0 {
        (o, at_o, [2.0 * d + 1.0, 0.0], 1.0 + (2.0 * d + 1.0).powi(k) + 2.0 * (-d - 1.0).powi(k))
    } else {
        let b = d + 0.5;
        ([b, b], 1.0 + 2.0 * b.powi(k) + 2.0 * (-d - 1.0).powi(k), o, at_o)
    }
}

/// Scans `s_k` over `OBJ` and compares its range and extremal points with
/// [`lemma1_extrema`]. Values may exceed the claimed range by at most
/// `1e-6 + 2k/resolution`; an empirical extremum must lie within two grid
/// cells of the claimed point unless the two values tie to `1e-12`.
pub fn grid_scan_lemma1(d: f64, k: u32, resolution: usize) -> Result<ScanReport> {
    check_scan_args(d, resolution)?;
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} is below 2")));
    }
    let (at_min, min, at_max, max) = lemma1_extrema(d, k);
    let ki = k as i32;
    let pts = obj_grid(d, resolution);
    let sk: Vec<f64> = pts.iter().map(|p| power_sum(d, p[0], p[1], ki)).collect();
    let value_tol = 1e-6 + 2.0 * k as f64 / resolution as f64;

    let found: Vec<Hit> = sk
        .iter()
        .zip(&pts)
        .enumerate()
        .filter_map(|(i, (&s, p))| {
            let v = (min - s).max(s - max);
            (v > value_tol).then(|| (i, v, vec![p[0], p[1], s]))
        })
        .collect();

    let (mut lo, mut hi) = (0, 0);
    for i in 1..sk.len() {
        if sk[i] < sk[lo] {
            lo = i;
        }
        if sk[i] > sk[hi] {
            hi = i;
        }
    }
    let attained = (sk[lo] - min).abs().max((sk[hi] - max).abs());

    let edge = [d + 0.5, d + 0.5, 2.0 * d + 1.0];
    let side = (edge[0] * edge[0] + edge[1] * edge[1]).sqrt().max(edge[2]);
    let arg_tol = 2.0 * side / resolution as f64;
    let arg_error = |idx: usize, claimed: [f64; 2]| {
        let p = pts[idx];
        let tie = (sk[idx] - power_sum(d, claimed[0], claimed[1], ki)).abs() <= 1e-12;
        if tie {
            0.0
        } else {
            (p[0] - claimed[0]).hypot(p[1] - claimed[1])
        }
    };
    let arg = arg_error(lo, at_min).max(arg_error(hi, at_max));

    let mut report = ScanReport::finish(
        format!("lemma 1: extrema of s{k} on OBJ at d = {d}"),
        resolution,
        pts.len(),
        value_tol,
        found,
        attained,
    );
    report.arg_tolerance = Some(arg_tol);
    report.max_arg_error = Some(arg);
    report.passed &= arg <= arg_tol;
    Ok(report)
}

fn inside_obj(d: f64, x: f64, y: f64) -> bool {
    y >= 0.0 && y <= x && y <= 2.0 * d + 1.0 - x
}

/// Smallest radius (in steps of `band/16`, up to `4·band`) at which some
/// point of `OBJ` has a different `in_shape_p` verdict than `(x, y)`.
fn distance_to_flip(d: f64, x: f64, y: f64, band: f64, tol: &Tolerances<f64>) -> Option<f64> {
    let here = region::in_shape_p(RegionPoint::new(d, x, y), tol);
    for step in 1..=64 {
        let r = band * step as f64 / 16.0;
        for dir in 0..16 {
            let a = std::f64::consts::TAU * dir as f64 / 16.0;
            let (px, py) = (x + r * a.cos(), y + r * a.sin());
            if inside_obj(d, px, py) && region::in_shape_p(RegionPoint::new(d, px, py), tol) != here {
                return Some(r);
            }
        }
    }
    None
}

/// Sign law of `s3` on `OBJ`.
///
/// For `d ≤ d*` every grid point must have `s3 ≥ −1e-12`. Above `d*`,
/// `s3 ≥ 0` must coincide with membership in the region `P`; a point where
/// they differ is tolerated if `P` membership flips within `2/resolution`.
pub fn grid_scan_lemma2(d: f64, resolution: usize, tol: &Tolerances<f64>) -> Result<ScanReport> {
    check_scan_args(d, resolution)?;
    let pts = obj_grid(d, resolution);
    let sign_tol = 1e-12;
    if d <= transition_d::<f64>() {
        let found: Vec<_> = pts
            .iter()
            .enumerate()
            .filter_map(|(i, p)| {
                let s3 = power_sum(d, p[0], p[1], 3);
                (-s3 > sign_tol).then(|| (i, -s3, vec![p[0], p[1], s3]))
            })
            .collect();
        return Ok(ScanReport::finish(
            format!("lemma 2: s3 ≥ 0 on OBJ at d = {d}"),
            resolution,
            pts.len(),
            sign_tol,
            found,
            0.0,
        ));
    }
    let band = 2.0 / resolution as f64;
    let found: Vec<_> = pts
        .par_iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let (x, y) = (p[0], p[1]);
            let s3 = power_sum(d, x, y, 3);
            let member = region::in_shape_p(RegionPoint::new(d, x, y), tol);
            if (s3 >= -sign_tol) == member {
                return None;
            }
            let r = distance_to_flip(d, x, y, band, tol).unwrap_or(f64::INFINITY);
            (r > band).then(|| (i, r, vec![x, y, s3]))
        })
        .collect();
    Ok(ScanReport::finish(
        format!("lemma 2: s3 ≥ 0 ⇔ (x, y) ∈ OHIJ at d = {d}"),
        resolution,
        pts.len(),
        band,
        found,
        0.0,
    ))
}

/// Whether the geometric verdict changes on the `3×3` stencil with offsets
/// `{−h, 0, h}` in `x` and `y`.
fn near_boundary(p: RegionPoint<f64>, h: f64, tol: &Tolerances<f64>) -> bool {
    let mut seen = None;
    for dx in [-h, 0.0, h] {
        for dy in [-h, 0.0, h] {
            let q = RegionPoint::new(p.d, p.x + dx, p.y + dy);
            let v = theorem2_check(q, tol).map(|v| v.realizable).unwrap_or(false);
            match seen {
                None => seen = Some(v),
                Some(s) if s != v => return true,
                _ => {}
            }
        }
    }
    false
}

/// Stencil half-width inside which the two criteria may disagree.
pub const BOUNDARY_BAND: f64 = 1e-6;

/// Compares both criteria at one ordered point; `Some(margin)` for a
/// disagreement away from the region boundary.
pub fn criteria_disagreement(p: RegionPoint<f64>, tol: &Tolerances<f64>) -> Result<Option<f64>> {
    let n = NormalizedSpectrum::from_region_point(p, tol)?;
    let geometric = theorem2_check(p, tol)?.realizable;
    let power = theorem3_check(&n, tol).realizable;
    if geometric == power || near_boundary(p, BOUNDARY_BAND, tol) {
        return Ok(None);
    }
    Ok(Some(theorem2_margin(p).abs().max(f64::MIN_POSITIVE)))
}

/// Bounding box `[x0, x1] × [y0, y1]` of the ordered points for `d`
/// (triangle `ABC` cut at `x ≤ 1`).
pub fn ordered_box(d: f64) -> [f64; 4] {
    let (ax, bx, cx) = (d / 3.0, d + 0.5, 3.0 * d + 2.0);
    let (ay, by, cy) = (d / 3.0, d + 0.5, -d - 1.0);
    [ax.min(bx).min(cx), ax.max(bx).max(cx).min(1.0), ay.min(by).min(cy), ay.max(by).max(cy)]
}

/// `resolution × resolution` grid over [`ordered_box`]; points that are not
/// ordered spectra are skipped.
pub fn equivalence_grid(d: f64, resolution: usize, tol: &Tolerances<f64>) -> Result<ScanReport> {
    if !(-0.75..=0.0).contains(&d) {
        return Err(Error::Domain { what: "d", value: d, domain: "[-3/4, 0]" });
    }
    if resolution < 2 {
        return Err(Error::Precondition(format!("resolution {resolution} is below 2")));
    }
    let [x0, x1, y0, y1] = ordered_box(d);
    let step = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (resolution - 1) as f64;
    let rows: Vec<Result<(usize, Vec<Hit>)>> = (0..resolution)
        .into_par_iter()
        .map(|i| {
            let x = step(x0, x1, i);
            let mut count = 0;
            let mut found = Vec::new();
            for j in 0..resolution {
                let p = RegionPoint::new(d, x, step(y0, y1, j));
                if NormalizedSpectrum::from_region_point(p, &Tolerances::default().with_geom(0.0)).is_err() {
                    continue;
                }
                count += 1;
                if let Some(v) = criteria_disagreement(p, tol)? {
                    found.push((i * resolution + j, v, vec![p.d, p.x, p.y]));
                }
            }
            Ok((count, found))
        })
        .collect();
    let mut samples = 0;
    let mut found = Vec::new();
    for r in rows {
        let (c, f) = r?;
        samples += c;
        found.extend(f);
    }
    Ok(ScanReport::finish(format!("criteria agree on grid at d = {d}"), resolution, samples, 0.0, found, 0.0))
}

/// Uniform random ordered point: `d` uniform on `[−3/4, 0]`, `(x, y)` by
/// rejection from [`ordered_box`].
pub fn random_ordered_point(rng: &mut impl Rng) -> RegionPoint<f64> {
    let exact = Tolerances::default().with_geom(0.0);
    loop {
        let d = -0.75 * rng.gen::<f64>();
        let [x0, x1, y0, y1] = ordered_box(d);
        let x = x0 + (x1 - x0) * rng.gen::<f64>();
        let y = y0 + (y1 - y0) * rng.gen::<f64>();
        let p = RegionPoint::new(d, x, y);
        if NormalizedSpectrum::from_region_point(p, &exact).is_ok() {
            return p;
        }
    }
}

pub fn equivalence_random(points: usize, seed: u64, tol: &Tolerances<f64>) -> Result<ScanReport> {
    let results: Vec<Result<Option<Hit>>> = (0..points)
        .into_par_iter()
        .map(|i| {
            let p = random_ordered_point(&mut rng_for(seed, i as u64));
            Ok(criteria_disagreement(p, tol)?.map(|v| (i, v, vec![p.d, p.x, p.y])))
        })
        .collect();
    let mut found = Vec::new();
    for r in results {
        found.extend(r?);
    }
    Ok(ScanReport::finish(format!("criteria agree on random points, seed {seed}"), 0, points, 0.0, found, 0.0))
}

fn det(m: &[Vec<f64>]) -> f64 {
    match m.len() {
        0 => 1.0,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

/// Coefficients `c1..cn` of `det(zI − M) = zⁿ + c1 zⁿ⁻¹ + … + cn`, from sums
/// of principal minors.
pub fn char_poly_coefficients(m: &SymMatrix<f64>) -> Vec<f64> {
    let n = m.order();
    let rows = m.to_rows();
    let mut e = vec![0.0; n + 1];
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<f64>> = idx.iter().map(|&i| idx.iter().map(|&j| rows[i][j]).collect()).collect();
        e[idx.len()] += det(&sub);
    }
    (1..=n).map(|k| if k % 2 == 0 { e[k] } else { -e[k] }).collect()
}

/// `(q3, q2, q1, q0)` of `z⁵ + q3 z³ + q2 z² + q1 z + q0` for a spectrum with
/// `s1 = 0`, from the Newton identities.
pub fn newton_q(s2: f64, s3: f64, s4: f64, s5: f64) -> [f64; 4] {
    [-s2 / 2.0, -s3 / 3.0, -s4 / 4.0 + s2 * s2 / 8.0, s2 * s3 / 6.0 - s5 / 5.0]
}

/// Largest difference between the characteristic polynomial of `m` and the
/// one predicted for `n` (the `z⁴` coefficient is compared against 0).
pub fn newton_check(m: &SymMatrix<f64>, n: &NormalizedSpectrum<f64>) -> f64 {
    let c = char_poly_coefficients(m);
    let q = newton_q(n.power_sum(2), n.power_sum(3), n.power_sum(4), n.power_sum(5));
    c[0].abs().max((c[1] - q[0]).abs()).max((c[2] - q[1]).abs()).max((c[3] - q[2]).abs()).max((c[4] - q[3]).abs())
}
