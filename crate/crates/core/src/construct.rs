//! Explicit realizations.
//!
//! Every realizable normalized spectrum falls into one of three cases:
//!
//! 1. `x ≤ 0`: one positive value and four nonpositive ones summing to zero,
//!    realized by repeatedly gluing `1x1` zero blocks onto a growing block
//!    ([`suleimanova_realize`]);
//! 2. `x > 0, y ≤ 0`: split `{λ3, λ4, λ5}` into two groups, realize
//!    `{λ1 − ε} ∪ K1` and `{λ2 + ε} ∪ K2` separately and glue them with shift
//!    `ε` ([`loewy_realize`]);
//! 3. `x > 0, y > 0`: the closed-form matrix family [`matrix_b`].
//!
//! The glue ([`fiedler_glue`]) joins two symmetric nonnegative blocks with
//! Perron pairs `(α1, u)` and `(β1, v)` through the rank-one coupling
//! `ρ u vᵀ`, `ρ = √(ε(α1 − β1 + ε))`, which moves the two Perron roots to
//! `α1 + ε` and `β1 − ε` and leaves the rest of both spectra in place.

use std::fmt;

use serde::Serialize;

use crate::eig::{self, max_abs_diff};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::region::{eval_s3, theorem2_check, theorem3_check, transition_d, Verdict};
use crate::scalar::{lit, Real, Tolerances};
use crate::spectrum::{denormalize_matrix, NormalizedSpectrum, RegionPoint, Spectrum5};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    Zero,
    Suleimanova,
    LoewySplit,
    ExplicitA,
    ExplicitB,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::Zero, Method::Suleimanova, Method::LoewySplit, Method::ExplicitA, Method::ExplicitB];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A realizing matrix together with its recomputed spectrum.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real + Serialize"))]
pub struct Certificate<T> {
    pub method: Method,
    pub matrix: SymMatrix<T>,
    pub target: [T; 5],
    pub achieved: [T; 5],
    pub residual: T,
}

/// A symmetric nonnegative block with a known Perron pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Realization<T> {
    pub matrix: SymMatrix<T>,
    pub perron: T,
    pub vector: Vec<T>,
}

impl<T: Real> Realization<T> {
    fn scalar(v: T) -> Self {
        Self { matrix: SymMatrix::diagonal(&[v]).expect("order 1"), perron: v, vector: vec![T::one()] }
    }
}

fn remove_nearest<T: Real>(values: &mut Vec<T>, target: T) {
    if let Some((k, _)) = values
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| (**a - target).abs().partial_cmp(&(**b - target).abs()).expect("finite"))
    {
        values.remove(k);
    }
}

fn check_perron_vector<T: Real>(name: &str, w: &[T], order: usize, tol: &Tolerances<T>) -> Result<()> {
    if w.len() != order {
        return Err(Error::GluePrecondition(format!("{name} has length {} for a block of order {order}", w.len())));
    }
    if let Some(v) = w.iter().find(|&&v| v < -tol.entry || !v.is_finite()) {
        return Err(Error::GluePrecondition(format!("{name} has negative entry {v}")));
    }
    Ok(())
}

/// Joins two blocks through `ρ u vᵀ` and checks the resulting spectrum.
///
/// `u` and `v` must be nonnegative unit Perron vectors of `block_a` and
/// `block_b` for `alpha1` and `beta1`.
#[allow(clippy::too_many_arguments)]
pub fn fiedler_glue<T: Real>(
    block_a: &SymMatrix<T>,
    alpha1: T,
    u: &[T],
    block_b: &SymMatrix<T>,
    beta1: T,
    v: &[T],
    eps: T,
    tol: &Tolerances<T>,
) -> Result<SymMatrix<T>> {
    if alpha1 < beta1 - tol.geom {
        return Err(Error::GluePrecondition(format!("alpha1 = {alpha1} < beta1 = {beta1}")));
    }
    if eps < -tol.geom || !eps.is_finite() {
        return Err(Error::GluePrecondition(format!("eps = {eps} is negative")));
    }
    check_perron_vector("u", u, block_a.order(), tol)?;
    check_perron_vector("v", v, block_b.order(), tol)?;
    let eps = eps.max(T::zero());
    let rho = (eps * (alpha1 - beta1 + eps)).max(T::zero()).sqrt();
    let glued = SymMatrix::block(block_a, block_b, |i, j| (rho * u[i] * v[j]).max(T::zero()))?;

    let mut expected = eig::eigenvalues(block_a)?;
    remove_nearest(&mut expected, alpha1);
    let mut rest_b = eig::eigenvalues(block_b)?;
    remove_nearest(&mut rest_b, beta1);
    expected.extend(rest_b);
    expected.push(alpha1 + eps);
    expected.push(beta1 - eps);
    expected.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let got = eig::eigenvalues(&glued)?;
    let scale = T::one().max(alpha1.abs() + eps);
    let err = max_abs_diff(&got, &expected);
    if err > tol.eig * scale {
        return Err(Error::Verification(format!("glued spectrum off by {err:e}")));
    }
    Ok(glued)
}

/// Glue on tracked Perron pairs; the new Perron vector is `(ρu, εv)`
/// normalized, the top eigenvector of `[[α1, ρ], [ρ, β1]]` lifted back.
pub fn glue_realizations<T: Real>(
    a: &Realization<T>,
    b: &Realization<T>,
    eps: T,
    tol: &Tolerances<T>,
) -> Result<Realization<T>> {
    let matrix = fiedler_glue(&a.matrix, a.perron, &a.vector, &b.matrix, b.perron, &b.vector, eps, tol)?;
    let eps = eps.max(T::zero());
    let rho = (eps * (a.perron - b.perron + eps)).max(T::zero()).sqrt();
    let norm = (rho * rho + eps * eps).sqrt();
    let vector = if norm > T::zero() {
        a.vector.iter().map(|&w| rho * w / norm).chain(b.vector.iter().map(|&w| eps * w / norm)).collect()
    } else {
        a.vector.iter().copied().chain(b.vector.iter().map(|_| T::zero())).collect()
    };
    Ok(Realization { matrix, perron: a.perron + eps, vector })
}

fn check_descending<T: Real>(lams: &[T], tol: &Tolerances<T>) -> Result<()> {
    if lams.windows(2).any(|w| w[1] > w[0] + tol.geom) {
        return Err(Error::Precondition(format!("values not descending: {lams:?}")));
    }
    Ok(())
}

/// Realization of `λ1 ≥ 0 ≥ λ2 ≥ … ≥ λn` with `Σλ ≥ 0` (`n ≤ 5`) with `λ1`
/// as Perron root and its Perron vector.
pub fn suleimanova_realization<T: Real>(lams: &[T], tol: &Tolerances<T>) -> Result<Realization<T>> {
    if lams.is_empty() || lams.len() > 5 {
        return Err(Error::Precondition(format!("Suleimanova realization of {} values", lams.len())));
    }
    check_descending(lams, tol)?;
    let sum = lams.iter().fold(T::zero(), |acc, &v| acc + v);
    if sum < -tol.geom {
        return Err(Error::Precondition(format!("sum {sum} is negative")));
    }
    if lams.len() > 1 && lams[1] > tol.geom {
        return Err(Error::Precondition(format!("λ2 = {} is positive", lams[1])));
    }
    let mut current = Realization::scalar(sum.max(T::zero()));
    // most negative first: λn, then λ(n-1), …, λ2
    for &lam in lams[1..].iter().rev() {
        current = glue_realizations(&current, &Realization::scalar(T::zero()), -lam, tol)?;
    }
    Ok(current)
}

pub fn suleimanova_realize<T: Real>(lams: &[T], tol: &Tolerances<T>) -> Result<SymMatrix<T>> {
    Ok(suleimanova_realization(lams, tol)?.matrix)
}

/// Partition of the eigenvalue indices `{3, 4, 5}` (1-based, as in
/// `λ3, λ4, λ5`) into two nonempty groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    k1: Vec<usize>,
    k2: Vec<usize>,
}

impl Partition {
    pub fn new(mut k1: Vec<usize>, mut k2: Vec<usize>) -> Result<Self> {
        k1.sort_unstable();
        k2.sort_unstable();
        let mut all: Vec<usize> = k1.iter().chain(&k2).copied().collect();
        all.sort_unstable();
        let n = all.len() + 2;
        if k1.is_empty() || k2.is_empty() || all != (3..=n).collect::<Vec<_>>() {
            return Err(Error::Precondition(format!("{k1:?} / {k2:?} is not a partition of {{3..{n}}}")));
        }
        Ok(Self { k1, k2 })
    }

    pub fn k1(&self) -> &[usize] {
        &self.k1
    }

    pub fn k2(&self) -> &[usize] {
        &self.k2
    }

    fn sum<T: Real>(idx: &[usize], lams: &[T]) -> T {
        idx.iter().fold(T::zero(), |acc, &i| acc + lams[i - 1])
    }
}

/// Chooses `K1`, `K2` for a case-2 spectrum (`x > 0`, `y ≤ 0`):
/// `{3,5} | {4}` for `d ≤ −1/2`; otherwise `{3,4} | {5}` when `x > 2d + 1`
/// and `{5} | {3,4}` when `x ≤ 2d + 1`.
pub fn loewy_partition_select<T: Real>(n: &NormalizedSpectrum<T>, tol: &Tolerances<T>) -> Result<Partition> {
    let (d, x, y) = (n.d(), n.x(), n.y());
    if !(x > T::zero() && y <= tol.geom) {
        return Err(Error::Precondition(format!("partition needs x > 0 and y ≤ 0, got x = {x}, y = {y}")));
    }
    let part = if d <= lit(-0.5) {
        Partition::new(vec![3, 5], vec![4])?
    } else if x > lit::<T>(2.0) * d + T::one() {
        Partition::new(vec![3, 4], vec![5])?
    } else {
        Partition::new(vec![5], vec![3, 4])?
    };
    let lams = n.tuple();
    let (m1, m2) = (-Partition::sum(&part.k1, &lams), -Partition::sum(&part.k2, &lams));
    if !(lams[0] >= m1 - tol.geom && m1 >= m2 - tol.geom) {
        return Err(Error::Precondition(format!("no partition case applies (−ΣK1 = {m1}, −ΣK2 = {m2})")));
    }
    Ok(part)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum LoewyBranch<T> {
    /// `λ1 − ε ≥ λ2 + ε` with `ε = λ1 + ΣK1`.
    Shift { eps: T },
    /// Otherwise, `δ = (λ1 − λ2)/2` and both blocks start at `(λ1 + λ2)/2`.
    Midpoint { delta: T },
}

pub fn loewy_branch<T: Real>(lams: &[T], part: &Partition) -> LoewyBranch<T> {
    let eps = (lams[0] + Partition::sum(&part.k1, lams)).max(T::zero());
    if lams[0] - eps >= lams[1] + eps {
        LoewyBranch::Shift { eps }
    } else {
        LoewyBranch::Midpoint { delta: (lams[0] - lams[1]) / lit(2.0) }
    }
}

/// Realization of `λ1 ≥ λ2 ≥ 0 ≥ λ3 ≥ … ≥ λn` (`n` = 4 or 5, `Σλ ≥ 0`) for a
/// partition with `λ1 ≥ −ΣK1 ≥ −ΣK2`.
pub fn loewy_realize_values<T: Real>(lams: &[T], part: &Partition, tol: &Tolerances<T>) -> Result<Realization<T>> {
    let n = lams.len();
    if !(4..=5).contains(&n) || part.k1.iter().chain(&part.k2).any(|&i| i > n) || part.k1.len() + part.k2.len() != n - 2
    {
        return Err(Error::Precondition(format!("partition {part:?} does not fit {n} values")));
    }
    check_descending(lams, tol)?;
    if lams[1] < -tol.geom || lams[2] > tol.geom {
        return Err(Error::Precondition("need λ2 ≥ 0 ≥ λ3".into()));
    }
    let group = |idx: &[usize], head: T| {
        let mut vals: Vec<T> = idx.iter().map(|&i| lams[i - 1].min(T::zero())).collect();
        vals.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        vals.insert(0, head.max(T::zero()));
        vals
    };
    let (shift, head1, head2) = match loewy_branch(lams, part) {
        LoewyBranch::Shift { eps } => (eps, lams[0] - eps, lams[1] + eps),
        LoewyBranch::Midpoint { delta } => (delta, lams[0] - delta, lams[1] + delta),
    };
    let block1 = suleimanova_realization(&clamp_sum(group(&part.k1, head1)), tol)?;
    let block2 = suleimanova_realization(&clamp_sum(group(&part.k2, head2)), tol)?;
    // the two heads are ordered up to rounding; the glue needs α1 ≥ β1
    let (a, b) = if block1.perron >= block2.perron { (block1, block2) } else { (block2, block1) };
    glue_realizations(&a, &b, shift, tol)
}

/// Raises the head so the sum is not negative by rounding alone.
fn clamp_sum<T: Real>(mut vals: Vec<T>) -> Vec<T> {
    let sum = vals.iter().fold(T::zero(), |acc, &v| acc + v);
    if sum < T::zero() {
        vals[0] = vals[0] - sum;
    }
    vals
}

pub fn loewy_realize<T: Real>(
    n: &NormalizedSpectrum<T>,
    part: &Partition,
    tol: &Tolerances<T>,
) -> Result<SymMatrix<T>> {
    let m = loewy_realize_values(&n.tuple(), part, tol)?.matrix;
    check_against(&m, &n.tuple(), tol)?;
    Ok(m)
}

fn check_against<T: Real>(m: &SymMatrix<T>, target: &[T], tol: &Tolerances<T>) -> Result<T> {
    let got = eig::eigenvalues(m)?;
    let res = max_abs_diff(&got, target);
    if res > tol.eig {
        return Err(Error::Verification(format!("spectrum off by {res:e}")));
    }
    Ok(res)
}

/// The family with spectrum `(1, x, 0, d − x, −d − 1)` for `x` on the
/// segment `OJ` (`0 ≤ x ≤ 2d + 1`, `d ∈ [−1/2, 0]`).
pub fn matrix_a<T: Real>(x: T, d: T, tol: &Tolerances<T>) -> Result<SymMatrix<T>> {
    let e = tol.geom;
    if !(d >= lit::<T>(-0.5) - e && d <= e) {
        return Err(Error::Precondition(format!("matrix A needs d ∈ [-1/2, 0], got {d}")));
    }
    let top = lit::<T>(2.0) * d + T::one();
    if !(x >= -e && x <= top + e) {
        return Err(Error::Precondition(format!("matrix A needs x ∈ [0, 2d+1], got {x}")));
    }
    let x = x.max(T::zero());
    let f1 = (lit::<T>(0.5) * (x + T::one()) * (d + T::one() - x)).max(T::zero()).sqrt();
    let g1 = (x * (x - d)).max(T::zero()).sqrt();
    let z = T::zero();
    let m = SymMatrix::from_upper(&[
        [z, z, f1, z, f1],
        [z, z, z, z, g1],
        [z, z, z, g1, -d],
        [z, z, z, z, z],
        [z, z, z, z, z],
    ])?;
    m.clamp_dust(tol.entry)
}

/// Intermediate quantities of [`matrix_b`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixBParts<T> {
    pub u: T,
    pub v: T,
    pub s3: T,
}

/// `u = √(((d−x)(x+y) + d + 1)/2)`, `v = √((x+y)(x+1)(x−d)(x−d−1)(x+y+1)(x+y−d−1))`
/// and the third power sum.
pub fn matrix_b_parts<T: Real>(x: T, y: T, d: T) -> MatrixBParts<T> {
    let one = T::one();
    let u2 = lit::<T>(0.5) * ((d - x) * (x + y) + d + one);
    let v2 = (x + y) * (x + one) * (x - d) * (x - d - one) * (x + y + one) * (x + y - d - one);
    MatrixBParts { u: u2.max(T::zero()).sqrt(), v: v2.max(T::zero()).sqrt(), s3: eval_s3(RegionPoint::new(d, x, y)) }
}

/// The family with spectrum `(1, x, y, d − x − y, −d − 1)` for `y > 0` in
/// triangle `OBJ`; nonnegative wherever the third power sum is.
pub fn matrix_b<T: Real>(x: T, y: T, d: T, tol: &Tolerances<T>) -> Result<SymMatrix<T>> {
    let e = tol.geom;
    if !(d > lit(-0.5) && d <= e) {
        return Err(Error::Precondition(format!("matrix B needs d ∈ (-1/2, 0], got {d}")));
    }
    if y.is_nan() || y <= T::zero() {
        return Err(Error::Precondition(format!("matrix B needs y > 0, got {y}")));
    }
    if y > x + e || y > -x + lit::<T>(2.0) * d + T::one() + e {
        return Err(Error::Precondition(format!("({x}, {y}) is outside triangle OBJ")));
    }
    let MatrixBParts { u, v, s3 } = matrix_b_parts(x, y, d);
    if s3 < -e {
        return Err(Error::Precondition(format!("s3 = {s3} < 0")));
    }
    if u <= tol.entry {
        return Err(Error::DegenerateU { u: u.as_f64() });
    }
    let s3 = s3.max(T::zero());
    let k = T::one() / (lit::<T>(2.0) * u * u);
    let z = T::zero();
    let m = SymMatrix::from_upper(&[
        [z, z, u, z, u],
        [z, z, z, (d + T::one()) * y * k, v * k],
        [z, z, z, v * k, s3 / lit(3.0) * k],
        [z, z, z, z, z],
        [z, z, z, z, z],
    ])?;
    m.clamp_dust(tol.entry)
}

/// Both criteria for a normalized spectrum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assessment {
    pub geometric: Verdict,
    pub power_sum: Verdict,
}

impl Assessment {
    pub fn agree(&self) -> bool {
        self.geometric.realizable == self.power_sum.realizable
    }

    pub fn realizable(&self) -> bool {
        self.geometric.realizable || self.power_sum.realizable
    }

    pub fn failure(&self) -> String {
        self.geometric.failed_condition.clone().or_else(|| self.power_sum.failed_condition.clone()).unwrap_or_default()
    }
}

pub fn assess<T: Real>(n: &NormalizedSpectrum<T>, tol: &Tolerances<T>) -> Result<Assessment> {
    Ok(Assessment { geometric: theorem2_check(n.region_point(), tol)?, power_sum: theorem3_check(n, tol) })
}

/// Normalizes, mapping spectra whose spectral radius is not `λ1` to
/// [`Error::NotRealizable`].
fn normalize_for_construction<T: Real>(s: &Spectrum5<T>, tol: &Tolerances<T>) -> Result<NormalizedSpectrum<T>> {
    s.normalize(tol).map_err(|e| match e {
        Error::NotPerronDominant { .. } => Error::NotRealizable("|λ5| > λ1".into()),
        Error::NonPositiveLeading { .. } => Error::NotRealizable("λ1 ≤ 0".into()),
        other => other,
    })
}

/// Which construction the dispatcher uses for a realizable spectrum.
pub fn dispatch_method<T: Real>(n: &NormalizedSpectrum<T>) -> Method {
    if n.x() <= T::zero() {
        Method::Suleimanova
    } else if n.y() <= T::zero() {
        Method::LoewySplit
    } else {
        Method::ExplicitB
    }
}

/// Builds and verifies a realization of `s`.
pub fn construct<T: Real>(s: &Spectrum5<T>, tol: &Tolerances<T>) -> Result<Certificate<T>> {
    if s.is_zero() {
        return build(s, Method::Zero, None, tol);
    }
    let n = normalize_for_construction(s, tol)?;
    let verdicts = assess(&n, tol)?;
    if !verdicts.realizable() {
        return Err(Error::NotRealizable(verdicts.failure()));
    }
    build(s, dispatch_method(&n), Some(&n), tol)
}

/// Like [`construct`], but with a fixed method; fails with
/// [`Error::Precondition`] when the method does not apply to `s`.
pub fn construct_via<T: Real>(s: &Spectrum5<T>, method: Method, tol: &Tolerances<T>) -> Result<Certificate<T>> {
    if s.is_zero() || method == Method::Zero {
        if !(s.is_zero() && method == Method::Zero) {
            return Err(Error::Precondition(format!("{method} does not apply")));
        }
        return build(s, Method::Zero, None, tol);
    }
    let n = normalize_for_construction(s, tol)?;
    let verdicts = assess(&n, tol)?;
    if !verdicts.realizable() {
        return Err(Error::NotRealizable(verdicts.failure()));
    }
    build(s, method, Some(&n), tol)
}

fn build<T: Real>(
    s: &Spectrum5<T>,
    method: Method,
    n: Option<&NormalizedSpectrum<T>>,
    tol: &Tolerances<T>,
) -> Result<Certificate<T>> {
    let normalized = match (method, n) {
        (Method::Zero, _) => SymMatrix::zeros(5)?,
        (_, None) => return Err(Error::Precondition(format!("{method} needs a normalized spectrum"))),
        (Method::Suleimanova, Some(n)) => {
            if n.x() > tol.geom {
                return Err(Error::Precondition(format!("Suleimanova needs x ≤ 0, got {}", n.x())));
            }
            let mut lams = n.tuple();
            lams.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
            suleimanova_realize(&clamp_sum(lams.to_vec()), tol)?
        }
        (Method::LoewySplit, Some(n)) => {
            let part = loewy_partition_select(n, tol)?;
            loewy_realize_values(&n.tuple(), &part, tol)?.matrix
        }
        (Method::ExplicitA, Some(n)) => {
            if n.y().abs() > tol.geom {
                return Err(Error::Precondition(format!("matrix A needs y = 0, got {}", n.y())));
            }
            matrix_a(n.x(), n.d(), tol)?
        }
        (Method::ExplicitB, Some(n)) => matrix_b(n.x(), n.y(), n.d(), tol)?,
    };
    let scale = n.map_or(T::one(), |n| n.scale());
    let matrix = denormalize_matrix(&normalized, scale).clamp_dust(tol.entry * scale)?;
    let trace = matrix.trace();
    if trace.abs() > lit::<T>(5.0) * tol.entry * scale {
        return Err(Error::Verification(format!("trace {trace:e} is not zero")));
    }
    let mut achieved = [T::zero(); 5];
    achieved.copy_from_slice(&eig::eigenvalues(&matrix)?);
    let residual = max_abs_diff(&achieved, s.values());
    if residual > tol.eig * T::one().max(scale) {
        return Err(Error::Verification(format!("{method}: residual {residual:e} exceeds {:e}", tol.eig)));
    }
    Ok(Certificate { method, matrix, target: *s.values(), achieved, residual })
}

/// Whether `d` admits case 3 at all (`y > 0` needs `d > −1/2`).
pub fn case3_possible<T: Real>(d: T) -> bool {
    d > lit(-0.5) && d <= T::zero()
}

/// `d* = −3/4 + √5/4`, re-exported for callers choosing sample regimes.
pub fn curve_threshold<T: Real>() -> T {
    transition_d()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    fn spectrum(v: [f64; 5]) -> Spectrum5<f64> {
        Spectrum5::validate_and_sort(&v, &tol()).unwrap()
    }

    fn assert_spectrum(m: &SymMatrix<f64>, want: &[f64], eps: f64) {
        let got = eig::eigenvalues(m).unwrap();
        let mut want = want.to_vec();
        want.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let err = max_abs_diff(&got, &want);
        assert!(err <= eps, "got {got:?}, want {want:?}");
    }

    #[test]
    fn glue_two_scalars() {
        let a = SymMatrix::diagonal(&[0.5]).unwrap();
        let b = SymMatrix::diagonal(&[0.0]).unwrap();
        let m = fiedler_glue(&a, 0.5, &[1.0], &b, 0.0, &[1.0], 0.5, &tol()).unwrap();
        assert_eq!(m.get(0, 1), 0.5_f64.sqrt());
        // z² − 0.5z − 0.5 = (z − 1)(z + 0.5)
        assert_spectrum(&m, &[1.0, -0.5], 1e-14);
    }

    #[test]
    fn glue_with_zero_eps_is_block_diagonal() {
        let a = SymMatrix::from_rows(&[[0.0, 0.5], [0.5, 0.0]]).unwrap();
        let b = SymMatrix::diagonal(&[0.2]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = fiedler_glue(&a, 0.5, &[h, h], &b, 0.2, &[1.0], 0.0, &tol()).unwrap();
        assert_eq!(m.get(0, 2), 0.0);
        assert_eq!(m.get(1, 2), 0.0);
        assert_spectrum(&m, &[0.5, 0.2, -0.5], 1e-14);
    }

    #[test]
    fn glue_block_with_scalar() {
        let a = SymMatrix::from_rows(&[[0.0, 0.5], [0.5, 0.0]]).unwrap();
        let b = SymMatrix::diagonal(&[0.0]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = fiedler_glue(&a, 0.5, &[h, h], &b, 0.0, &[1.0], 0.3, &tol()).unwrap();
        assert_spectrum(&m, &[0.8, -0.3, -0.5], 1e-14);
    }

    #[test]
    fn glue_preconditions() {
        let a = SymMatrix::diagonal(&[0.0]).unwrap();
        let b = SymMatrix::diagonal(&[1.0]).unwrap();
        assert!(matches!(fiedler_glue(&a, 0.0, &[1.0], &b, 1.0, &[1.0], 0.1, &tol()), Err(Error::GluePrecondition(_))));
        assert!(matches!(
            fiedler_glue(&b, 1.0, &[1.0], &a, 0.0, &[1.0], -0.1, &tol()),
            Err(Error::GluePrecondition(_))
        ));
        assert!(matches!(
            fiedler_glue(&b, 1.0, &[-1.0], &a, 0.0, &[1.0], 0.1, &tol()),
            Err(Error::GluePrecondition(_))
        ));
    }

    #[test]
    fn glue_with_wrong_perron_vector_fails_verification() {
        let a = SymMatrix::from_rows(&[[0.0, 0.5], [0.5, 0.0]]).unwrap();
        let b = SymMatrix::diagonal(&[0.0]).unwrap();
        assert!(matches!(
            fiedler_glue(&a, 0.5, &[1.0, 0.0], &b, 0.0, &[1.0], 0.3, &tol()),
            Err(Error::Verification(_))
        ));
    }

    #[test]
    fn suleimanova_examples() {
        assert_eq!(suleimanova_realize(&[0.0], &tol()).unwrap(), SymMatrix::diagonal(&[0.0]).unwrap());
        let m = suleimanova_realize(&[1.0, -0.2, -0.3, -0.5], &tol()).unwrap();
        assert_spectrum(&m, &[1.0, -0.2, -0.3, -0.5], 1e-14);
        assert!(m.is_nonnegative());
        let m = suleimanova_realize(&[1.0, -0.25, -0.25, -0.25, -0.25], &tol()).unwrap();
        assert_spectrum(&m, &[1.0, -0.25, -0.25, -0.25, -0.25], 1e-14);
        assert!(m.trace().abs() < 1e-15);
    }

    #[test]
    fn suleimanova_intermediate_blocks() {
        let r = suleimanova_realization(&[1.0, -0.2, -0.3, -0.5], &tol()).unwrap();
        assert!((r.perron - 1.0).abs() < 1e-15);
        let p = eig::perron_vector(&r.matrix).unwrap();
        let diff = max_abs_diff(&p.vector, &r.vector);
        assert!(diff < 1e-12, "{:?} vs {:?}", p.vector, r.vector);
    }

    #[test]
    fn suleimanova_preconditions() {
        assert!(suleimanova_realize(&[1.0, 0.5, -1.5], &tol()).is_err());
        assert!(suleimanova_realize(&[1.0, -0.6, -0.6], &tol()).is_err());
        assert!(suleimanova_realize::<f64>(&[], &tol()).is_err());
    }

    fn norm(d: f64, x: f64, y: f64) -> NormalizedSpectrum<f64> {
        NormalizedSpectrum::from_region_point(RegionPoint::new(d, x, y), &tol()).unwrap()
    }

    #[test]
    fn partition_examples() {
        let p = loewy_partition_select(&norm(-0.6, 0.1, -0.32), &tol()).unwrap();
        assert_eq!((p.k1(), p.k2()), (&[3, 5][..], &[4][..]));
        let p = loewy_partition_select(&norm(-0.3, 0.5, -0.2), &tol()).unwrap();
        assert_eq!((p.k1(), p.k2()), (&[3, 4][..], &[5][..]));
        let p = loewy_partition_select(&norm(-0.3, 0.3, -0.1), &tol()).unwrap();
        assert_eq!((p.k1(), p.k2()), (&[5][..], &[3, 4][..]));
        assert!(loewy_partition_select(&norm(-0.3, -0.1, -0.1), &tol()).is_err());
        assert!(Partition::new(vec![3], vec![3, 4]).is_err());
        assert!(Partition::new(vec![], vec![3, 4, 5]).is_err());
    }

    #[test]
    fn loewy_examples() {
        let n = norm(-0.6, 0.1, -0.32);
        let p = loewy_partition_select(&n, &tol()).unwrap();
        let t = n.tuple();
        match loewy_branch(&t, &p) {
            LoewyBranch::Shift { eps } => {
                assert!((eps - 0.28).abs() < 1e-15);
                assert!((t[0] - eps - 0.72).abs() < 1e-15 && (t[1] + eps - 0.38).abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
        let m = loewy_realize(&n, &p, &tol()).unwrap();
        assert_spectrum(&m, &t, 1e-8);
        assert!(m.is_nonnegative());

        let n = norm(-0.3, 0.5, -0.2);
        let p = Partition::new(vec![3, 4], vec![5]).unwrap();
        let m = loewy_realize(&n, &p, &tol()).unwrap();
        assert_spectrum(&m, &[1.0, 0.5, -0.2, -0.6, -0.7], 1e-8);
    }

    #[test]
    fn loewy_midpoint_branch_for_positive_trace() {
        // ε = 0.7: λ1 − ε = 0.3 < λ2 + ε = 1.6
        let lams = [1.0, 0.9, -0.3, -0.4];
        let p = Partition::new(vec![3], vec![4]).unwrap();
        assert!(matches!(loewy_branch(&lams, &p), LoewyBranch::Midpoint { delta } if (delta - 0.05_f64).abs() < 1e-15));
        let r = loewy_realize_values(&lams, &p, &tol()).unwrap();
        assert_spectrum(&r.matrix, &lams, 1e-12);
        assert!(r.matrix.is_nonnegative());
        assert!((r.perron - 1.0).abs() < 1e-15);
    }

    #[test]
    fn matrix_a_examples() {
        let t = tol();
        let m = matrix_a(0.0, -0.3, &t).unwrap();
        assert_eq!(m.get(0, 2), (0.7_f64 / 2.0).sqrt());
        assert_eq!(m.get(1, 4), 0.0);
        assert_spectrum(&m, &[1.0, 0.0, 0.0, -0.3, -0.7], 1e-12);
        let m = matrix_a(0.5, 0.0, &t).unwrap();
        assert_eq!(m.get(0, 2), 0.375_f64.sqrt());
        assert_eq!(m.get(1, 4), 0.5);
        assert_spectrum(&m, &[1.0, 0.5, 0.0, -0.5, -1.0], 1e-12);
        let m = matrix_a(0.4, -0.3, &t).unwrap();
        assert_spectrum(&m, &[1.0, 0.4, 0.0, -0.7, -0.7], 1e-12);
        assert!(matrix_a(0.5, -0.3, &t).is_err());
        assert!(matrix_a(0.1, -0.6, &t).is_err());
    }

    #[test]
    fn matrix_b_examples() {
        let t = tol();
        let m = matrix_b(0.2, 0.1, -0.1, &t).unwrap();
        assert_spectrum(&m, &[1.0, 0.2, 0.1, -0.4, -0.9], 1e-10);
        let m = matrix_b(0.15, 0.1, -0.3, &t).unwrap();
        assert_spectrum(&m, &[1.0, 0.15, 0.1, -0.55, -0.7], 1e-10);
        let (x, y, d) = (0.2_f64, 0.1, -0.1);
        assert!((x - d - 1.0 + 0.7).abs() < 1e-15 && (x + y - d - 1.0 + 0.6).abs() < 1e-15);
        assert!(matrix_b_parts(x, y, d).v > 0.0);
    }

    #[test]
    fn matrix_b_preconditions() {
        let t = tol();
        assert!(matrix_b(0.2, 0.0, -0.1, &t).is_err());
        assert!(matrix_b(0.2, 0.3, -0.1, &t).is_err());
        assert!(matrix_b(0.1, 0.05, -0.6, &t).is_err());
        // above the curve HI: s3 < 0
        assert!(matches!(matrix_b(0.4, 0.35, -0.1, &t), Err(Error::Precondition(_))));
    }

    #[test]
    fn construct_examples() {
        let t = tol();
        let c = construct(&spectrum([0.0; 5]), &t).unwrap();
        assert_eq!(c.method, Method::Zero);
        assert_eq!(c.matrix, SymMatrix::zeros(5).unwrap());

        let c = construct(&spectrum([2.0, 1.0, 0.0, -1.0, -2.0]), &t).unwrap();
        assert_eq!(c.method, Method::LoewySplit);
        assert!(c.residual <= 1e-8);
        assert_spectrum(&c.matrix, &[2.0, 1.0, 0.0, -1.0, -2.0], 1e-8);

        let err = construct(&spectrum([1.0, 0.7, -0.52, -0.58, -0.6]), &t).unwrap_err();
        assert_eq!(err, Error::NotRealizable("λ2+λ5 > 0".into()));

        let c = construct(&spectrum([1.0, 0.2, 0.1, -0.4, -0.9]), &t).unwrap();
        assert_eq!(c.method, Method::ExplicitB);

        let c = construct(&spectrum([1.0, -0.25, -0.25, -0.25, -0.25]), &t).unwrap();
        assert_eq!(c.method, Method::Suleimanova);

        assert!(matches!(construct(&spectrum([1.0, 0.5, 0.5, 0.5, -2.5]), &t), Err(Error::NotRealizable(_))));
    }

    #[test]
    fn construct_via_matrix_a_on_segment() {
        let t = tol();
        let s = spectrum([1.0, 0.3, 0.0, -0.5, -0.8]);
        let a = construct_via(&s, Method::ExplicitA, &t).unwrap();
        let l = construct_via(&s, Method::LoewySplit, &t).unwrap();
        assert!(a.residual <= 1e-8 && l.residual <= 1e-8);
        assert!(construct_via(&s, Method::ExplicitB, &t).is_err());
        assert!(construct_via(&s, Method::Zero, &t).is_err());
    }

    #[test]
    fn certificate_scales_with_leading_eigenvalue() {
        let t = tol();
        let c = construct(&spectrum([3.0, 0.6, 0.3, -1.2, -2.7]), &t).unwrap();
        assert_eq!(c.method, Method::ExplicitB);
        assert!(c.residual <= 3e-8);
        assert_eq!(eig::verify(&c.matrix, &spectrum([3.0, 0.6, 0.3, -1.2, -2.7])).unwrap(), c.residual);
    }
}
