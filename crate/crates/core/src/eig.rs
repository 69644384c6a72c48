//! Dense symmetric eigensolver for orders 1 to 5 (cyclic Jacobi), Perron
//! vectors, and spectrum verification.

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::scalar::{lit, Real};
use crate::spectrum::Spectrum5;

pub const MAX_SWEEPS: usize = 50;

/// Eigenvalues in descending order; `vectors[k]` is the unit eigenvector
/// paired with `values[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<T>>,
}

/// Cyclic-by-row Jacobi.
///
/// Sweeps until the off-diagonal Frobenius norm is at most `1e-14 ‖M‖F`
/// (or machine epsilon times `‖M‖F` for coarser scalars).
pub fn jacobi_eigen<T: Real>(m: &SymMatrix<T>) -> Result<EigenDecomposition<T>> {
    let n = m.order();
    let mut a = m.to_rows();
    let mut v: Vec<Vec<T>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();

    let threshold = lit::<T>(1e-14).max(T::epsilon()) * m.frobenius_norm();
    let skip = lit::<T>(1e-300).max(T::min_positive_value());
    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + a[i][j] * a[i][j])
            .sqrt();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.abs() < skip {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (lit::<T>(2.0) * apq);
                let t = if theta.abs() > lit::<T>(1e150).min(T::max_value().sqrt()) {
                    T::one() / (lit::<T>(2.0) * theta)
                } else {
                    let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let akp = row[p];
                    let akq = row[q];
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                #[allow(clippy::needless_range_loop)]
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep the lower column index first
    order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order.iter().map(|&i| (0..n).map(|k| v[k][i]).collect()).collect();
    Ok(EigenDecomposition { values, vectors })
}

/// Eigenvalues only, descending.
pub fn eigenvalues<T: Real>(m: &SymMatrix<T>) -> Result<Vec<T>> {
    Ok(jacobi_eigen(m)?.values)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerronPair<T> {
    pub value: T,
    pub vector: Vec<T>,
}

/// Largest eigenvalue with an entrywise nonnegative unit eigenvector.
///
/// Each eigenvector whose eigenvalue ties the largest one is tried in
/// column order: it is flipped so its largest-magnitude entry is positive
/// and entries below `1e-12` in magnitude are zeroed. The first candidate
/// without a remaining negative entry is returned.
pub fn perron_vector<T: Real>(m: &SymMatrix<T>) -> Result<PerronPair<T>> {
    if m.min_entry() < T::zero() {
        return Err(Error::Precondition("Perron vector requires a nonnegative matrix".into()));
    }
    let eig = jacobi_eigen(m)?;
    let top = eig.values[0];
    let dust = lit::<T>(1e-12).max(lit::<T>(16.0) * T::epsilon());
    let tie = dust * T::one().max(m.norm_inf());
    let mut worst = T::zero();
    for (value, vec) in eig.values.iter().zip(&eig.vectors) {
        if *value < top - tie {
            break;
        }
        let lead = vec.iter().copied().fold(T::zero(), |acc, v| if v.abs() > acc.abs() { v } else { acc });
        let sign = if lead < T::zero() { -T::one() } else { T::one() };
        let cand: Vec<T> = vec.iter().map(|&v| v * sign).map(|v| if v.abs() < dust { T::zero() } else { v }).collect();
        let min = cand.iter().copied().fold(T::infinity(), T::min);
        if min >= T::zero() {
            return Ok(PerronPair { value: top, vector: cand });
        }
        worst = worst.min(min);
    }
    Err(Error::NotPerronLike { value: worst.as_f64() })
}

/// `max_i |λ_i(m) − target_i|` with both sides sorted descending.
pub fn verify<T: Real>(m: &SymMatrix<T>, target: &Spectrum5<T>) -> Result<T> {
    if m.order() != 5 {
        return Err(Error::Precondition(format!("verification needs a 5x5 matrix, got order {}", m.order())));
    }
    let values = eigenvalues(m)?;
    Ok(max_abs_diff(&values, target.values()))
}

pub(crate) fn max_abs_diff<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc.max((x - y).abs()))
}
