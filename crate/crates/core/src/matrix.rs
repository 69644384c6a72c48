use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const MAX_ORDER: usize = 5;

/// Small dense symmetric matrix of order 1 to 5.
///
/// Symmetry is exact: the constructors either mirror the upper triangle or
/// reject input whose transpose differs bit for bit. Nonnegativity and the
/// trace are *not* invariants of the type; eigensolver inputs may have
/// negative entries and intermediate glue blocks may have nonzero trace.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(into = "Vec<Vec<f64>>")]
#[serde(bound(serialize = "T: Real"))]
pub struct SymMatrix<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Real> From<SymMatrix<T>> for Vec<Vec<f64>> {
    fn from(m: SymMatrix<T>) -> Self {
        m.to_rows().into_iter().map(|r| r.into_iter().map(|v| v.as_f64()).collect()).collect()
    }
}

impl<T: Real> SymMatrix<T> {
    pub fn zeros(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(Self { order, entries: vec![T::zero(); order * order] })
    }

    pub fn diagonal(diag: &[T]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &v) in diag.iter().enumerate() {
            m.entries[i * m.order + i] = v;
        }
        Ok(m)
    }

    /// Builds a matrix from rows, requiring exact symmetry.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        check_order(order)?;
        let mut entries = Vec::with_capacity(order * order);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != order {
                return Err(Error::NotSquare { rows: order, row, len: r.len() });
            }
            entries.extend_from_slice(r);
        }
        for i in 0..order {
            for j in (i + 1)..order {
                if entries[i * order + j] != entries[j * order + i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { order, entries })
    }

    /// Builds a matrix from its upper triangle (including the diagonal);
    /// the lower triangle of `rows` is ignored.
    pub fn from_upper<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        check_order(order)?;
        let mut m = Self::zeros(order)?;
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != order {
                return Err(Error::NotSquare { rows: order, row: i, len: r.len() });
            }
            for (j, &v) in r.iter().enumerate().skip(i) {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.order + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.order + j] = v;
        self.entries[j * self.order + i] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn trace(&self) -> T {
        (0..self.order).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn frobenius_norm(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> T {
        self.entries
            .chunks(self.order)
            .map(|r| r.iter().fold(T::zero(), |acc, &v| acc + v.abs()))
            .fold(T::zero(), T::max)
    }

    pub fn min_entry(&self) -> T {
        self.entries.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&v| v >= T::zero())
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self { order: self.order, entries: self.entries.iter().map(|&v| v * factor).collect() }
    }

    /// `Pᵀ M P` for the permutation that maps row `i` to row `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.order {
            return Err(Error::Precondition(format!("permutation of length {} for order {}", perm.len(), self.order)));
        }
        let mut m = Self::zeros(self.order)?;
        for i in 0..self.order {
            for j in 0..self.order {
                m.entries[i * self.order + j] = self.get(perm[i], perm[j]);
            }
        }
        Ok(m)
    }

    /// Sets entries in `[-tol, 0)` to zero; entries below `-tol` are an error.
    pub fn clamp_dust(mut self, tol: T) -> Result<Self> {
        for i in 0..self.order {
            for j in i..self.order {
                let v = self.get(i, j);
                if v < -tol || v.is_nan() {
                    return Err(Error::NegativeEntry { i, j, value: v.as_f64() });
                }
                if v < T::zero() {
                    self.set(i, j, T::zero());
                }
            }
        }
        Ok(self)
    }

    /// Block-diagonal matrix with the coupling block `c` (rows of `a`,
    /// columns of `b`) placed off the diagonal.
    pub(crate) fn block(a: &Self, b: &Self, coupling: impl Fn(usize, usize) -> T) -> Result<Self> {
        let n = a.order + b.order;
        let mut m = Self::zeros(n)?;
        for i in 0..a.order {
            for j in i..a.order {
                m.set(i, j, a.get(i, j));
            }
        }
        for i in 0..b.order {
            for j in i..b.order {
                m.set(a.order + i, a.order + j, b.get(i, j));
            }
        }
        for i in 0..a.order {
            for j in 0..b.order {
                m.set(i, a.order + j, coupling(i, j));
            }
        }
        Ok(m)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        self.entries.chunks(self.order).map(|r| r.iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a * b)).collect()
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::BadOrder(order));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric_rows() {
        let err = SymMatrix::from_rows(&[[0.0, 1.0], [0.5, 0.0]]).unwrap_err();
        assert_eq!(err, Error::NotSymmetric { i: 0, j: 1 });
    }

    #[test]
    fn rejects_bad_order() {
        assert_eq!(SymMatrix::<f64>::zeros(6).unwrap_err(), Error::BadOrder(6));
        assert_eq!(SymMatrix::<f64>::zeros(0).unwrap_err(), Error::BadOrder(0));
    }

    #[test]
    fn clamp_dust_zeroes_tiny_negatives_only() {
        let m = SymMatrix::from_rows(&[[0.0, -1e-13], [-1e-13, 0.0]]).unwrap();
        let c = m.clamp_dust(1e-12).unwrap();
        assert_eq!(c.get(0, 1), 0.0);
        let m = SymMatrix::from_rows(&[[0.0, -1e-10], [-1e-10, 0.0]]).unwrap();
        assert!(matches!(m.clamp_dust(1e-12), Err(Error::NegativeEntry { .. })));
    }

    #[test]
    fn from_upper_mirrors() {
        let m = SymMatrix::from_upper(&[[1.0, 2.0], [99.0, 3.0]]).unwrap();
        assert_eq!(m.get(1, 0), 2.0);
        assert_eq!(m.trace(), 4.0);
    }
}
