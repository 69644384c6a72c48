//! Input spectra, the normalized `(1, x, y, d-x-y, -d-1)` form and the
//! `(d, x, y)` coordinates used by the region geometry.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::scalar::{lit, Real, Tolerances};

/// Five eigenvalue targets, sorted non-increasing, summing to zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct Spectrum5<T> {
    #[serde(rename = "eigenvalues")]
    values: [T; 5],
}

impl<T: Real> Spectrum5<T> {
    /// Checks finiteness and the zero trace, and sorts descending.
    pub fn validate_and_sort(raw: &[T], tol: &Tolerances<T>) -> Result<Self> {
        if raw.len() != 5 {
            return Err(Error::WrongLength(raw.len()));
        }
        if let Some(index) = raw.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let mut values = [T::zero(); 5];
        values.copy_from_slice(raw);
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));

        let sum = values.iter().fold(T::zero(), |acc, &v| acc + v);
        let bound = tol.sum * T::one().max(values[0].abs());
        if sum.abs() > bound {
            return Err(Error::NonZeroTrace { sum: sum.as_f64(), tol: bound.as_f64() });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[T; 5] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Divides out `λ1`, rejecting spectra whose spectral radius is not `λ1`.
    pub fn normalize(&self, tol: &Tolerances<T>) -> Result<NormalizedSpectrum<T>> {
        let [l1, l2, l3, l4, l5] = self.values;
        if self.is_zero() {
            return Err(Error::ZeroSpectrum);
        }
        if l1 <= T::zero() {
            return Err(Error::NonPositiveLeading { lambda1: l1.as_f64() });
        }
        if -l5 > l1 * (T::one() + tol.geom) {
            return Err(Error::NotPerronDominant { lambda1: l1.as_f64(), abs_lambda5: (-l5).as_f64() });
        }
        let x = l2 / l1;
        let y = l3 / l1;
        let d = ((l2 + l3 + l4) / l1).max(lit(-0.75)).min(T::zero());
        Ok(NormalizedSpectrum { x, y, d, scale: l1 })
    }
}

/// Spectrum `(1, x, y, d-x-y, -d-1)` together with the `λ1` divided out.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalizedSpectrum<T> {
    x: T,
    y: T,
    d: T,
    scale: T,
}

impl<T: Real> NormalizedSpectrum<T> {
    /// Interprets region coordinates as a spectrum with `scale = 1`.
    pub fn from_region_point(p: RegionPoint<T>, tol: &Tolerances<T>) -> Result<Self> {
        let RegionPoint { d, x, y } = p;
        if !(d.is_finite() && x.is_finite() && y.is_finite()) {
            return Err(Error::NonFinite { index: 0 });
        }
        let n = Self { x, y, d, scale: T::one() };
        let t = n.tuple();
        if t.windows(2).any(|w| w[1] > w[0] + tol.geom) {
            return Err(Error::NotOrdered { x: t[1].as_f64(), y: t[2].as_f64(), l4: t[3].as_f64(), l5: t[4].as_f64() });
        }
        if d > tol.geom {
            return Err(Error::NotPerronDominant { lambda1: 1.0, abs_lambda5: (d + T::one()).as_f64() });
        }
        Ok(n)
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn y(&self) -> T {
        self.y
    }

    pub fn d(&self) -> T {
        self.d
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn lambda4(&self) -> T {
        self.d - self.x - self.y
    }

    pub fn lambda5(&self) -> T {
        -self.d - T::one()
    }

    /// `(1, x, y, d-x-y, -d-1)`.
    pub fn tuple(&self) -> [T; 5] {
        [T::one(), self.x, self.y, self.lambda4(), self.lambda5()]
    }

    /// The original eigenvalues, `scale` times the tuple.
    pub fn denormalized(&self) -> [T; 5] {
        self.tuple().map(|v| v * self.scale)
    }

    pub fn region_point(&self) -> RegionPoint<T> {
        RegionPoint { d: self.d, x: self.x, y: self.y }
    }

    /// `s_k = 1 + x^k + y^k + (d-x-y)^k + (-d-1)^k`.
    pub fn power_sum(&self, k: u32) -> T {
        let k = i32::try_from(k).expect("power sum order fits in i32");
        self.tuple().iter().fold(T::zero(), |acc, v| acc + v.powi(k))
    }
}

/// Coordinates `(d, x, y)` in which the region geometry is expressed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegionPoint<T> {
    pub d: T,
    pub x: T,
    pub y: T,
}

impl<T> RegionPoint<T> {
    pub fn new(d: T, x: T, y: T) -> Self {
        Self { d, x, y }
    }
}

/// Multiplies every entry by `scale`; the spectrum scales accordingly.
pub fn denormalize_matrix<T: Real>(m: &SymMatrix<T>, scale: T) -> SymMatrix<T> {
    m.scaled(scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    #[test]
    fn zero_spectrum_validates() {
        let s = Spectrum5::validate_and_sort(&[0.0; 5], &tol()).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.normalize(&tol()).unwrap_err(), Error::ZeroSpectrum);
    }

    #[test]
    fn sorts_descending() {
        let s = Spectrum5::validate_and_sort(&[-1.0, 1.0, -0.5, 0.0, 0.5], &tol()).unwrap();
        assert_eq!(s.values(), &[1.0, 0.5, 0.0, -0.5, -1.0]);
    }

    #[test]
    fn rejects_nonzero_trace_and_nonfinite() {
        assert!(matches!(Spectrum5::validate_and_sort(&[1.0; 5], &tol()), Err(Error::NonZeroTrace { .. })));
        assert_eq!(
            Spectrum5::validate_and_sort(&[1.0, f64::NAN, 0.0, 0.0, -1.0], &tol()).unwrap_err(),
            Error::NonFinite { index: 1 }
        );
        assert_eq!(Spectrum5::validate_and_sort(&[1.0, -1.0], &tol()).unwrap_err(), Error::WrongLength(2));
    }

    #[test]
    fn normalize_divides_by_leading() {
        let s = Spectrum5::validate_and_sort(&[2.0, 1.0, 0.0, -1.0, -2.0], &tol()).unwrap();
        let n = s.normalize(&tol()).unwrap();
        assert_eq!((n.x(), n.y(), n.d(), n.scale()), (0.5, 0.0, 0.0, 2.0));
    }

    #[test]
    fn normalize_single_point_of_d_minus_three_quarters() {
        let s = Spectrum5::validate_and_sort(&[1.0, -0.25, -0.25, -0.25, -0.25], &tol()).unwrap();
        let n = s.normalize(&tol()).unwrap();
        assert_eq!((n.x(), n.y(), n.d(), n.scale()), (-0.25, -0.25, -0.75, 1.0));
    }

    #[test]
    fn normalize_rejects_non_perron() {
        let s = Spectrum5::validate_and_sort(&[1.0, 0.5, 0.5, 0.5, -2.5], &tol()).unwrap();
        assert!(matches!(s.normalize(&tol()), Err(Error::NotPerronDominant { .. })));
    }

    #[test]
    fn normalize_rejects_nonpositive_leading() {
        // Passes the relative trace check but has no positive entry.
        let s = Spectrum5::validate_and_sort(&[0.0, 0.0, 0.0, 0.0, -1e-14], &tol()).unwrap();
        assert!(matches!(s.normalize(&tol()), Err(Error::NonPositiveLeading { .. })));
    }

    #[test]
    fn power_sums() {
        let n = NormalizedSpectrum::from_region_point(RegionPoint::new(-0.75, -0.25, -0.25), &tol()).unwrap();
        assert!(n.power_sum(1).abs() < 1e-15);
        assert!((n.power_sum(2) - 1.25).abs() < 1e-15);
        let n = NormalizedSpectrum::from_region_point(RegionPoint::new(-0.1, 0.2, 0.1), &tol()).unwrap();
        // 1 + 0.008 + 0.001 - 0.064 - 0.729
        assert!((n.power_sum(3) - 0.216).abs() < 1e-14);
    }

    #[test]
    fn from_region_point_examples() {
        let n = NormalizedSpectrum::from_region_point(RegionPoint::new(0.0, 0.5, 0.0), &tol()).unwrap();
        assert_eq!(n.tuple(), [1.0, 0.5, 0.0, -0.5, -1.0]);
        let n = NormalizedSpectrum::from_region_point(RegionPoint::new(-0.75, -0.25, -0.25), &tol()).unwrap();
        assert_eq!(n.tuple(), [1.0, -0.25, -0.25, -0.25, -0.25]);
        assert!(matches!(
            NormalizedSpectrum::from_region_point(RegionPoint::new(0.0, 0.0, 0.5), &tol()),
            Err(Error::NotOrdered { .. })
        ));
    }

    #[test]
    fn denormalize_examples() {
        let m = SymMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(denormalize_matrix(&m, 1.0), m);
        let h = denormalize_matrix(&m, 0.5);
        assert_eq!(h.to_rows(), vec![vec![0.0, 0.5], vec![0.5, 0.0]]);
    }
}
