//! Scalar abstraction and numerical tolerances.
//!
//! Every routine in the crate is written against [`Real`], which is
//! implemented for `f32` and `f64`. The crate root exposes `f64` aliases
//! for the common case.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point scalar usable by the region geometry, the constructions
/// and the eigensolver.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for [`Real::lit`].
#[inline]
pub(crate) fn lit<T: Real>(v: f64) -> T {
    T::lit(v)
}

/// Closure margins used when comparing floating point values against the
/// exact inequalities that define realizability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    /// Zero-trace check, relative to `max(1, |λ1|)`.
    pub sum: T,
    /// Slack for every region and ordering inequality.
    pub geom: T,
    /// Matrix entries in `[-entry, 0)` are clamped to zero; anything below is an error.
    pub entry: T,
    /// Maximum eigenvalue residual accepted for a certificate.
    pub eig: T,
}

impl<T: Real> Tolerances<T> {
    /// Tolerances never tighter than a fixed multiple of machine epsilon, so
    /// the same defaults remain meaningful in single precision.
    pub fn for_precision() -> Self {
        let eps = T::epsilon();
        let floor = |v: f64, ulps: f64| lit::<T>(v).max(eps * lit(ulps));
        Self { sum: floor(1e-12, 64.0), geom: floor(1e-9, 1024.0), entry: floor(1e-12, 64.0), eig: floor(1e-8, 8192.0) }
    }

    pub fn with_geom(mut self, geom: T) -> Self {
        self.geom = geom;
        self
    }

    pub fn with_sum(mut self, sum: T) -> Self {
        self.sum = sum;
        self
    }
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self::for_precision()
    }
}

/// Real (sign-preserving) cube root.
#[inline]
pub(crate) fn real_cbrt<T: Real>(v: T) -> T {
    v.cbrt()
}

/// Unevaluated sum `hi + lo` carrying about twice the working precision.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Dd<T> {
    pub hi: T,
    pub lo: T,
}

impl<T: Real> Dd<T> {
    pub fn from(v: T) -> Self {
        Self { hi: v, lo: T::zero() }
    }

    fn two_sum(a: T, b: T) -> Self {
        let s = a + b;
        let bb = s - a;
        Self { hi: s, lo: (a - (s - bb)) + (b - bb) }
    }

    fn renorm(hi: T, lo: T) -> Self {
        let s = hi + lo;
        Self { hi: s, lo: lo - (s - hi) }
    }

    pub fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        Self::renorm(s.hi, s.lo + self.lo + o.lo)
    }

    pub fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p) + (self.hi * o.lo + self.lo * o.hi);
        Self::renorm(p, e)
    }

    pub fn scale(self, k: T) -> Self {
        self.mul(Self::from(k))
    }

    /// One Newton correction on top of the working-precision root.
    pub fn sqrt(self) -> Self {
        if self.hi <= T::zero() {
            return Self::from(T::zero());
        }
        let s = self.hi.sqrt();
        // hi − s² is exact under a fused multiply-add
        let corr = ((-s).mul_add(s, self.hi) + self.lo) / (s + s);
        Self::renorm(s, corr)
    }
}
