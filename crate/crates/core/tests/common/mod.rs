#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use sniep5::construct::dispatch_method;
use sniep5::oracle::ordered_box;
use sniep5::{theorem2_check, Method, Normalized, Point, Tolerances};

const FRAC_BITS: u32 = 640;

fn to_fixed(v: f64) -> BigInt {
    // v = m · 2^e exactly
    let (mant, exp, sign) = num_traits::float::FloatCore::integer_decode(v);
    let m = BigInt::from(mant) * sign;
    let shift = exp as i64 + FRAC_BITS as i64;
    assert!(shift >= 0, "value too small for the fixed-point oracle");
    m << (shift as usize)
}

fn from_fixed(v: &BigInt) -> f64 {
    // keep ~200 significant bits before converting
    let bits = v.bits() as i64;
    let drop = (bits - 200).max(0);
    let top = v >> (drop as usize);
    top.to_f64().unwrap() * 2f64.powi((drop - FRAC_BITS as i64) as i32)
}

/// Direct-form `r(d) = 4d³ + 27d² + 27d + 3√3·√(d²(d+1)(8d²+27d+27))` in
/// 640-bit fixed point; the square root is truncated, so the result is
/// within about `2^-630` of the exact value.
pub fn r_direct_exact(d: f64) -> f64 {
    let s = BigInt::from(1) << FRAC_BITS;
    let dd = to_fixed(d);
    let poly =
        BigInt::from(4) * &dd * &dd * &dd / (&s * &s) + BigInt::from(27) * &dd * &dd / &s + BigInt::from(27) * &dd;
    let quad = BigInt::from(8) * &dd * &dd / &s + BigInt::from(27) * &dd + BigInt::from(27) * &s;
    let rad = &dd * &dd / &s * (&dd + &s) / &s * &quad / &s;
    assert!(!rad.is_negative());
    // 3·√(3·rad) in the same scale: √(3·rad·S)
    let root = if rad.is_zero() { BigInt::zero() } else { (BigInt::from(3) * rad * &s).sqrt() };
    from_fixed(&(poly + BigInt::from(3) * root))
}

pub fn tol() -> Tolerances<f64> {
    Tolerances::default()
}

pub fn region_point(d: f64, x: f64, y: f64) -> Option<Normalized> {
    Normalized::from_region_point(Point::new(d, x, y), &Tolerances::default().with_geom(0.0)).ok()
}

/// Rejection sample of a realizable normalized spectrum that the dispatcher
/// routes to `method` (`Suleimanova`, `LoewySplit` or `ExplicitB`), or a
/// point of segment `OJ` for `ExplicitA`.
pub fn sample_realizable(rng: &mut impl Rng, method: Method) -> Normalized {
    let t = tol();
    loop {
        if method == Method::ExplicitA {
            let d = -0.5 * rng.gen::<f64>();
            let x = (2.0 * d + 1.0) * rng.gen::<f64>();
            if let Some(n) = region_point(d, x, 0.0) {
                return n;
            }
            continue;
        }
        let d = match method {
            Method::ExplicitB => -0.5 * rng.gen::<f64>(),
            _ => -0.75 * rng.gen::<f64>(),
        };
        let [x0, x1, y0, y1] = ordered_box(d);
        let (x0, x1, y0, y1) = match method {
            Method::Suleimanova => (x0, x1.min(0.0), y0, y1),
            Method::LoewySplit => (x0.max(0.0), x1, y0, y1.min(0.0)),
            _ => (x0.max(0.0), x1, y0.max(0.0), y1),
        };
        if x1 <= x0 || y1 <= y0 {
            continue;
        }
        let x = x0 + (x1 - x0) * rng.gen::<f64>();
        let y = y0 + (y1 - y0) * rng.gen::<f64>();
        let Some(n) = region_point(d, x, y) else { continue };
        if dispatch_method(&n) == method && theorem2_check(n.region_point(), &t).unwrap().realizable {
            return n;
        }
    }
}

/// Uniformly random ordered point that the geometric criterion rejects.
pub fn sample_unrealizable(rng: &mut impl Rng) -> Normalized {
    let t = tol();
    loop {
        let p = sniep5::oracle::random_ordered_point(rng);
        if !theorem2_check(p, &t).unwrap().realizable && sniep5::oracle::theorem2_margin(p) > 1e-6 {
            return region_point(p.d, p.x, p.y).unwrap();
        }
    }
}
