//! Realizability of trace-zero spectra by symmetric nonnegative `5×5`
//! matrices.
//!
//! A spectrum `λ1 ≥ … ≥ λ5` with `Σλ = 0` is normalized to
//! `(1, x, y, d − x − y, −d − 1)`. For each `d ∈ [−3/4, 0]` the realizable
//! `(x, y)` form a region bounded by straight edges and, for `d` above
//! `−3/4 + √5/4`, by the curve on which the third power sum vanishes.
//!
//! ```
//! use sniep5::{construct, Method, Spectrum, Tolerances};
//!
//! let tol = Tolerances::default();
//! let s = Spectrum::validate_and_sort(&[1.0, 0.2, 0.1, -0.4, -0.9], &tol).unwrap();
//! let cert = construct(&s, &tol).unwrap();
//! assert_eq!(cert.method, Method::ExplicitB);
//! assert!(cert.residual < 1e-8);
//! ```

pub mod construct;
pub mod eig;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod region;
pub mod scalar;
pub mod spectrum;

pub use construct::{
    assess, construct, construct_via, fiedler_glue, loewy_partition_select, loewy_realize, matrix_a, matrix_b,
    suleimanova_realize, Assessment, Certificate, Method, Partition,
};
pub use eig::{jacobi_eigen, perron_vector, verify, EigenDecomposition, PerronPair};
pub use error::{Error, Result};
pub use matrix::SymMatrix;
pub use oracle::ScanReport;
pub use region::{
    boundary_polyline, eval_f, eval_g, eval_h, eval_p1_p2, eval_r, eval_s3, eval_x3, theorem2_check, theorem3_check,
    vertices, Boundary, RegionLabel, Verdict,
};
pub use scalar::{Real, Tolerances};
pub use spectrum::{NormalizedSpectrum, RegionPoint, Spectrum5};

pub type Spectrum = Spectrum5<f64>;
pub type Normalized = NormalizedSpectrum<f64>;
pub type Matrix = SymMatrix<f64>;
pub type Cert = Certificate<f64>;
pub type Point = RegionPoint<f64>;
