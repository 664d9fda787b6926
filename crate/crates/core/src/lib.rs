//! Exact computer algebra for planar vector-field singularities.
//!
//! The crate provides truncated power-series arithmetic over Gaussian
//! rationals and builds on it: coordinate changes and pullbacks, singularity
//! classification with Brjuno continued-fraction verdicts, Dulac and
//! Poincaré–Dulac normal-form reductions, quadratic blow-up cascades,
//! flow-box normalizers with their conjugacy invariant, numerical holonomy
//! jets, and the Gâteaux derivative of the saddle-node modular map.
//!
//! Formal operations never round: coefficients are exact complex rationals.
//! Floating point enters only through the explicit conversion boundary in
//! [`numerics`].
//!
//! With the default `parallel` feature, the batch helpers in [`batch`]
//! distribute work with rayon; without it they fall back to sequential
//! iteration with identical results.

pub mod batch;
pub mod blowup;
pub mod classify;
pub mod coeff;
pub mod error;
pub mod gluing;
pub mod modular;
pub mod normal_forms;
pub mod numerics;
pub mod series;
pub mod vfield;

pub use coeff::{Coefficient, Scalar};
pub use error::{CoreError, Result};
pub use series::{LaurentSlice, TruncatedSeries1, TruncatedSeries2, Var};
pub use vfield::{CoordinateChange, PlanarVectorField};

/// Default truncation order used by the CLI and tests unless configured.
pub const DEFAULT_TRUNCATION: usize = 16;
