//! Exact truncated power-series arithmetic in one and two variables, plus
//! Laurent tails for residue computations.

pub mod laurent;
pub mod one;
pub mod two;

pub use laurent::LaurentSlice;
pub use one::TruncatedSeries1;
pub use two::{invert_series_pair, Composer, TruncatedSeries2, Var};
