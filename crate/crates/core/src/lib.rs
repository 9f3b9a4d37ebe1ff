//! Exact sum-product workbench.
//!
//! Ratio sets of sumsets, k-fold sum/product growth, and the real and complex
//! geometric witness constructions behind their lower bounds, all computed
//! with exact rational arithmetic.

pub mod error;
pub mod exact;
pub mod expr;
pub mod geometry;
pub mod harness;
pub mod render;
pub mod sets;

pub use error::{Error, Result};
