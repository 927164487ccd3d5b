//! Exact-arithmetic toolkit for block designs read off from the principal
//! minors of structured matrices.
//!
//! The pipeline: build a matrix from the construction catalog (or load
//! one), census its k-by-k principal minors, collect the k-subsets whose
//! minor takes a chosen value, and verify the design properties of that
//! hypergraph by exhaustive counting. Closed-form parameter predictions
//! computed from spectral data are reconciled against the counts exactly;
//! everything runs over the single cyclotomic field Q(zeta_12), so there
//! are no tolerances anywhere.

pub mod constructions;
pub mod designs;
pub mod error;
pub mod formats;
pub mod gf;
pub mod matrix;
pub mod par;
pub mod poly;
pub mod predictor;
pub mod scalar;
pub mod schemes;
pub mod spectrum;
pub mod subsets;
pub mod tables;

pub use error::{Error, Result};
pub use matrix::{ExactMatrix, Symmetry};
pub use scalar::{parse_scalar, render_scalar, Scalar};
