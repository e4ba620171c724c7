//! Exact computations on numerical semigroup algebras `R'/R`.
//!
//! Given a coefficient semigroup `S`, an extension semigroup `S'` and a
//! positive rational `t` with `t·S ⊆ S'`, the crate decides whether
//! `k[[v^{S'}]]` is flat over `k[[u^S]]` (`u = v^t`), finds every rectangle
//! formed by its Apéry monomials, builds the integer log matrix of flat
//! rectangles, and classifies the algebra as a complete intersection, not a
//! complete intersection, or unknown.
//!
//! ```
//! use nsalg::{classify, AlgebraPair, CiVerdict};
//!
//! let pair = AlgebraPair::from_integers(&[16, 24], &[16, 24, 31, 46, 44]).unwrap();
//! let report = classify(&pair);
//! assert!(report.flat.is_flat);
//! assert_eq!(report.ci, CiVerdict::Ci);
//! ```

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod matrix;
pub mod oracle;
pub mod rat;
pub mod rectangle;
pub mod semigroup;

pub use algebra::{AlgebraPair, AperySet, DeltaSet, FlatnessVerdict, FlatnessWitness, Representation};
pub use classify::{classify, CiVerdict, ClassificationReport, Rule};
pub use error::{Error, Result};
pub use matrix::{det_and_adjugate, IntMatrix};
pub use rat::Rat;
pub use rectangle::{beta_matrix, find_rectangles, lemma_matrix_check, BetaMatrix, Rectangle};
pub use semigroup::{free_exponents, GlueMode, NumericalSemigroup};
