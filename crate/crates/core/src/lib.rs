//! Exact energy measures of harmonic functions on the Sierpinski gasket.
//!
//! Everything that concerns cells, energies, measures, Radon-Nikodym
//! derivatives and b-vectors is computed in exact rational arithmetic.
//! Only the [`dynamics`] module (the b-vector iterated function system and
//! its histograms) works in `f64`.
//!
//! Module map:
//!
//! - [`rational`], [`linalg`], [`word`], [`generators`]: exact scalars, 3-vectors,
//!   3x3 matrices, cell/vertex addressing and the `M_i` / `E_i` generator families.
//! - [`harmonic`]: harmonic functions by boundary values, cell energies, symmetry.
//! - [`measures`]: energy measures as coefficient triples in the `(nu_0, nu_1, nu_2)` basis.
//! - [`derivatives`]: vertex values of `d nu_c / d nu`, decay rates and edge profiles.
//! - [`bvectors`]: the weighted-average vectors `b^(w)` by three routes.
//! - [`dynamics`]: the maps `B_j` on the disk, circle maps and histograms.
//! - [`verify`]: invariant suites shared by the CLI and the test-suite.

pub mod bvectors;
pub mod derivatives;
pub mod dynamics;
mod error;
pub mod generators;
pub mod harmonic;
pub mod linalg;
pub mod measures;
pub mod rational;
pub mod report;
pub mod verify;
pub mod word;

pub use bvectors::BVector;
pub use error::{Error, Result};
pub use generators::{word_matrix, Family};
pub use harmonic::{Harmonic, SymmetryClass};
pub use linalg::{Mat3, Vec3};
pub use measures::{CellTriple, MeasureCoeffs};
pub use rational::Rational;
pub use word::{Letter, VertexAddress, Word, MAX_WORD_LEN};
