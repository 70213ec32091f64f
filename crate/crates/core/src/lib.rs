//! Exact Schubert calculus on weighted partial flag orbifolds of type A.
//!
//! The crate is layered bottom-up:
//!
//! - [`weyl`]: permutations, Bruhat order, minimal coset representatives.
//! - [`poly`]: sparse polynomials with exact rational coefficients.
//! - [`repr`]: staircase tableaux, torus weights and Plücker minors.
//! - [`schubert`]: single, double and weighted Schubert polynomials.
//! - [`gkm`]: fixed-point restriction tables of Schubert classes in the
//!   straight, cone and weighted presentations, plus the Chevalley and
//!   Chevalley–Monk verifications.
//! - [`format`]: the JSON restriction-table format.
//! - [`selftest`]: the acceptance checks shared by the CLI and the test suite.

pub mod error;
pub mod format;
pub mod gkm;
pub mod poly;
pub mod repr;
pub mod schubert;
pub mod selftest;
pub mod weyl;

pub use error::{Error, Result};
pub use gkm::{Flavor, GkmClass, GkmContext};
pub use poly::{LinearForm, Polynomial, Rational, Universe, Var};
pub use repr::{StaircaseShape, Tableau, WeightData};
pub use weyl::{CosetSystem, FlagConfig, Permutation};
