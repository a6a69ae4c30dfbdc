//! Exact representation homology engine.
//!
//! A semi-free DG algebra presentation of an associative algebra `A` is
//! matrixified into a free graded-commutative DG algebra `R_n`; the homology of
//! `R_n`, computed blockwise per (homological degree, weight) with exact
//! rational linear algebra, is the representation homology `H_•(A, k^n)`.
//!
//! Module map:
//! - [`ncpoly`]: noncommutative polynomials, parsing, the Koszul-signed differential.
//! - [`presentation`]: semi-free presentations, validation, weight truncation.
//! - [`builders`]: Shafarevich and Koszul complexes, built-in examples, `L_0`.
//! - [`matrixify`]: the representation functor and the infinitesimal GL action.
//! - [`commdga`]: free graded-commutative algebra arithmetic.
//! - [`linalg`]: sparse exact (and multi-modular) linear algebra.
//! - [`homology`]: Betti tables, homology classes, the `H_0` oracle.
//! - [`traces`]: trace maps into representation homology.
//! - [`tangent`]: derived tangent spaces at representation points.
//! - [`cache`]: on-disk block cache used by Betti sweeps.

pub mod builders;
pub mod cache;
pub mod commdga;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod matrixify;
pub mod ncpoly;
pub mod presentation;
pub mod rational;
pub mod tangent;
pub mod traces;

mod lex;

pub use error::{Error, Result};
pub use num_rational::BigRational as Q;
