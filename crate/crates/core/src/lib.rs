//! Exact computations with nilpotent Lie algebras over finite fields.
//!
//! The crate is organised bottom-up: [`gf`] builds field towers, [`linalg`]
//! does exact linear algebra over one level, [`liealg`] handles
//! structure-constant Lie algebras (breadth, series, centralizers, quotients),
//! [`semifield`] covers pre-semifields and their Lie algebras,
//! [`constructions`] builds the named algebras, [`suites`] packages the
//! structural results as reproducible pass/fail reports, and [`io`] holds the
//! JSON file formats.

pub mod constructions;
pub mod gf;
pub mod io;
pub mod liealg;
pub mod linalg;
pub mod semifield;
pub mod suites;

pub use gf::{Elem, FieldElement, FieldTower, Gf, GfError};
pub use liealg::{
    check_hom, BreadthReport, CaminaReport, Enumeration, Fingerprint, HomReport, LieAlgebra,
    LieError, PresentationData, Relation, SeriesReport,
};
pub use linalg::{LinalgError, Matrix, Subspace};
