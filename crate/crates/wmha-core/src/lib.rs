//! Exact-arithmetic computer algebra for weak multiplier Hopf algebras built
//! from groupoids.
//!
//! Everything here computes over the rational field with no floating point.
//! Coproducts are handled exclusively through the four canonical maps
//! `T1..T4`; axioms are verified as identities between compositions of those
//! maps, the counit, the antipode and the canonical idempotent `E`, either
//! exhaustively over a finite basis or on seeded samples for lazily presented
//! algebras.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion crate `wmha-cli`.

#![no_std]

extern crate alloc;

pub mod action;
pub mod algebra;
pub mod constructions;
pub mod duality;
pub mod fixtures;
pub mod groupoid;
pub mod label;
pub mod linalg;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod smash;
pub mod wmha;

pub use algebra::{Algebra, Element, Multiplier};
pub use label::{Basis, Label};
pub use linalg::{SparseMat, SparseVec};
pub use report::{AxiomId, CheckReport, CheckStatus, SuiteReport};
pub use scalar::Scalar;
pub use wmha::Wmha;
