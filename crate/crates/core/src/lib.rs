//! Exact invariants of moduli spaces of flat G-bundles on abelian surfaces,
//! presented as quotients `(A ⊗ Λ)/W` of a power of the surface by a Weyl group.
//!
//! The crate covers:
//! - [`rootdata`]: coroot lattices, Weyl groups, diagram embeddings;
//! - [`hodge`]: bigraded Hodge polynomials, symmetric powers and the
//!   Hilbert-scheme partition formula;
//! - [`stringy`]: the stringy Hodge engine for integer-matrix group actions;
//! - [`torsion`]: torsion points, stabilizers and local models;
//! - [`hilbmatrix`]: commuting-matrix models of punctual subschemes;
//! - [`flatf2`]: mod-2 cohomology checks for flat line bundles on tori.

pub mod config;
pub mod error;
pub mod exec;
pub mod flatf2;
pub mod group;
pub mod hilbmatrix;
pub mod hodge;
pub mod intmat;
pub mod rootdata;
pub mod stringy;
pub mod torsion;

pub use error::{Error, Result};
pub use exec::Exec;
pub use group::{MatrixGroup, WeylGroup};
pub use hodge::BigradedPoly;
pub use intmat::IntMatrix;
pub use rootdata::{DynkinType, RootDatum};
