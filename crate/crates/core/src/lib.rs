//! Finite-field computations for rational Cherednik algebras of complex
//! reflection groups `G(m, r, n)`.

#![allow(clippy::needless_range_loop)]

pub mod arrangement;
pub mod certify;
pub mod degeneration;
pub mod dunkl;
pub mod field;
pub mod group;
pub mod hilbert;
pub mod koszul;
pub mod linalg;
pub mod lmodule;
pub mod param;
pub mod poly;
pub mod rep;
pub mod resolution;
pub mod series;
pub mod slice;
pub mod specht;
pub mod transition;

pub use field::{Field, FieldError, FieldSpec, Fq, GaloisField};
pub use poly::{Monomial, MonomialBasis, Poly, SliceCoords, VermaVector};

/// Polynomial over the finite-field backend.
pub type FqPoly = Poly<Fq>;
/// Vector in `Sym(h*) ⊗ τ` over the finite-field backend.
pub type FqVector = VermaVector<Fq>;
