//! Separating re-embeddings of affine algebras.
//!
//! Given an ideal `I` in `K[x_1, ..., x_n]`, the crate searches for a tuple
//! of indeterminates `Z` that can be eliminated by substitution, so that
//! `K[x]/I` is isomorphic to `K[Y]/(I ∩ K[Y])` for the remaining
//! indeterminates `Y`. Candidates come from the Gröbner fan of the linear
//! part of `I`; each one is checked with a Buchberger computation under an
//! elimination ordering.
//!
//! Module map:
//! - [`poly`]: sparse polynomials, term orderings given by weight matrices,
//!   parsing and printing.
//! - [`linear_gfan`]: matroid bases and the Gröbner fan of a linear ideal.
//! - [`cotangent`]: equivalence classes of indeterminates from the linear
//!   part, with a closed form for binomial linear ideals.
//! - [`groebner`]: Buchberger's algorithm and the separation checks.
//! - [`reembed`]: candidate searches and certificates.
//! - [`border_basis`]: the defining ideal of a border basis scheme.
//! - [`job`]: the job file format and report generation used by the CLI.
//!
//! Everything is generic over an exact [`Field`]: [`Rational`] or the prime
//! field [`Fp`].

pub mod border_basis;
pub mod cotangent;
pub mod error;
pub mod field;
pub mod groebner;
pub mod job;
pub mod linear_gfan;
pub mod matrix;
pub mod poly;
pub mod reembed;

pub use error::{Error, Result};
pub use field::{Field, Fp, Rational};
pub use matrix::Matrix;
pub use poly::{OrderingKind, Poly, Ring, Term, TermOrdering};

/// Polynomials over the rationals.
pub type QPoly = Poly<Rational>;
/// Rational matrices.
pub type QMatrix = Matrix<Rational>;
/// Polynomials over the prime field with `P` elements.
pub type FpPoly<const P: u64> = Poly<Fp<P>>;
