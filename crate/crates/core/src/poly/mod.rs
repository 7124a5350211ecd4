//! Terms, term orderings and sparse polynomials.

mod linear;
mod order;
mod parse;
mod polynomial;
mod ring;
mod term;

pub use linear::{linear_forms_matrix, linear_part_of_ideal, rref_forms};
pub use order::{OrderingKind, TermOrdering};
pub use polynomial::Poly;
pub use ring::Ring;
pub use term::Term;

