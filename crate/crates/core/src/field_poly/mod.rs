//! Prime-field arithmetic, monomials, sparse polynomials and free-module elements.

pub mod field;
pub mod free;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;

pub use field::{FieldElement, PrimeField, DEFAULT_PRIME};
pub use free::{FreeElement, ModTerm};
pub use monomial::Monomial;
pub use order::{term_compare, IndexedMonomial, TermOrder};
pub use parse::parse_polynomial;
pub use poly::{poly_arithmetic, PolyOp, Polynomial, Term};
pub use ring::Ring;
