//! Exact scalars, polynomials with degrevlex Gröbner bases, and ring descriptors.

pub mod field;
mod groebner;
mod parse;
mod poly;
mod ring;

pub use field::{factorize, is_prime_u64, rat, ratio, rational_to_string, Field, Rational};
pub use groebner::{groebner_basis, in_ideal, reduce, standard_monomials};
pub use parse::{parse_polynomial, parse_ring, parse_ring_elem};
pub use poly::{Monomial, Polynomial};
pub use ring::{jacobian, normal_form, LinearKind, PolyQuotient, RingDescriptor, RingElem};
