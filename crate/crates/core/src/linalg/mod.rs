//! Exact linear algebra: matrices over fields, Smith normal form, and integer quotient groups.

mod field;
mod lattice;
mod smith;

pub use field::{FieldMatrix, RowSpace};
pub use lattice::IntQuotient;
pub use smith::{identity as int_identity, int_kernel, int_mul, smith_decompose, to_int_matrix, IntMatrix, Smith};
