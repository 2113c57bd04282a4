//! Exact computations for tensor-categorical constructions at finite scale.

pub mod derham;
pub mod error;
pub mod exactring;
pub mod fpmod;
pub mod freesym;
pub mod linalg;
pub mod localize;
pub mod monadkit;
pub mod perm;
pub mod projgeom;
pub mod quantale;
pub mod suite;
pub mod sympow;

pub use error::{Error, Result};
