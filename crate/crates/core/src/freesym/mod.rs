//! The free symmetric monoidal category `S(C)` on a finite category, the permutation groupoid, and
//! extension of matrix-valued functors.

mod category;
mod functor;
mod smc;

pub use category::{Arrow, FinCat};
pub use functor::{
    coxeter_check, extend_functor, extension_check, extension_check_exhaustive, kronecker, permutation_matrix, CoxeterReport,
    Extension, ExtensionReport, MatrixFunctor,
};
pub use smc::{
    check_compose_laws, morphisms_from, perm_groupoid_check, perm_groupoid_hom, smc_compose, smc_inverse, smc_tensor, tuples,
    ComposeLawReport, SmcMorphism, SmcView,
};
