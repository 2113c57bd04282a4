//! Commutative finitary monads on finite sets, tensor products of their algebras.

mod congruence;
mod monad;
mod tensor;
mod theory;
mod verify;

pub use congruence::Congruence;
pub use monad::{check_monad_laws, derived_strength_costrength_d, DerivedMaps, LawCheck, LawReport, Monad};
pub use tensor::{express, factor, generating_set, is_bihom, tensor_brute, tensor_modules, BihomReport, TensorProduct};
pub use theory::{is_homomorphism, Algebra, FiniteAlgebra, FiniteMonoid, FreeAlgebra, OpSig, Theory, ENUM_LIMIT};
pub use verify::{
    associativity_iso, bihoms, canonical_form, free_tensor_iso, homs, small_algebras, symmetry_iso,
    verify_structure_isos, verify_universal, verify_universal_exhaustive, verify_universal_with, ExhaustiveReport,
    IsoCheck, StructureReport, UniversalReport,
};
