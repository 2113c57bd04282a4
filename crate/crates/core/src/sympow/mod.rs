//! Symmetric-group actions on tensor powers, symmetric and exterior powers, and their algebra.

mod bracket;
mod hopf;
mod locfree;
pub mod oracle;
mod power;

pub use bracket::{
    bracket_identity_certificate, certify, solvability, BracketCertificate, BracketSpace, CertTerm, CertifyOutcome,
    Instance, PUBLISHED_COMBINATION,
};
pub use hopf::{hopf_check, omega_map, shuffle_comultiply, wedge_multiply, HopfReport};
pub use locfree::{cramer_inverse, locally_free_check, symmetry_lemma_check, LocallyFreeReport, SymmetryLemmaReport};
pub use power::{
    adjacent_symmetry, asym_power, binomial_decompose, coequalizes, coxeter_check, ext_power, ext_power_auto,
    perm_action, power_multiply, sym_power, tensor_power, word_action, BinomialFlavor, CoxeterReport, ExtMode,
    IsoPair, Power, PowerKind,
};
