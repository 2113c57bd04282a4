//! Quantales: residuals, the ideal quantale of ℤ, finite quantales, and localization of `[0,1]` at `½`.

mod dyadic;
mod finite;
mod idealz;

use std::fmt::Debug;

use serde::Serialize;

pub use dyadic::{
    ceil_log2, fixed_product, floor_log2, localize_half, localize_iso_check, pow2, DyadicUnit, EndLaw, HalfSequence,
    IsoSample, LocValue, LocalizeIsoReport, LocalizeReport,
};
pub use finite::FiniteQuantale;
pub use idealz::{
    ideal_sum_product, is_prime, is_prime_brute, spectrum, vanishing, zariski_laws_check, IdealZ, SpectrumEntry,
    SpectrumReport, ZariskiLaw, ZariskiReport,
};

/// A commutative unital quantale, given by binary sup, bottom, product, unit and residual.
pub trait Quantale {
    type Elem: Clone + PartialEq + Debug;
    fn bottom(&self) -> Self::Elem;
    fn unit(&self) -> Self::Elem;
    fn sup(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    /// `[b : a]`, the largest `z` with `z·a ≤ b`.
    fn residual(&self, b: &Self::Elem, a: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub triples: usize,
    pub witness: Option<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Unit, commutativity, associativity, distributivity over binary sup, `0·a = 0`, and the residual
/// adjunction `z·a ≤ b ⟺ z ≤ [b:a]`, on all triples from `samples`.
pub fn check_axioms<Q: Quantale>(q: &Q, samples: &[Q::Elem]) -> AxiomReport {
    let mut witness = None;
    let (one, zero) = (q.unit(), q.bottom());
    let mut triples = 0;
    'outer: for a in samples {
        if q.mul(a, &one) != *a {
            witness = Some(format!("unit law at {a:?}"));
            break;
        }
        if q.mul(a, &zero) != zero {
            witness = Some(format!("bottom does not absorb {a:?}"));
            break;
        }
        for b in samples {
            if q.mul(a, b) != q.mul(b, a) {
                witness = Some(format!("commutativity at {a:?}, {b:?}"));
                break 'outer;
            }
            for z in samples {
                triples += 1;
                if q.mul(a, &q.mul(b, z)) != q.mul(&q.mul(a, b), z) {
                    witness = Some(format!("associativity at {a:?}, {b:?}, {z:?}"));
                    break 'outer;
                }
                if q.mul(a, &q.sup(b, z)) != q.sup(&q.mul(a, b), &q.mul(a, z)) {
                    witness = Some(format!("distributivity at {a:?}, {b:?}, {z:?}"));
                    break 'outer;
                }
                if q.le(&q.mul(z, a), b) != q.le(z, &q.residual(b, a)) {
                    witness = Some(format!("residual adjunction at z = {z:?}, a = {a:?}, b = {b:?}"));
                    break 'outer;
                }
            }
        }
    }
    AxiomReport { samples: samples.len(), triples, witness }
}
