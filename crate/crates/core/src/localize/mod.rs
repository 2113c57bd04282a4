//! ω-iterated reflectors: torsion reflection of finitely generated abelian groups, the torsion-free tensor,
//! and homogeneous localization of graded ℚ[t]-modules.

mod group;
mod section;
mod torsion;

use serde::Serialize;

pub use group::{homs_to_finite, FgAbGroup, HomImages};
pub use section::{section_localize, GradedQt, SectionReport, Summand};
pub use torsion::{
    classical_tensor, epi_check, reflection_universal_check, strip_primes, tf_tensor, torsion_reflect, IdentityReflector, TargetCheck,
    TfTensorReport, TorsionReflection, TorsionReflector, UniversalCheck,
};

/// One step `R₁` of a reflector, with its fixed-point predicate (`η : M → R₁M` invertible).
pub trait Endoreflector {
    type Obj: Clone;
    fn step(&self, m: &Self::Obj) -> Self::Obj;
    fn is_fixed(&self, m: &Self::Obj) -> bool;
}

/// Outcome of iterating `R₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Iteration<T> {
    Fixed { object: T, steps: usize },
    NotFixedWithin { last: T, steps: usize },
}

impl<T> Iteration<T> {
    pub fn fixed(self) -> Option<(T, usize)> {
        match self {
            Iteration::Fixed { object, steps } => Some((object, steps)),
            Iteration::NotFixedWithin { .. } => None,
        }
    }
}

/// Applies `R₁` until the object is fixed, or reports the last stage after `max_steps` steps.
pub fn iterate_reflector<R: Endoreflector>(r: &R, m: &R::Obj, max_steps: usize) -> Iteration<R::Obj> {
    let mut cur = m.clone();
    for steps in 0..=max_steps {
        if r.is_fixed(&cur) {
            return Iteration::Fixed { object: cur, steps };
        }
        if steps == max_steps {
            break;
        }
        cur = r.step(&cur);
    }
    Iteration::NotFixedWithin { last: cur, steps: max_steps }
}
