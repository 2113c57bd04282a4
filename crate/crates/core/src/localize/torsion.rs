use std::collections::BTreeSet;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::group::{homs_to_finite, FgAbGroup, HomImages};
use super::{iterate_reflector, Endoreflector, Iteration};
use crate::error::{Error, Result};

/// `R₁(M) = M / ker(a·)`, computed by Smith form of the enlarged relation matrix.
#[derive(Clone, Copy, Debug)]
pub struct TorsionReflector {
    pub a: u64,
}

impl Endoreflector for TorsionReflector {
    type Obj = FgAbGroup;

    fn step(&self, m: &FgAbGroup) -> FgAbGroup {
        let r = m.factors.len();
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for (i, &d) in m.factors.iter().enumerate() {
            if d == 0 {
                continue;
            }
            // relation d·eᵢ and kernel generator (d / gcd(a, d))·eᵢ
            for c in [d, d / d.gcd(&self.a)] {
                cols.push((0..r).map(|k| BigInt::from(if k == i { c } else { 0 })).collect());
            }
        }
        let rel: Vec<Vec<BigInt>> = (0..r).map(|k| cols.iter().map(|c| c[k].clone()).collect()).collect();
        if cols.is_empty() {
            return m.clone();
        }
        FgAbGroup::from_relations(r, &rel)
    }

    fn is_fixed(&self, m: &FgAbGroup) -> bool {
        m.mul_injective(self.a)
    }
}

/// `R₁ = id`; every object is fixed.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityReflector<T>(PhantomData<T>);

impl<T> IdentityReflector<T> {
    pub fn new() -> Self {
        IdentityReflector(PhantomData)
    }
}

impl<T: Clone> Endoreflector for IdentityReflector<T> {
    type Obj = T;
    fn step(&self, m: &T) -> T {
        m.clone()
    }
    fn is_fixed(&self, _: &T) -> bool {
        true
    }
}

/// `d` with every prime factor of `a` removed; `0` stays `0`.
pub fn strip_primes(mut d: u64, a: u64) -> u64 {
    if d == 0 {
        return 0;
    }
    loop {
        let g = d.gcd(&a);
        if g == 1 {
            return d;
        }
        d /= g;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReflection {
    pub source: FgAbGroup,
    pub a: u64,
    pub result: FgAbGroup,
    /// Generator `eᵢ` of the source goes to generator `map[i]` of the result, or to `0`.
    pub map: Vec<Option<usize>>,
    /// Multiplication by `a` is injective on the result.
    pub fixed: bool,
    /// Steps of `R₁` until fixed; the iterate equals `result`.
    pub steps: Option<usize>,
    pub iteration_agrees: bool,
    pub idempotent: bool,
}

impl TorsionReflection {
    pub fn passed(&self) -> bool {
        self.fixed && self.iteration_agrees && self.idempotent
    }

    /// `h ∘ q` for `h : R_ω(M) → N`.
    pub fn precompose(&self, h: &HomImages, target_coords: usize) -> HomImages {
        self.map.iter().map(|j| j.map_or_else(|| vec![0; target_coords], |j| h[j].clone())).collect()
    }
}

/// `R_ω(M) = M / ⋃ ker(aⁿ)`: the `a`-primary part of each invariant factor stripped.
pub fn torsion_reflect(m: &FgAbGroup, a: u64) -> Result<TorsionReflection> {
    if a < 2 {
        return Err(Error::Invalid("torsion reflection needs a ≥ 2".into()));
    }
    let stripped: Vec<u64> = m.factors.iter().map(|&d| strip_primes(d, a)).collect();
    let mut map = Vec::new();
    let mut next = 0;
    for &s in &stripped {
        if s == 1 {
            map.push(None);
        } else {
            map.push(Some(next));
            next += 1;
        }
    }
    let result = FgAbGroup { factors: stripped.into_iter().filter(|&s| s != 1).collect() };
    if FgAbGroup::from_cyclic(&result.factors) != result {
        return Err(Error::Internal(format!("stripped factors of {m} are not canonical")));
    }
    let r = TorsionReflector { a };
    let iter = iterate_reflector(&r, m, 64);
    let (steps, iteration_agrees) = match iter {
        Iteration::Fixed { object, steps } => (Some(steps), object == result),
        Iteration::NotFixedWithin { .. } => (None, false),
    };
    let idempotent = result.factors.iter().all(|&d| strip_primes(d, a) == d);
    Ok(TorsionReflection { source: m.clone(), a, fixed: result.mul_injective(a), result, map, steps, iteration_agrees, idempotent })
}

#[derive(Clone, Debug, Serialize)]
pub struct TargetCheck {
    pub target: FgAbGroup,
    /// `|Hom(R_ω M, T)|` and `|Hom(M, T)|` for the torsion part `T` of the target.
    pub torsion_homs: (usize, usize),
    pub torsion_bijection: bool,
    /// Ranks of `Hom(R_ω M, ℤ^k)` and `Hom(M, ℤ^k)` for the free part.
    pub free_ranks: (usize, usize),
    pub free_bijection: bool,
}

impl TargetCheck {
    pub fn passed(&self) -> bool {
        self.torsion_bijection && self.free_bijection
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalCheck {
    pub reflection: TorsionReflection,
    pub targets: Vec<TargetCheck>,
    pub passed: bool,
}

/// Precomposition with `q : M → R_ω(M)` is a bijection `Hom(R_ω M, N) → Hom(M, N)` for each target.
pub fn reflection_universal_check(m: &FgAbGroup, a: u64, targets: &[FgAbGroup]) -> Result<UniversalCheck> {
    let reflection = torsion_reflect(m, a)?;
    let mut checks = Vec::new();
    for n in targets {
        if !n.mul_injective(a) {
            return Err(Error::Invalid(format!("multiplication by {a} is not injective on {n}")));
        }
        let t = FgAbGroup { factors: n.torsion() };
        let from_r = homs_to_finite(&reflection.result, &t)?;
        let from_m = homs_to_finite(m, &t)?;
        let composed: Vec<HomImages> = from_r.iter().map(|h| reflection.precompose(h, t.factors.len())).collect();
        let image: BTreeSet<&HomImages> = composed.iter().collect();
        let all: BTreeSet<&HomImages> = from_m.iter().collect();
        let torsion_bijection = image.len() == composed.len() && image == all;

        let k = n.rank();
        let free_ranks = (k * reflection.result.rank(), k * m.rank());
        // free generators of M map bijectively onto free generators of R_ω(M)
        let free_gens: Vec<Option<usize>> =
            m.factors.iter().zip(&reflection.map).filter(|(&d, _)| d == 0).map(|(_, j)| *j).collect();
        let onto: BTreeSet<usize> = free_gens.iter().flatten().copied().collect();
        let free_bijection = free_ranks.0 == free_ranks.1
            && free_gens.iter().all(Option::is_some)
            && onto.len() == reflection.result.rank()
            && onto.iter().all(|&j| reflection.result.factors[j] == 0);
        checks.push(TargetCheck {
            target: n.clone(),
            torsion_homs: (from_r.len(), from_m.len()),
            torsion_bijection,
            free_ranks,
            free_bijection,
        });
    }
    let passed = reflection.passed() && checks.iter().all(TargetCheck::passed);
    Ok(UniversalCheck { reflection, targets: checks, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct TfTensorReport {
    pub m: FgAbGroup,
    pub n: FgAbGroup,
    pub classical: FgAbGroup,
    pub result: FgAbGroup,
    pub unit_law: bool,
    pub symmetric: bool,
    pub associative: bool,
}

impl TfTensorReport {
    pub fn passed(&self) -> bool {
        self.unit_law && self.symmetric && self.associative && self.result.is_finite() == (self.result.rank() == 0)
    }
}

/// `M ⊗ N` from `ℤ/d ⊗ ℤ/e = ℤ/gcd(d, e)` (with `gcd(0, e) = e`).
pub fn classical_tensor(m: &FgAbGroup, n: &FgAbGroup) -> FgAbGroup {
    let orders: Vec<u64> = m.factors.iter().flat_map(|d| n.factors.iter().map(move |e| d.gcd(e))).collect();
    FgAbGroup::from_cyclic(&orders)
}

fn tf(m: &FgAbGroup, n: &FgAbGroup) -> FgAbGroup {
    classical_tensor(m, n).torsion_free_part()
}

/// `(M ⊗ N)/Tor`, with unit, symmetry and associativity (against `M`) checked on the instance.
pub fn tf_tensor(m: &FgAbGroup, n: &FgAbGroup) -> TfTensorReport {
    let classical = classical_tensor(m, n);
    let result = classical.torsion_free_part();
    let z = FgAbGroup::free(1);
    let unit_law = tf(&z, m) == m.torsion_free_part() && tf(n, &z) == n.torsion_free_part();
    let symmetric = tf(n, m) == result;
    let associative = tf(&result, m) == tf(m, &tf(n, m));
    TfTensorReport { m: m.clone(), n: n.clone(), classical, result, unit_law, symmetric, associative }
}

/// `h ↦ h ∘ (a·)` is injective on homomorphisms `ℤ → ℤ^k` with entries in `[−bound, bound]`.
pub fn epi_check(a: i64, k: usize, bound: i64) -> bool {
    let side = (2 * bound + 1) as usize;
    let count = side.pow(k as u32);
    let mut seen = BTreeSet::new();
    for idx in 0..count {
        let mut r = idx;
        let h: Vec<i64> = (0..k)
            .map(|_| {
                let v = (r % side) as i64 - bound;
                r /= side;
                v
            })
            .collect();
        let composed: Vec<i64> = h.iter().map(|x| a * x).collect();
        if !seen.insert(composed) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        FgAbGroup::parse(s).unwrap()
    }

    #[test]
    fn reflect_examples() {
        let r = torsion_reflect(&g("12"), 2).unwrap();
        assert_eq!(r.result, g("3"));
        assert!(r.passed());
        assert_eq!(torsion_reflect(&g("0,0"), 2).unwrap().result, g("0,0"));
        assert_eq!(torsion_reflect(&g("0,4"), 2).unwrap().result, g("0"));
        assert!(torsion_reflect(&g("5"), 1).is_err());
    }

    #[test]
    fn iteration_steps() {
        let r = TorsionReflector { a: 2 };
        assert_eq!(iterate_reflector(&r, &g("8"), 10).fixed(), Some((FgAbGroup::trivial(), 3)));
        assert_eq!(iterate_reflector(&r, &g("9"), 10).fixed(), Some((g("9"), 0)));
        assert!(matches!(iterate_reflector(&r, &g("64"), 2), Iteration::NotFixedWithin { steps: 2, .. }));
        let id = IdentityReflector::<FgAbGroup>::new();
        assert_eq!(iterate_reflector(&id, &g("4"), 5).fixed(), Some((g("4"), 0)));
    }

    #[test]
    fn one_step_matches_kernel_count() {
        // |R₁M| = |M| / |ker(a·)|, counted element by element
        for (s, a) in [("12", 2u64), ("4,8", 2), ("6,18", 3), ("2,4,8", 4)] {
            let m = g(s);
            let ker = m
                .elements()
                .unwrap()
                .iter()
                .filter(|x| x.iter().zip(&m.factors).all(|(&xi, &d)| (a * xi) % d == 0))
                .count() as u64;
            let r1 = TorsionReflector { a }.step(&m);
            assert_eq!(r1.order().unwrap(), m.order().unwrap() / ker, "{s}");
        }
    }

    #[test]
    fn universal_examples() {
        let r = reflection_universal_check(&g("12"), 2, &[g("3"), FgAbGroup::trivial(), g("9"), g("0,3")]).unwrap();
        assert!(r.passed);
        assert_eq!(r.targets[0].torsion_homs, (3, 3));
        assert_eq!(r.targets[1].torsion_homs, (1, 1));
        assert_eq!(r.targets[2].torsion_homs, (3, 3));
        assert!(reflection_universal_check(&g("12"), 2, &[g("4")]).is_err());
    }

    #[test]
    fn tf_tensor_examples() {
        assert_eq!(tf_tensor(&g("0,0"), &g("0,0,0")).result, FgAbGroup::free(6));
        let r = tf_tensor(&g("0,2"), &g("0"));
        assert_eq!(r.classical, g("0,2"));
        assert_eq!(r.result, g("0"));
        assert!(r.passed());
        assert!(tf_tensor(&g("2"), &g("3")).result.is_trivial());
        assert_eq!(classical_tensor(&g("4"), &g("6")), g("2"));
    }

    #[test]
    fn multiplication_is_epi() {
        assert!(epi_check(2, 2, 3));
        assert!(epi_check(-3, 1, 5));
        assert!(!epi_check(0, 1, 1));
    }
}
