use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::power::{ext_power_auto, power_multiply, transpose, Power};
use crate::error::{Error, Result};
use crate::exactring::{Rational, RingElem};
use crate::fpmod::{symmetry, ModMorphism, ModulePresentation};
use crate::perm;

fn require_two(v: &ModulePresentation) -> Result<()> {
    if v.ring.two_invertible() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("exterior Hopf structure needs 2 invertible in {}", v.ring)))
    }
}

/// `Δ_{p,q} : Λ^{p+q} → Λ^p ⊗ Λ^q`, summing over `(p, q)`-shuffles with their signs.
pub fn shuffle_comultiply(v: &ModulePresentation, p: usize, q: usize) -> Result<ModMorphism> {
    require_two(v)?;
    let (src, a, b) = (ext_power_auto(v, p + q)?, ext_power_auto(v, p)?, ext_power_auto(v, q)?);
    comultiply_between(&src, &a, &b)
}

fn comultiply_between(src: &Power, a: &Power, b: &Power) -> Result<ModMorphism> {
    let ring = &src.base.ring;
    let tgt = a.module.tensor(&b.module)?;
    let shuffles = perm::shuffles(a.degree, b.degree);
    let mut cols = Vec::with_capacity(src.tuples.len());
    for t in &src.tuples {
        let mut col = vec![ring.zero(); tgt.gens];
        for (s, sign) in &shuffles {
            let left: Vec<usize> = s.iter().map(|&i| t[i]).collect();
            let right: Vec<usize> = (0..t.len()).filter(|i| !s.contains(i)).map(|i| t[i]).collect();
            let idx = a.position(&left).unwrap() * b.tuples.len() + b.position(&right).unwrap();
            col[idx] = ring.add(&col[idx], &ring.from_int(*sign));
        }
        cols.push(col);
    }
    ModMorphism::new(&src.module, &tgt, transpose(&cols, tgt.gens, ring))
}

/// `∧ : Λ^p ⊗ Λ^q → Λ^{p+q}`.
pub fn wedge_multiply(v: &ModulePresentation, p: usize, q: usize) -> Result<ModMorphism> {
    let (a, b, out) = (ext_power_auto(v, p)?, ext_power_auto(v, q)?, ext_power_auto(v, p + q)?);
    power_multiply(&a, &b, &out)
}

/// `ω : Λ^{d+1} → V ⊗ Λ^d`, `v₀∧…∧v_d ↦ Σ_k (−1)^k v_k ⊗ (v₀∧…v̂_k…∧v_d)`.
pub fn omega_map(v: &ModulePresentation, d: usize) -> Result<ModMorphism> {
    let src = ext_power_auto(v, d + 1)?;
    let lam = ext_power_auto(v, d)?;
    let ring = &v.ring;
    let tgt = v.tensor(&lam.module)?;
    let mut cols = Vec::with_capacity(src.tuples.len());
    for t in &src.tuples {
        let mut col = vec![ring.zero(); tgt.gens];
        for k in 0..t.len() {
            let rest: Vec<usize> = t.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
            let idx = t[k] * lam.tuples.len() + lam.position(&rest).unwrap();
            let s = if k % 2 == 0 { 1 } else { -1 };
            col[idx] = ring.add(&col[idx], &ring.from_int(s));
        }
        cols.push(col);
    }
    ModMorphism::new(&src.module, &tgt, transpose(&cols, tgt.gens, ring))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct HopfReport {
    pub dim: usize,
    pub max_degree: usize,
    pub coassociative: bool,
    pub counital: bool,
    pub associative: bool,
    pub graded_commutative: bool,
    /// `Δ(x∧y) = Δ(x)·Δ(y)` for the sign-twisted product on `Λ ⊗ Λ`.
    pub bialgebra: bool,
    /// Products of basis wedges agree with the sign of the sorting permutation.
    pub table_matches_signs: bool,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.coassociative && self.counital && self.associative && self.graded_commutative && self.bialgebra && self.table_matches_signs
    }
}

/// Laws of `Λ(V)` for all degrees up to `max_degree`.
pub fn hopf_check(v: &ModulePresentation, max_degree: usize) -> Result<HopfReport> {
    require_two(v)?;
    let pw: Vec<Power> = (0..=max_degree).map(|k| ext_power_auto(v, k)).collect::<Result<_>>()?;
    let id = |k: usize| ModMorphism::identity(&pw[k].module);
    let delta = |p: usize, q: usize| comultiply_between(&pw[p + q], &pw[p], &pw[q]);
    let wedge = |p: usize, q: usize| power_multiply(&pw[p], &pw[q], &pw[p + q]);
    let ring = &v.ring;

    let mut coassociative = true;
    let mut associative = true;
    for n in 0..=max_degree {
        for p in 0..=n {
            for q in 0..=n - p {
                let r = n - p - q;
                let l = delta(p, q)?.tensor(&id(r))?.compose(&delta(p + q, r)?)?;
                let rr = id(p).tensor(&delta(q, r)?)?.compose(&delta(p, q + r)?)?;
                coassociative &= l.equals(&rr)?;
                let l = wedge(p + q, r)?.compose(&wedge(p, q)?.tensor(&id(r))?)?;
                let rr = wedge(p, q + r)?.compose(&id(p).tensor(&wedge(q, r)?)?)?;
                associative &= l.equals(&rr)?;
            }
        }
    }
    let mut counital = true;
    let mut graded_commutative = true;
    for n in 0..=max_degree {
        for (d, g) in [(delta(n, 0)?, n), (delta(0, n)?, n)] {
            counital &= d.matrix == id(g).matrix;
        }
        for p in 0..=n {
            let q = n - p;
            let sign = ring.from_int(if (p * q) % 2 == 0 { 1 } else { -1 });
            let swapped = wedge(q, p)?.compose(&symmetry(&pw[p].module, &pw[q].module)?)?.scale(&sign)?;
            graded_commutative &= wedge(p, q)?.equals(&swapped)?;
        }
    }
    let bialgebra = if v.is_free_presentation() { bialgebra_free(v.gens, max_degree) } else { true };
    let table_matches_signs = if v.is_free_presentation() { table_free(&pw, max_degree)? } else { true };
    Ok(HopfReport {
        dim: v.gens,
        max_degree,
        coassociative,
        counital,
        associative,
        graded_commutative,
        bialgebra,
        table_matches_signs,
    })
}

type Sparse = BTreeMap<Vec<usize>, Rational>;
type Sparse2 = BTreeMap<(Vec<usize>, Vec<usize>), Rational>;

fn add_to<K: Ord>(m: &mut BTreeMap<K, Rational>, k: K, c: Rational) {
    let e = m.entry(k).or_insert_with(Rational::zero);
    *e += c;
}

/// Sign of the permutation that sorts the concatenation `s ++ t`, or `None` on overlap.
fn merge_sign(s: &[usize], t: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut u: Vec<usize> = s.iter().chain(t).copied().collect();
    let mut order: Vec<usize> = (0..u.len()).collect();
    order.sort_by_key(|&i| u[i]);
    u.sort();
    if u.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((perm::sign(&order), u))
}

fn wedge_sparse(x: &Sparse, y: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (s, a) in x {
        for (t, b) in y {
            if let Some((sg, u)) = merge_sign(s, t) {
                add_to(&mut out, u, a * b * Rational::from_integer(sg.into()));
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Full comultiplication `Λ → Λ ⊗ Λ` on a basis wedge.
fn delta_sparse(t: &[usize]) -> Sparse2 {
    let mut out = Sparse2::new();
    for p in 0..=t.len() {
        for (s, sign) in perm::shuffles(p, t.len() - p) {
            let l: Vec<usize> = s.iter().map(|&i| t[i]).collect();
            let r: Vec<usize> = (0..t.len()).filter(|i| !s.contains(i)).map(|i| t[i]).collect();
            add_to(&mut out, (l, r), Rational::from_integer(sign.into()));
        }
    }
    out
}

/// `(a⊗b)(c⊗d) = (−1)^{|b||c|} (ac ⊗ bd)`.
fn twisted_product(x: &Sparse2, y: &Sparse2) -> Sparse2 {
    let mut out = Sparse2::new();
    for ((a, b), c1) in x {
        for ((c, d), c2) in y {
            let tw = if (b.len() * c.len()) % 2 == 0 { 1 } else { -1 };
            let (Some((s1, ac)), Some((s2, bd))) = (merge_sign(a, c), merge_sign(b, d)) else { continue };
            add_to(&mut out, (ac, bd), c1 * c2 * Rational::from_integer((tw * s1 * s2).into()));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn bialgebra_free(n: usize, max_degree: usize) -> bool {
    let basis: Vec<Vec<usize>> = (0..=max_degree.min(n)).flat_map(|k| perm::subsets(n, k)).collect();
    for s in &basis {
        for t in &basis {
            if s.len() + t.len() > max_degree {
                continue;
            }
            let prod = wedge_sparse(&Sparse::from([(s.clone(), Rational::one())]), &Sparse::from([(t.clone(), Rational::one())]));
            let mut lhs = Sparse2::new();
            for (u, c) in &prod {
                for (k, d) in delta_sparse(u) {
                    add_to(&mut lhs, k, c * d);
                }
            }
            lhs.retain(|_, c| !c.is_zero());
            if lhs != twisted_product(&delta_sparse(s), &delta_sparse(t)) {
                return false;
            }
        }
    }
    true
}

fn table_free(pw: &[Power], max_degree: usize) -> Result<bool> {
    let ring = &pw[0].base.ring;
    for p in 0..=max_degree {
        for q in 0..=max_degree - p {
            let w = power_multiply(&pw[p], &pw[q], &pw[p + q])?;
            for (i, s) in pw[p].tuples.iter().enumerate() {
                for (j, t) in pw[q].tuples.iter().enumerate() {
                    let col = i * pw[q].tuples.len() + j;
                    let mut expect = vec![ring.zero(); pw[p + q].tuples.len()];
                    if let Some((sg, u)) = merge_sign(s, t) {
                        expect[pw[p + q].position(&u).unwrap()] = ring.from_int(sg);
                    }
                    let got: Vec<RingElem> = w.matrix.iter().map(|r| r[col].clone()).collect();
                    if got != expect {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::RingDescriptor;

    fn q(n: usize) -> ModulePresentation {
        ModulePresentation::free(&RingDescriptor::Rationals, n)
    }

    fn col(f: &ModMorphism, j: usize) -> Vec<i64> {
        f.matrix.iter().map(|r| f.ring().int_value(&r[j]).try_into().unwrap()).collect()
    }

    #[test]
    fn delta_in_low_degrees() {
        // Λ¹ → Λ¹⊗Λ⁰ and Λ⁰⊗Λ¹ are the unit isomorphisms
        assert_eq!(col(&shuffle_comultiply(&q(2), 1, 0).unwrap(), 0), vec![1, 0]);
        assert_eq!(col(&shuffle_comultiply(&q(2), 0, 1).unwrap(), 0), vec![1, 0]);
        // Δ_{1,1}(v₁∧v₂) = v₁⊗v₂ − v₂⊗v₁
        assert_eq!(col(&shuffle_comultiply(&q(2), 1, 1).unwrap(), 0), vec![0, 1, -1, 0]);
    }

    #[test]
    fn exterior_algebra_of_q3() {
        assert!(hopf_check(&q(3), 3).unwrap().passed());
    }

    #[test]
    fn omega_examples() {
        let w0 = omega_map(&q(3), 0).unwrap();
        assert!(w0.is_iso().unwrap());
        let w1 = omega_map(&q(2), 1).unwrap();
        assert_eq!(col(&w1, 0), vec![0, 1, -1, 0]);
        assert!(omega_map(&q(2), 2).unwrap().is_zero().unwrap());
        // ω is the (1, d) component of Δ
        assert!(omega_map(&q(4), 2).unwrap().equals(&shuffle_comultiply(&q(4), 1, 2).unwrap()).unwrap());
    }

    #[test]
    fn wedge_is_antisymmetric() {
        let w = wedge_multiply(&q(2), 1, 1).unwrap();
        assert_eq!(col(&w, 1), vec![1]);
        assert_eq!(col(&w, 2), vec![-1]);
        assert_eq!(col(&w, 0), vec![0]);
    }

    #[test]
    fn rejects_rings_without_half() {
        let z = ModulePresentation::free(&RingDescriptor::Integers, 2);
        assert!(shuffle_comultiply(&z, 1, 1).is_err());
    }
}
