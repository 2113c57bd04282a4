use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exactring::{RingDescriptor, RingElem};
use crate::fpmod::{symmetry, ModMorphism, ModulePresentation};
use crate::perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerKind {
    Tensor,
    Sym,
    Asym,
    Ext,
}

/// How `Λ^n` is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtMode {
    /// `Λ = ASym`, needs 2 to be a unit.
    Asym,
    /// `ASym^n` modulo tensors with a repeated factor, over ℤ and 𝔽₂.
    Alternating,
}

impl ExtMode {
    pub fn for_ring(ring: &RingDescriptor) -> Result<Self> {
        if ring.two_invertible() {
            Ok(ExtMode::Asym)
        } else if alternating_ok(ring) {
            Ok(ExtMode::Alternating)
        } else {
            Err(Error::Unsupported(format!("no exterior power over {ring}")))
        }
    }
}

fn alternating_ok(ring: &RingDescriptor) -> bool {
    matches!(ring, RingDescriptor::Integers | RingDescriptor::IntegersMod(2))
}

/// A tensor, symmetric, antisymmetric or exterior power, with generators indexed by tuples.
#[derive(Clone, Debug)]
pub struct Power {
    pub kind: PowerKind,
    pub base: ModulePresentation,
    pub degree: usize,
    pub module: ModulePresentation,
    pub tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Power {
    fn build(kind: PowerKind, m: &ModulePresentation, k: usize) -> Result<Self> {
        let n = m.gens;
        let tuples = match kind {
            PowerKind::Tensor => perm::tuples(n, k),
            PowerKind::Sym | PowerKind::Asym => perm::multisets(n, k),
            PowerKind::Ext => perm::subsets(n, k),
        };
        let index: HashMap<Vec<usize>, usize> = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut p = Power {
            kind,
            base: m.clone(),
            degree: k,
            module: ModulePresentation::free(&m.ring, tuples.len()),
            tuples,
            index,
        };
        if kind == PowerKind::Tensor {
            p.module = m.tensor_power(k)?;
            return Ok(p);
        }
        let ring = &m.ring;
        let mut rels = Vec::new();
        if k > 0 {
            // relation r in the first slot against every canonical filling of the rest
            let rest = match kind {
                PowerKind::Ext => perm::subsets(n, k - 1),
                _ => perm::multisets(n, k - 1),
            };
            for r in &m.rels {
                for u in &rest {
                    let mut row = vec![ring.zero(); p.tuples.len()];
                    for (i, c) in r.iter().enumerate() {
                        if ring.is_zero(c) {
                            continue;
                        }
                        let mut t = Vec::with_capacity(k);
                        t.push(i);
                        t.extend_from_slice(u);
                        if let Some((s, idx)) = p.canonical(&t) {
                            row[idx] = ring.add(&row[idx], &ring.mul(&ring.from_int(s), c));
                        }
                    }
                    rels.push(row);
                }
            }
        }
        if kind == PowerKind::Asym {
            for (idx, t) in p.tuples.iter().enumerate() {
                if t.windows(2).any(|w| w[0] == w[1]) {
                    let mut row = vec![ring.zero(); p.tuples.len()];
                    row[idx] = ring.from_int(2);
                    rels.push(row);
                }
            }
        }
        p.module = ModulePresentation::new(ring, p.tuples.len(), rels)?;
        Ok(p)
    }

    pub fn position(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Sign and generator index of the class of the pure tensor `e_{t₁} ⊗ … ⊗ e_{t_k}`.
    pub fn canonical(&self, t: &[usize]) -> Option<(i64, usize)> {
        match self.kind {
            PowerKind::Tensor => self.position(t).map(|i| (1, i)),
            PowerKind::Sym => {
                let mut s = t.to_vec();
                s.sort();
                self.position(&s).map(|i| (1, i))
            }
            PowerKind::Asym => {
                let (sg, s) = perm::sort_with_sign(t);
                self.position(&s).map(|i| (sg, i))
            }
            PowerKind::Ext => {
                let (sg, s) = perm::sort_with_sign(t);
                if s.windows(2).any(|w| w[0] == w[1]) {
                    return None;
                }
                self.position(&s).map(|i| (sg, i))
            }
        }
    }

    /// The epimorphism `M^{⊗k} → self`.
    pub fn quotient_map(&self) -> Result<ModMorphism> {
        let src = self.base.tensor_power(self.degree)?;
        let ring = &self.base.ring;
        let mut mat = vec![vec![ring.zero(); src.gens]; self.module.gens];
        for (j, t) in perm::tuples(self.base.gens, self.degree).iter().enumerate() {
            if let Some((s, i)) = self.canonical(t) {
                mat[i][j] = ring.from_int(s);
            }
        }
        ModMorphism::new(&src, &self.module, mat)
    }

    /// Matrix column for a signed sum of pure tensors.
    fn column(&self, terms: &[(RingElem, Vec<usize>)]) -> Vec<RingElem> {
        let ring = &self.base.ring;
        let mut col = vec![ring.zero(); self.module.gens];
        for (c, t) in terms {
            if let Some((s, i)) = self.canonical(t) {
                col[i] = ring.add(&col[i], &ring.mul(&ring.from_int(s), c));
            }
        }
        col
    }

    /// `Λ^k f`, `Sym^k f`, … for `f : base → other.base`, expanding multilinearly on generators.
    pub fn induced(&self, other: &Power, f: &ModMorphism) -> Result<ModMorphism> {
        if self.kind != other.kind || self.degree != other.degree {
            return Err(Error::Invalid("induced map between powers of different kinds".into()));
        }
        let ring = &self.base.ring;
        let k = self.degree;
        let tn = f.target.gens;
        let mut cols = Vec::with_capacity(self.tuples.len());
        for t in &self.tuples {
            let mut terms: Vec<(RingElem, Vec<usize>)> = vec![(ring.one(), Vec::with_capacity(k))];
            for &x in t {
                let mut next = Vec::new();
                for (c, u) in &terms {
                    for y in 0..tn {
                        let a = &f.matrix[y][x];
                        if ring.is_zero(a) {
                            continue;
                        }
                        let mut v = u.clone();
                        v.push(y);
                        next.push((ring.mul(c, a), v));
                    }
                }
                terms = next;
            }
            cols.push(other.column(&terms));
        }
        let mat = transpose(&cols, other.module.gens, ring);
        ModMorphism::new(&self.module, &other.module, mat)
    }
}

pub(crate) fn transpose(cols: &[Vec<RingElem>], rows: usize, ring: &RingDescriptor) -> Vec<Vec<RingElem>> {
    (0..rows).map(|i| cols.iter().map(|c| c.get(i).cloned().unwrap_or_else(|| ring.zero())).collect()).collect()
}

pub fn tensor_power(m: &ModulePresentation, n: usize) -> Result<Power> {
    Power::build(PowerKind::Tensor, m, n)
}

/// `Sym^n(M)`, the coequalizer of all permutations of `M^{⊗n}`.
pub fn sym_power(m: &ModulePresentation, n: usize) -> Result<Power> {
    Power::build(PowerKind::Sym, m, n)
}

/// `ASym^n(M)`, the coequalizer of `σ` against `sgn(σ)` on `M^{⊗n}`.
pub fn asym_power(m: &ModulePresentation, n: usize) -> Result<Power> {
    Power::build(PowerKind::Asym, m, n)
}

pub fn ext_power(m: &ModulePresentation, n: usize, mode: ExtMode) -> Result<Power> {
    let ok = match mode {
        ExtMode::Asym => m.ring.two_invertible(),
        ExtMode::Alternating => alternating_ok(&m.ring),
    };
    if !ok {
        return Err(Error::Unsupported(format!("exterior power in {mode:?} mode over {}", m.ring)));
    }
    Power::build(PowerKind::Ext, m, n)
}

/// `Λ^n` in the mode the ring admits.
pub fn ext_power_auto(m: &ModulePresentation, n: usize) -> Result<Power> {
    ext_power(m, n, ExtMode::for_ring(&m.ring)?)
}

/// `σ` acting on `M^{⊗n}`, moving the factor in position `i` to position `σ(i)`.
pub fn perm_action(sigma: &[usize], m: &ModulePresentation, n: usize) -> Result<ModMorphism> {
    if sigma.len() != n || !perm::is_perm(sigma) {
        return Err(Error::Invalid(format!("not a permutation of degree {n}")));
    }
    let src = m.tensor_power(n)?;
    let ring = &m.ring;
    let mut mat = vec![vec![ring.zero(); src.gens]; src.gens];
    for (j, t) in perm::tuples(m.gens, n).iter().enumerate() {
        let mut u = vec![0; n];
        for (i, &x) in t.iter().enumerate() {
            u[sigma[i]] = x;
        }
        mat[perm::tuple_index(&u, m.gens)][j] = ring.one();
    }
    ModMorphism::new(&src, &src, mat)
}

/// `id^{⊗i} ⊗ S_{M,M} ⊗ id^{⊗(n−i−2)}`.
pub fn adjacent_symmetry(m: &ModulePresentation, n: usize, i: usize) -> Result<ModMorphism> {
    if i + 1 >= n {
        return Err(Error::Invalid("adjacent transposition out of range".into()));
    }
    let left = ModMorphism::identity(&m.tensor_power(i)?);
    let right = ModMorphism::identity(&m.tensor_power(n - i - 2)?);
    left.tensor(&symmetry(m, m)?)?.tensor(&right)
}

/// Product of adjacent symmetries along a word, `s_{w₁} ∘ … ∘ s_{w_m}`.
pub fn word_action(m: &ModulePresentation, n: usize, word: &[usize]) -> Result<ModMorphism> {
    let mut acc = ModMorphism::identity(&m.tensor_power(n)?);
    for &i in word {
        acc = acc.compose(&adjacent_symmetry(m, n, i)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CoxeterReport {
    pub degree: usize,
    pub involutions: bool,
    pub commuting: bool,
    pub braid: bool,
    /// Both reduced words of every permutation give the direct permutation matrix.
    pub words_agree: bool,
}

impl CoxeterReport {
    pub fn passed(&self) -> bool {
        self.involutions && self.commuting && self.braid && self.words_agree
    }
}

pub fn coxeter_check(m: &ModulePresentation, n: usize) -> Result<CoxeterReport> {
    let s: Vec<ModMorphism> = (0..n.saturating_sub(1)).map(|i| adjacent_symmetry(m, n, i)).collect::<Result<_>>()?;
    let id = ModMorphism::identity(&m.tensor_power(n)?);
    let mut involutions = true;
    let mut commuting = true;
    let mut braid = true;
    for i in 0..s.len() {
        involutions &= s[i].compose(&s[i])?.equals(&id)?;
        for j in i + 2..s.len() {
            commuting &= s[i].compose(&s[j])?.equals(&s[j].compose(&s[i])?)?;
        }
        if i + 1 < s.len() {
            let l = s[i].compose(&s[i + 1])?.compose(&s[i])?;
            let r = s[i + 1].compose(&s[i])?.compose(&s[i + 1])?;
            braid &= l.equals(&r)?;
        }
    }
    let mut words_agree = true;
    for p in perm::all(n) {
        let direct = perm_action(&p, m, n)?;
        words_agree &= word_action(m, n, &perm::coxeter_word(&p))?.equals(&direct)?;
        words_agree &= word_action(m, n, &perm::coxeter_word_alt(&p))?.equals(&direct)?;
    }
    Ok(CoxeterReport { degree: n, involutions, commuting, braid, words_agree })
}

/// Whether `q ∘ σ = q` (Sym) or `q ∘ σ = sgn(σ)·q` (ASym, Λ) for every `σ ∈ Σ_n`.
pub fn coequalizes(p: &Power) -> Result<bool> {
    let q = p.quotient_map()?;
    let ring = &p.base.ring;
    for s in perm::all(p.degree) {
        let act = perm_action(&s, &p.base, p.degree)?;
        let sign = match p.kind {
            PowerKind::Sym | PowerKind::Tensor => 1,
            _ => perm::sign(&s),
        };
        if p.kind == PowerKind::Tensor && s != perm::identity(p.degree) {
            continue;
        }
        if !q.compose(&act)?.equals(&q.scale(&ring.from_int(sign))?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multiplication `P^p ⊗ P^q → P^{p+q}` by concatenation, for Sym, ASym and Λ.
pub fn power_multiply(a: &Power, b: &Power, out: &Power) -> Result<ModMorphism> {
    if a.kind != b.kind || a.kind != out.kind || a.degree + b.degree != out.degree {
        return Err(Error::Invalid("multiplication between incompatible powers".into()));
    }
    let ring = &a.base.ring;
    let src = a.module.tensor(&b.module)?;
    let mut cols = Vec::with_capacity(src.gens);
    for s in &a.tuples {
        for t in &b.tuples {
            let mut u = s.clone();
            u.extend_from_slice(t);
            cols.push(out.column(&[(ring.one(), u)]));
        }
    }
    ModMorphism::new(&src, &out.module, transpose(&cols, out.module.gens, ring))
}

/// Explicit pair of mutually inverse maps, certified by their composites.
#[derive(Clone, Debug)]
pub struct IsoPair {
    pub forward: ModMorphism,
    pub backward: ModMorphism,
    /// `(p, size)` of each target summand, in order.
    pub blocks: Vec<(Vec<usize>, usize)>,
    pub forward_then_back_is_id: bool,
    pub back_then_forward_is_id: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BinomialFlavor {
    Tensor,
    Sym,
    Ext,
}

/// `P^n(A ⊕ B) ≅ ⊕ P^p(A) ⊗ P^{n−p}(B)`; for tensors the sum runs over position subsets.
pub fn binomial_decompose(a: &ModulePresentation, b: &ModulePresentation, n: usize, flavor: BinomialFlavor) -> Result<IsoPair> {
    let ring = &a.ring;
    let ab = a.direct_sum(b)?;
    let na = a.gens;
    let make = |m: &ModulePresentation, k: usize| -> Result<Power> {
        match flavor {
            BinomialFlavor::Tensor => tensor_power(m, k),
            BinomialFlavor::Sym => sym_power(m, k),
            BinomialFlavor::Ext => ext_power_auto(m, k),
        }
    };
    let whole = make(&ab, n)?;
    // block key: the positions holding A-factors (tensor) or just p (sym, ext)
    let keys: Vec<Vec<usize>> = match flavor {
        BinomialFlavor::Tensor => (0..=n).flat_map(|p| perm::subsets(n, p)).collect(),
        _ => (0..=n).map(|p| vec![p]).collect(),
    };
    let mut blocks = Vec::new();
    let mut offsets = BTreeMap::new();
    let mut target = ModulePresentation::zero(ring);
    let mut parts = Vec::new();
    for key in &keys {
        let p = if flavor == BinomialFlavor::Tensor { key.len() } else { key[0] };
        let pa = make(a, p)?;
        let pb = make(b, n - p)?;
        let m = pa.module.tensor(&pb.module)?;
        offsets.insert(key.clone(), target.gens);
        blocks.push((key.clone(), m.gens));
        target = target.direct_sum(&m)?;
        parts.push((pa, pb));
    }
    let total = target.gens;
    let mut fwd_cols = Vec::with_capacity(whole.tuples.len());
    let mut back_cols: Vec<Vec<RingElem>> = vec![Vec::new(); total];
    for t in &whole.tuples {
        let apos: Vec<usize> = (0..n).filter(|&i| t[i] < na).collect();
        let key = if flavor == BinomialFlavor::Tensor { apos.clone() } else { vec![apos.len()] };
        let bi = keys.iter().position(|k| *k == key).unwrap();
        let (pa, pb) = &parts[bi];
        let ta: Vec<usize> = apos.iter().map(|&i| t[i]).collect();
        let tb: Vec<usize> = (0..n).filter(|&i| t[i] >= na).map(|i| t[i] - na).collect();
        let (ia, ib) = (pa.position(&ta).unwrap(), pb.position(&tb).unwrap());
        let idx = offsets[&key] + ia * pb.tuples.len() + ib;
        let mut col = vec![ring.zero(); total];
        col[idx] = ring.one();
        fwd_cols.push(col);
    }
    for (bi, key) in keys.iter().enumerate() {
        let (pa, pb) = &parts[bi];
        for (ia, ta) in pa.tuples.iter().enumerate() {
            for (ib, tb) in pb.tuples.iter().enumerate() {
                let u: Vec<usize> = if flavor == BinomialFlavor::Tensor {
                    let (mut xa, mut xb) = (ta.iter(), tb.iter());
                    (0..n).map(|i| if key.contains(&i) { *xa.next().unwrap() } else { xb.next().unwrap() + na }).collect()
                } else {
                    ta.iter().copied().chain(tb.iter().map(|x| x + na)).collect()
                };
                back_cols[offsets[key] + ia * pb.tuples.len() + ib] = whole.column(&[(ring.one(), u)]);
            }
        }
    }
    let forward = ModMorphism::new(&whole.module, &target, transpose(&fwd_cols, total, ring))?;
    let backward = ModMorphism::new(&target, &whole.module, transpose(&back_cols, whole.module.gens, ring))?;
    let forward_then_back_is_id = backward.compose(&forward)?.equals(&ModMorphism::identity(&whole.module))?;
    let back_then_forward_is_id = forward.compose(&backward)?.equals(&ModMorphism::identity(&target))?;
    Ok(IsoPair { forward, backward, blocks, forward_then_back_is_id, back_then_forward_is_id })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::RingDescriptor;
    use crate::fpmod::Structure;
    use num_bigint::BigInt;

    fn q(n: usize) -> ModulePresentation {
        ModulePresentation::free(&RingDescriptor::Rationals, n)
    }

    #[test]
    fn swap_on_two_by_two() {
        let f = perm_action(&[1, 0], &q(2), 2).unwrap();
        let r = RingDescriptor::Rationals;
        let expect: Vec<Vec<RingElem>> = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
            .iter()
            .map(|row| row.iter().map(|&x| r.from_int(x)).collect())
            .collect();
        assert_eq!(f.matrix, expect);
        assert!(perm_action(&[0, 1], &q(2), 2).unwrap().equals(&ModMorphism::identity(&q(2).tensor_power(2).unwrap())).unwrap());
    }

    #[test]
    fn coxeter_relations_hold() {
        assert!(coxeter_check(&q(2), 3).unwrap().passed());
        assert!(coxeter_check(&ModulePresentation::abelian(&[2, 0]), 3).unwrap().passed());
    }

    #[test]
    fn dimension_counts() {
        assert_eq!(sym_power(&q(2), 2).unwrap().module.dim().unwrap(), 3);
        assert_eq!(sym_power(&q(3), 0).unwrap().module.dim().unwrap(), 1);
        assert_eq!(ext_power_auto(&q(2), 2).unwrap().module.dim().unwrap(), 1);
        assert_eq!(ext_power_auto(&q(2), 3).unwrap().module.dim().unwrap(), 0);
    }

    #[test]
    fn asym_square_of_integers_is_two_torsion() {
        let z = ModulePresentation::free(&RingDescriptor::Integers, 1);
        let a = asym_power(&z, 2).unwrap();
        assert_eq!(a.module.structure().unwrap(), Structure::Factors(vec![BigInt::from(2)]));
        let e = ext_power(&z, 2, ExtMode::Alternating).unwrap();
        assert!(e.module.is_zero_module().unwrap());
    }

    #[test]
    fn ext_mode_restrictions() {
        let z4 = ModulePresentation::free(&RingDescriptor::IntegersMod(4), 2);
        assert!(ext_power_auto(&z4, 2).is_err());
        assert!(ext_power(&q(2), 2, ExtMode::Alternating).is_err());
        assert!(ext_power(&ModulePresentation::free(&RingDescriptor::Integers, 2), 2, ExtMode::Asym).is_err());
    }

    #[test]
    fn quotients_coequalize() {
        for p in [sym_power(&q(2), 3).unwrap(), ext_power_auto(&q(3), 2).unwrap(), asym_power(&q(2), 2).unwrap()] {
            assert!(coequalizes(&p).unwrap());
        }
        let m = ModulePresentation::abelian(&[4, 0]);
        assert!(coequalizes(&sym_power(&m, 2).unwrap()).unwrap());
        assert!(coequalizes(&asym_power(&m, 2).unwrap()).unwrap());
    }

    #[test]
    fn sym_of_torsion() {
        // Sym²(ℤ/4 ⊕ ℤ) = ℤ/4 ⊕ ℤ/4 ⊕ ℤ
        let m = ModulePresentation::abelian(&[4, 0]);
        let s = sym_power(&m, 2).unwrap();
        let Structure::Factors(mut f) = s.module.structure().unwrap() else { panic!() };
        f.sort();
        assert_eq!(f, vec![BigInt::from(0), BigInt::from(4), BigInt::from(4)]);
    }

    #[test]
    fn binomial_isos() {
        for flavor in [BinomialFlavor::Tensor, BinomialFlavor::Sym, BinomialFlavor::Ext] {
            for n in 0..=3 {
                let iso = binomial_decompose(&q(2), &q(1), n, flavor).unwrap();
                assert!(iso.forward_then_back_is_id && iso.back_then_forward_is_id, "{flavor:?} {n}");
            }
        }
        let t = binomial_decompose(&q(2), &q(3), 2, BinomialFlavor::Tensor).unwrap();
        let sizes: Vec<usize> = t.blocks.iter().map(|b| b.1).collect();
        assert_eq!(sizes, vec![9, 6, 6, 4]);
        let e = binomial_decompose(&q(2), &q(1), 2, BinomialFlavor::Ext).unwrap();
        assert_eq!(e.blocks.iter().map(|b| b.1).collect::<Vec<_>>(), vec![0, 2, 1]);
        let z = binomial_decompose(&ModulePresentation::abelian(&[2]), &ModulePresentation::abelian(&[0]), 2, BinomialFlavor::Sym).unwrap();
        assert!(z.forward_then_back_is_id && z.back_then_forward_is_id);
    }

    #[test]
    fn multiplication_is_associative() {
        let v = q(2);
        let s1 = sym_power(&v, 1).unwrap();
        let s2 = sym_power(&v, 2).unwrap();
        let s3 = sym_power(&v, 3).unwrap();
        let m11 = power_multiply(&s1, &s1, &s2).unwrap();
        let m21 = power_multiply(&s2, &s1, &s3).unwrap();
        let m12 = power_multiply(&s1, &s2, &s3).unwrap();
        let id1 = ModMorphism::identity(&s1.module);
        let l = m21.compose(&m11.tensor(&id1).unwrap()).unwrap();
        let r = m12.compose(&id1.tensor(&m11).unwrap()).unwrap();
        assert!(l.equals(&r).unwrap());
        assert!(m11.is_surjective().unwrap());
    }
}
