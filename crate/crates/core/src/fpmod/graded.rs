use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::json;

use super::hom::{dual_module, hom_module};
use super::line::{line_classify, LineReport};
use super::module::{symmetry, ModMorphism, ModulePresentation};
use crate::error::{Error, Result};
use crate::exactring::{parse_ring, Rational, RingDescriptor, RingElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryFlag {
    Plain,
    Twisted,
}

/// ℤ-graded module with finitely many components.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub ring: RingDescriptor,
    pub components: BTreeMap<i64, ModulePresentation>,
    pub flag: SymmetryFlag,
}

/// Degreewise morphism.
#[derive(Clone, Debug)]
pub struct GradedMorphism {
    pub components: BTreeMap<i64, ModMorphism>,
}

impl GradedModule {
    pub fn new(ring: &RingDescriptor, flag: SymmetryFlag) -> Self {
        GradedModule { ring: ring.clone(), components: BTreeMap::new(), flag }
    }

    pub fn with(mut self, deg: i64, m: ModulePresentation) -> Self {
        self.components.insert(deg, m);
        self
    }

    /// The unit `R` in degree `d` (so `X^{⊗d}` for `X = R[−1]`).
    pub fn unit_in(ring: &RingDescriptor, d: i64, flag: SymmetryFlag) -> Self {
        Self::new(ring, flag).with(d, ModulePresentation::free(ring, 1))
    }

    pub fn component(&self, d: i64) -> ModulePresentation {
        self.components.get(&d).cloned().unwrap_or_else(|| ModulePresentation::zero(&self.ring))
    }

    /// Degrees with a nonzero component.
    pub fn support(&self) -> Result<Vec<i64>> {
        let mut out = Vec::new();
        for (d, m) in &self.components {
            if !m.is_zero_module()? {
                out.push(*d);
            }
        }
        Ok(out)
    }

    /// `M[d]_n = M_{n+d}`.
    pub fn shift(&self, d: i64) -> GradedModule {
        GradedModule {
            ring: self.ring.clone(),
            components: self.components.iter().map(|(k, m)| (k - d, m.clone())).collect(),
            flag: self.flag,
        }
    }

    /// Parses `{"ring": "...", "symmetry": "plain"|"twisted", "components": [{"deg": d, "module": {...}}]}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let ring = parse_ring(v["ring"].as_str().ok_or_else(|| Error::Parse("graded module needs \"ring\"".into()))?)?;
        let flag: SymmetryFlag = serde_json::from_value(v.get("symmetry").cloned().unwrap_or(json!("plain")))
            .map_err(|e| Error::Parse(e.to_string()))?;
        let mut g = GradedModule::new(&ring, flag);
        for c in v["components"].as_array().ok_or_else(|| Error::Parse("graded module needs \"components\"".into()))? {
            let d = c["deg"].as_i64().ok_or_else(|| Error::Parse("component needs integer \"deg\"".into()))?;
            let m = super::module_from_json(&c["module"], Some(&ring))?;
            g.components.insert(d, m);
        }
        Ok(g)
    }
}

fn check_compatible(m: &GradedModule, n: &GradedModule) -> Result<()> {
    if m.flag != n.flag {
        return Err(Error::Invalid("graded modules with different symmetry flags".into()));
    }
    if !m.ring.same_ring(&n.ring) {
        return Err(Error::RingMismatch(format!("{} vs {}", m.ring, n.ring)));
    }
    Ok(())
}

/// Pairs `(p, q)` with `p + q = deg`, in increasing `p`.
fn blocks(m: &GradedModule, n: &GradedModule, deg: i64) -> Vec<(i64, i64)> {
    m.components.keys().filter(|p| n.components.contains_key(&(deg - **p))).map(|p| (*p, deg - p)).collect()
}

/// `(M ⊗ N)_n = ⊕_{p+q=n} M_p ⊗ N_q`, summands ordered by `p`.
pub fn graded_tensor(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    check_compatible(m, n)?;
    let mut out = GradedModule::new(&m.ring, m.flag);
    for p in m.components.keys() {
        for q in n.components.keys() {
            let deg = p + q;
            if out.components.contains_key(&deg) {
                continue;
            }
            let mut acc = ModulePresentation::zero(&m.ring);
            for (a, b) in blocks(m, n, deg) {
                acc = acc.direct_sum(&m.components[&a].tensor(&n.components[&b])?)?;
            }
            out.components.insert(deg, acc);
        }
    }
    Ok(out)
}

/// Symmetry `M ⊗ N → N ⊗ M`, with the sign `(−1)^{pq}` on `M_p ⊗ N_q` when twisted.
pub fn graded_symmetry(m: &GradedModule, n: &GradedModule) -> Result<GradedMorphism> {
    let src = graded_tensor(m, n)?;
    let tgt = graded_tensor(n, m)?;
    let ring = &m.ring;
    let mut comps = BTreeMap::new();
    for (deg, s) in &src.components {
        let t = &tgt.components[deg];
        let mut mat = vec![vec![ring.zero(); s.gens]; t.gens];
        // offsets of the (p, q) blocks on either side
        let mut src_off = BTreeMap::new();
        let mut o = 0;
        for (p, q) in blocks(m, n, *deg) {
            src_off.insert((p, q), o);
            o += m.components[&p].gens * n.components[&q].gens;
        }
        let mut tgt_off = BTreeMap::new();
        let mut o = 0;
        for (q, p) in blocks(n, m, *deg) {
            tgt_off.insert((q, p), o);
            o += n.components[&q].gens * m.components[&p].gens;
        }
        for (p, q) in blocks(m, n, *deg) {
            let (mp, nq) = (&m.components[&p], &n.components[&q]);
            let sym = symmetry(mp, nq)?;
            let sign = if m.flag == SymmetryFlag::Twisted && (p * q) % 2 != 0 { -1 } else { 1 };
            let (so, to) = (src_off[&(p, q)], tgt_off[&(q, p)]);
            for (i, row) in sym.matrix.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    mat[to + i][so + j] = ring.mul(&ring.from_int(sign), x);
                }
            }
        }
        comps.insert(*deg, ModMorphism::new(s, t, mat)?);
    }
    Ok(GradedMorphism { components: comps })
}

/// Line classification in the graded category: an invertible graded module is concentrated in one
/// degree `d`, with signature `(−1)^{d²}` times the ungraded one when twisted.
#[derive(Clone, Debug)]
pub struct GradedLineReport {
    pub dualizable: bool,
    pub invertible: bool,
    pub degree: Option<i64>,
    pub signature: Option<RingElem>,
    pub is_line: bool,
    pub is_antiline: bool,
    pub dual: Option<GradedModule>,
}

impl GradedLineReport {
    pub fn to_json(&self, ring: &RingDescriptor) -> serde_json::Value {
        json!({
            "dualizable": self.dualizable,
            "invertible": self.invertible,
            "degree": self.degree,
            "signature": self.signature.as_ref().map(|s| ring.display(s)),
            "is_line": self.is_line,
            "is_antiline": self.is_antiline,
        })
    }
}

pub fn graded_line_classify(m: &GradedModule) -> Result<GradedLineReport> {
    let ring = &m.ring;
    let support = m.support()?;
    let mut reports: Vec<(i64, LineReport)> = Vec::new();
    for d in &support {
        reports.push((*d, line_classify(&m.components[d])?));
    }
    let dualizable = reports.iter().all(|(_, r)| r.dualizable);
    let mut dual = GradedModule::new(ring, m.flag);
    for (d, r) in &reports {
        dual.components.insert(-d, r.dual.module.clone());
    }
    if reports.len() != 1 || !reports[0].1.invertible {
        return Ok(GradedLineReport {
            dualizable,
            invertible: false,
            degree: None,
            signature: None,
            is_line: false,
            is_antiline: false,
            dual: dualizable.then_some(dual),
        });
    }
    let (d, r) = &reports[0];
    let base = r.signature.clone().ok_or_else(|| Error::Internal("invertible component without signature".into()))?;
    let sign = if m.flag == SymmetryFlag::Twisted && d % 2 != 0 { -1 } else { 1 };
    let sig = ring.mul(&ring.from_int(sign), &base);
    let is_line = ring.is_one(&sig);
    let is_antiline = ring.is_zero(&ring.add(&sig, &ring.one()));
    Ok(GradedLineReport {
        dualizable,
        invertible: true,
        degree: Some(*d),
        signature: Some(sig),
        is_line,
        is_antiline,
        dual: Some(dual),
    })
}

/// The module `K = k²` over `k[ε]/(ε²)` with `ε` acting by `i·p` (where `p(i) = 0`), its conjugate
/// `K̄` (ε acting by `−i·p`), and the pairing `β(a ⊗ b̄) = p(a)p(b) + ε·λ(a, b)` where
/// `a·p(b) − b·p(a) = λ(a, b)·i`.
#[derive(Clone, Debug)]
pub struct EpsExtension {
    pub p: [Rational; 2],
    pub i: [Rational; 2],
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct EpsReport {
    pub k_invertible: bool,
    pub k_is_line: bool,
    pub pairing_balanced: bool,
    pub pairing_to_dual_iso: bool,
    pub twisted_conjugate_iso: bool,
    pub dual_dim: usize,
}

impl EpsReport {
    pub fn passed(&self) -> bool {
        self.k_invertible && self.k_is_line && self.pairing_balanced && self.pairing_to_dual_iso && self.twisted_conjugate_iso
    }
}

impl EpsExtension {
    pub fn new(p: [Rational; 2], i: [Rational; 2]) -> Result<Self> {
        let pi = &p[0] * &i[0] + &p[1] * &i[1];
        if !pi.is_zero() || p.iter().all(|x| x.is_zero()) || i.iter().all(|x| x.is_zero()) {
            return Err(Error::Invalid("need nonzero p, i with p(i) = 0".into()));
        }
        Ok(EpsExtension { p, i })
    }

    pub fn ring() -> RingDescriptor {
        parse_ring("QQ[e]/(e^2)").unwrap()
    }

    fn p_of(&self, a: &[Rational; 2]) -> Rational {
        &self.p[0] * &a[0] + &self.p[1] * &a[1]
    }

    fn lambda(&self, a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
        let (pa, pb) = (self.p_of(a), self.p_of(b));
        let k = if self.i[0].is_zero() { 1 } else { 0 };
        (&a[k] * &pb - &b[k] * &pa) / &self.i[k]
    }

    /// `K` (sign +1) or `K̄` (sign −1) presented on the basis `u₁, u₂`.
    pub fn module(&self, sign: i64) -> ModulePresentation {
        let b = Self::ring();
        let e = crate::exactring::parse_ring_elem(&b, "e").unwrap();
        let s = Rational::from_integer(sign.into());
        let rels = (0..2)
            .map(|j| {
                (0..2)
                    .map(|r| {
                        let c = -(&s * &self.p[j] * &self.i[r]);
                        let base = b.from_rational(&c).unwrap();
                        if r == j { b.add(&base, &e) } else { base }
                    })
                    .collect()
            })
            .collect();
        ModulePresentation::new(&b, 2, rels).unwrap()
    }

    fn unit_vec(j: usize) -> [Rational; 2] {
        let mut v = [Rational::zero(), Rational::zero()];
        v[j] = Rational::from_integer(1.into());
        v
    }

    /// `β(u_a ⊗ ū_b)`.
    pub fn beta(&self, a: usize, b: usize) -> RingElem {
        let ring = Self::ring();
        let e = crate::exactring::parse_ring_elem(&ring, "e").unwrap();
        let (ua, ub) = (Self::unit_vec(a), Self::unit_vec(b));
        let c0 = ring.from_rational(&(self.p_of(&ua) * self.p_of(&ub))).unwrap();
        let c1 = ring.from_rational(&self.lambda(&ua, &ub)).unwrap();
        ring.add(&c0, &ring.mul(&e, &c1))
    }

    pub fn check(&self) -> Result<EpsReport> {
        let ring = Self::ring();
        let e = crate::exactring::parse_ring_elem(&ring, "e").unwrap();
        let k = self.module(1);
        let kbar = self.module(-1);
        let rep = line_classify(&k)?;

        // balancedness on basis vectors: β(εa, b) = εβ(a, b) = β(a, ε̄b)
        let act = |sign: i64, a: usize| -> [Rational; 2] {
            let pa = self.p_of(&Self::unit_vec(a)) * Rational::from_integer(sign.into());
            [&pa * &self.i[0], &pa * &self.i[1]]
        };
        let beta_lin = |x: &[Rational; 2], y: &[Rational; 2]| -> RingElem {
            let mut acc = ring.zero();
            for a in 0..2 {
                for b in 0..2 {
                    let c = &x[a] * &y[b];
                    if !c.is_zero() {
                        acc = ring.add(&acc, &ring.mul(&ring.from_rational(&c).unwrap(), &self.beta(a, b)));
                    }
                }
            }
            acc
        };
        let mut balanced = true;
        for a in 0..2 {
            for b in 0..2 {
                let eb = ring.mul(&e, &self.beta(a, b));
                balanced &= beta_lin(&act(1, a), &Self::unit_vec(b)) == eb;
                balanced &= beta_lin(&Self::unit_vec(a), &act(-1, b)) == eb;
            }
        }

        // K̄ → Hom(K, B), ū_b ↦ β(−, ū_b)
        let hom = hom_module(&k, &ModulePresentation::free(&ring, 1))?;
        let mut cols = Vec::new();
        for b in 0..2 {
            let f = ModMorphism::new(&k, &hom.target, vec![vec![self.beta(0, b), self.beta(1, b)]])?;
            cols.push(hom.express(&f)?.ok_or_else(|| Error::Internal("pairing is not K-linear".into()))?);
        }
        let mat = (0..hom.gens.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let to_dual = ModMorphism::new(&kbar, &hom.module, mat)?;
        let iso = to_dual.is_iso()?;

        // L = R here, so L^{⊗−2} ⊗ K̄ → K̄ → K* via ψ ⊗ x ↦ ψ(1 ⊗ 1)·x
        let l = ModulePresentation::free(&ring, 1);
        let linv2 = dual_module(&l.tensor(&l)?)?;
        let t = linv2.module.tensor(&kbar)?;
        let mut mat = vec![vec![ring.zero(); t.gens]; 2];
        for (g, psi) in linv2.gens.iter().enumerate() {
            for j in 0..2 {
                mat[j][g * 2 + j] = psi.matrix[0][0].clone();
            }
        }
        let to_kbar = ModMorphism::new(&t, &kbar, mat)?;
        let composite = to_dual.compose(&to_kbar)?;
        let twisted_iso = composite.is_iso()?;

        Ok(EpsReport {
            k_invertible: rep.invertible,
            k_is_line: rep.is_line,
            pairing_balanced: balanced,
            pairing_to_dual_iso: iso,
            twisted_conjugate_iso: twisted_iso,
            dual_dim: rep.dual.module.dim()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::field::rat;

    #[test]
    fn twisted_generator_is_an_antiline() {
        let q = RingDescriptor::Rationals;
        let x = GradedModule::unit_in(&q, 1, SymmetryFlag::Twisted);
        let rep = graded_line_classify(&x).unwrap();
        assert!(rep.invertible && rep.is_antiline && !rep.is_line);
        let plain = GradedModule::unit_in(&q, 1, SymmetryFlag::Plain);
        assert!(graded_line_classify(&plain).unwrap().is_line);
    }

    #[test]
    fn twisted_symmetry_on_square_is_minus_one() {
        let q = RingDescriptor::Rationals;
        let x = GradedModule::unit_in(&q, 1, SymmetryFlag::Twisted);
        let s = graded_symmetry(&x, &x).unwrap();
        let c = &s.components[&2];
        assert_eq!(c.matrix, vec![vec![q.from_int(-1)]]);
    }

    #[test]
    fn inverse_law_and_shift() {
        let q = RingDescriptor::Rationals;
        let x = GradedModule::unit_in(&q, 1, SymmetryFlag::Twisted);
        let xinv = GradedModule::unit_in(&q, -1, SymmetryFlag::Twisted);
        let t = graded_tensor(&x, &xinv).unwrap();
        assert_eq!(t.support().unwrap(), vec![0]);
        let m = GradedModule::new(&q, SymmetryFlag::Twisted)
            .with(0, ModulePresentation::free(&q, 2))
            .with(3, ModulePresentation::free(&q, 1));
        let lhs = m.shift(2);
        let rhs = graded_tensor(&m, &GradedModule::unit_in(&q, -2, SymmetryFlag::Twisted)).unwrap();
        for d in -3..3 {
            assert_eq!(lhs.component(d).dim().unwrap(), rhs.component(d).dim().unwrap());
        }
    }

    #[test]
    fn flag_mismatch_is_rejected() {
        let q = RingDescriptor::Rationals;
        let a = GradedModule::unit_in(&q, 1, SymmetryFlag::Twisted);
        let b = GradedModule::unit_in(&q, 1, SymmetryFlag::Plain);
        assert!(graded_tensor(&a, &b).is_err());
    }

    #[test]
    fn eps_extension_inverse() {
        let ext = EpsExtension::new([rat(1), rat(2)], [rat(-2), rat(1)]).unwrap();
        let rep = ext.check().unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.dual_dim, 2);
        assert!(EpsExtension::new([rat(1), rat(0)], [rat(1), rat(0)]).is_err());
    }
}
