use super::hopf::omega_map;
use super::power::{ext_power_auto, power_multiply, transpose, Power};
use crate::error::{Error, Result};
use crate::exactring::RingElem;
use crate::fpmod::{line_classify, solve_combination, symmetry, ModMorphism, ModulePresentation};
use crate::perm;

#[derive(Clone, Debug, serde::Serialize)]
pub struct LocallyFreeReport {
    pub rank: usize,
    pub det_invertible: bool,
    pub det_is_line: bool,
    pub omega_zero: bool,
    pub is_locally_free_rank_d: bool,
    /// Both triangle diagrams for every `1 ≤ p ≤ d`.
    pub duality_holds: bool,
    pub duality_by_p: Vec<(usize, bool, bool)>,
}

fn factorial_is_unit(v: &ModulePresentation, d: usize) -> bool {
    let ring = &v.ring;
    let mut f = ring.one();
    for k in 2..=d {
        f = ring.mul(&f, &ring.from_int(k as i64));
    }
    ring.is_unit(&f)
}

/// `e(y ⊗ x) = x ∧ y` on `Λ^{d−p} ⊗ Λ^p → Λ^d`.
fn pairing(lp: &Power, lq: &Power, ld: &Power) -> Result<ModMorphism> {
    power_multiply(lp, lq, ld)?.compose(&symmetry(&lq.module, &lp.module)?)
}

/// The two duality triangles for `Λ^p` against `Λ^{d−p}`.
fn triangles(lp: &Power, lq: &Power, ld: &Power) -> Result<(bool, bool)> {
    let e = pairing(lp, lq, ld)?;
    let c = super::hopf::shuffle_comultiply(&ld.base, lp.degree, lq.degree)?;
    let idp = ModMorphism::identity(&lp.module);
    let idq = ModMorphism::identity(&lq.module);
    let dagger = idp.tensor(&e)?.compose(&c.tensor(&idp)?)?.equals(&symmetry(&ld.module, &lp.module)?)?;
    let ddagger = e.tensor(&idq)?.compose(&idq.tensor(&c)?)?.equals(&symmetry(&lq.module, &ld.module)?)?;
    Ok((dagger, ddagger))
}

/// Whether `V` is locally free of rank `d`: `Λ^d V` invertible and `ω : Λ^{d+1} V → V ⊗ Λ^d V` zero.
pub fn locally_free_check(v: &ModulePresentation, d: usize) -> Result<LocallyFreeReport> {
    if d == 0 {
        return Err(Error::Invalid("rank must be at least 1".into()));
    }
    if !factorial_is_unit(v, d) {
        return Err(Error::Unsupported(format!("{d}! is not invertible in {}", v.ring)));
    }
    let ld = ext_power_auto(v, d)?;
    let line = line_classify(&ld.module)?;
    let omega_zero = omega_map(v, d)?.is_zero()?;
    let mut duality_by_p = Vec::new();
    if v.ring.two_invertible() {
        for p in 1..=d {
            let (lp, lq) = (ext_power_auto(v, p)?, ext_power_auto(v, d - p)?);
            let (a, b) = triangles(&lp, &lq, &ld)?;
            duality_by_p.push((p, a, b));
        }
    }
    let duality_holds = !duality_by_p.is_empty() && duality_by_p.iter().all(|&(_, a, b)| a && b);
    Ok(LocallyFreeReport {
        rank: d,
        det_invertible: line.invertible,
        det_is_line: line.is_line,
        omega_zero,
        is_locally_free_rank_d: line.invertible && omega_zero,
        duality_holds,
        duality_by_p,
    })
}

/// Inverse of `f : V → W` between locally free modules of rank `d`, from `Λ^{d−1} f` and `(Λ^d f)^{−1}`.
///
/// `g(w)` is the unique `v` with `v ∧ x = (Λ^d f)^{−1}(w ∧ Λ^{d−1}f(x))` for all `x ∈ Λ^{d−1} V`.
pub fn cramer_inverse(f: &ModMorphism, d: usize) -> Result<ModMorphism> {
    let (v, w) = (&f.source, &f.target);
    for (name, m) in [("source", v), ("target", w)] {
        if !locally_free_check(m, d)?.is_locally_free_rank_d {
            return Err(Error::Invalid(format!("{name} is not locally free of rank {d}")));
        }
    }
    let ring = &v.ring;
    let (vd, wd) = (ext_power_auto(v, d)?, ext_power_auto(w, d)?);
    let (v1, w1) = (ext_power_auto(v, 1)?, ext_power_auto(w, 1)?);
    let (vm, wm) = (ext_power_auto(v, d - 1)?, ext_power_auto(w, d - 1)?);
    let top = vd.induced(&wd, f)?;
    if !top.is_iso()? {
        return Err(Error::NotInvertible("the top exterior power of f is not invertible".into()));
    }
    let sub = vm.induced(&wm, f)?;
    let wedge_v = power_multiply(&v1, &vm, &vd)?;
    let wedge_w = power_multiply(&w1, &wm, &wd)?;
    let col = |m: &ModMorphism, j: usize| -> Vec<RingElem> { m.matrix.iter().map(|r| r[j].clone()).collect() };
    let tensor_elem = |x: &[RingElem], y: &[RingElem]| -> Vec<RingElem> {
        x.iter().flat_map(|a| y.iter().map(move |b| ring.mul(a, b))).collect()
    };
    // (Λ^d f)^{-1} by solving against the generators of Λ^d V
    let top_gens: Vec<Vec<Vec<RingElem>>> = (0..vd.module.gens).map(|i| vec![col(&top, i)]).collect();
    let top_inverse = |z: &[RingElem]| -> Result<Vec<RingElem>> {
        let a = solve_combination(&wd.module, &top_gens, &[z.to_vec()])?
            .ok_or_else(|| Error::Internal("isomorphism without preimage".into()))?;
        let mut out = vec![ring.zero(); vd.module.gens];
        for (i, c) in a.iter().enumerate() {
            out[i] = c.clone();
        }
        Ok(out)
    };
    let xs: Vec<usize> = (0..vm.module.gens).collect();
    // candidate images: generator e_i of V wedged against every x
    let cand: Vec<Vec<Vec<RingElem>>> = (0..v.gens)
        .map(|i| xs.iter().map(|&t| wedge_v.apply(&tensor_elem(&v.generator(i), &vm.module.generator(t)))).collect())
        .collect();
    let mut cols = Vec::with_capacity(w.gens);
    for j in 0..w.gens {
        let rhs: Vec<Vec<RingElem>> = xs
            .iter()
            .map(|&t| top_inverse(&wedge_w.apply(&tensor_elem(&w.generator(j), &col(&sub, t)))))
            .collect::<Result<_>>()?;
        let a = solve_combination(&vd.module, &cand, &rhs)?
            .ok_or_else(|| Error::NotInvertible(format!("no preimage for generator {j}")))?;
        cols.push(a);
    }
    let g = ModMorphism::new(w, v, transpose(&cols, v.gens, ring))?;
    if !f.compose(&g)?.equals(&ModMorphism::identity(w))? || !g.compose(f)?.equals(&ModMorphism::identity(v))? {
        return Err(Error::NotInvertible("candidate inverse fails the composite check".into()));
    }
    Ok(g)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SymmetryLemmaReport {
    pub d: usize,
    /// The hypothesis checked on all `d^{2d}` basis-vector inputs.
    pub hypothesis_holds: bool,
    pub symmetric: bool,
}

/// For `V = k^d` and `f(x⊗y) = ι₁(x) ∧ ι₂(y) ∈ Λ^{2d}(V ⊕ V)`, checks the exchange hypothesis
/// at `p = d` and then that `f ∘ S = f`.
pub fn symmetry_lemma_check(v: &ModulePresentation, d: usize) -> Result<SymmetryLemmaReport> {
    if !v.is_free_presentation() || v.gens != d {
        return Err(Error::Invalid("symmetry lemma check runs on a free module of rank d".into()));
    }
    let ring = &v.ring;
    let vv = v.direct_sum(v)?;
    let ld = ext_power_auto(v, d)?;
    let l2 = ext_power_auto(&vv, d)?;
    let top = ext_power_auto(&vv, 2 * d)?;
    let inj = |shift: usize| -> Result<ModMorphism> {
        let mat = (0..2 * d).map(|i| (0..d).map(|j| if i == j + shift { ring.one() } else { ring.zero() }).collect()).collect();
        ModMorphism::new(v, &vv, mat)
    };
    let f = power_multiply(&l2, &l2, &top)?.compose(&ld.induced(&l2, &inj(0)?)?.tensor(&ld.induced(&l2, &inj(d)?)?)?)?;
    let wedge = |t: &[usize]| -> Vec<RingElem> {
        let mut out = vec![ring.zero(); ld.module.gens];
        if let Some((s, i)) = ld.canonical(t) {
            out[i] = ring.from_int(s);
        }
        out
    };
    let ev = |x: &[usize], y: &[usize]| -> Vec<RingElem> {
        let (a, b) = (wedge(x), wedge(y));
        f.apply(&a.iter().flat_map(|p| b.iter().map(move |q| ring.mul(p, q))).collect::<Vec<_>>())
    };
    let mut hypothesis_holds = true;
    for t in perm::tuples(d, 2 * d) {
        let (vs, ws) = t.split_at(d);
        let lhs = ev(vs, ws);
        let mut rhs = vec![ring.zero(); lhs.len()];
        for k in 0..d {
            let mut x = vs[..d - 1].to_vec();
            x.push(ws[k]);
            let mut y = vec![vs[d - 1]];
            y.extend(ws.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &z)| z));
            let s = ring.from_int(if k % 2 == 0 { 1 } else { -1 });
            for (r, val) in rhs.iter_mut().zip(ev(&x, &y)) {
                *r = ring.add(r, &ring.mul(&s, &val));
            }
        }
        if lhs != rhs {
            hypothesis_holds = false;
            break;
        }
    }
    let symmetric = f.compose(&symmetry(&ld.module, &ld.module)?)?.equals(&f)?;
    Ok(SymmetryLemmaReport { d, hypothesis_holds, symmetric })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{parse_ring, RingDescriptor};

    fn q(n: usize) -> ModulePresentation {
        ModulePresentation::free(&RingDescriptor::Rationals, n)
    }

    fn qmat(rows: &[&[i64]]) -> Vec<Vec<RingElem>> {
        let r = RingDescriptor::Rationals;
        rows.iter().map(|row| row.iter().map(|&x| r.from_int(x)).collect()).collect()
    }

    #[test]
    fn free_modules_are_locally_free() {
        for d in 1..=3 {
            let r = locally_free_check(&q(d), d).unwrap();
            assert!(r.det_invertible && r.det_is_line && r.omega_zero && r.is_locally_free_rank_d && r.duality_holds, "{d}");
        }
    }

    #[test]
    fn too_big_rank_fails_omega() {
        for d in 1..=2 {
            let r = locally_free_check(&q(d + 1), d).unwrap();
            assert!(!r.omega_zero && !r.is_locally_free_rank_d);
        }
    }

    #[test]
    fn rank_one_matches_lines() {
        let r15 = RingDescriptor::IntegersMod(15);
        let summand = ModulePresentation::cyclic(&r15, &r15.from_int(5));
        let rep = locally_free_check(&summand, 1).unwrap();
        assert!(!rep.is_locally_free_rank_d);
        assert_eq!(rep.is_locally_free_rank_d, line_classify(&summand).unwrap().is_line);
        let unit = ModulePresentation::free(&r15, 1);
        assert!(locally_free_check(&unit, 1).unwrap().is_locally_free_rank_d);
        let z = ModulePresentation::free(&RingDescriptor::Integers, 1);
        assert!(locally_free_check(&z, 1).unwrap().is_locally_free_rank_d);
    }

    #[test]
    fn factorial_must_be_a_unit() {
        let z = ModulePresentation::free(&RingDescriptor::Integers, 2);
        assert!(locally_free_check(&z, 2).is_err());
    }

    #[test]
    fn cramer_examples() {
        let f = ModMorphism::new(&q(2), &q(2), qmat(&[&[1, 1], &[0, 1]])).unwrap();
        let g = cramer_inverse(&f, 2).unwrap();
        assert_eq!(g.matrix, qmat(&[&[1, -1], &[0, 1]]));
        let two = ModMorphism::scalar(&q(3), &RingDescriptor::Rationals.from_int(2));
        let half = cramer_inverse(&two, 3).unwrap();
        let r = RingDescriptor::Rationals;
        assert!(half.equals(&ModMorphism::scalar(&q(3), &r.inverse(&r.from_int(2)).unwrap())).unwrap());
        let sing = ModMorphism::new(&q(2), &q(2), qmat(&[&[1, 2], &[2, 4]])).unwrap();
        assert!(matches!(cramer_inverse(&sing, 2), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn cramer_over_a_polynomial_algebra() {
        let a = parse_ring("QQ[x]/(x^2)").unwrap();
        let v = ModulePresentation::free(&a, 2);
        let x = crate::exactring::parse_ring_elem(&a, "x").unwrap();
        let one_plus_x = a.add(&a.one(), &x);
        let f = ModMorphism::new(&v, &v, vec![vec![one_plus_x, x.clone()], vec![a.zero(), a.one()]]).unwrap();
        let g = cramer_inverse(&f, 2).unwrap();
        assert!(f.compose(&g).unwrap().equals(&ModMorphism::identity(&v)).unwrap());
    }

    #[test]
    fn symmetry_lemma() {
        for d in 1..=3 {
            let r = symmetry_lemma_check(&q(d), d).unwrap();
            assert!(r.hypothesis_holds && r.symmetric, "{d}");
        }
    }
}
