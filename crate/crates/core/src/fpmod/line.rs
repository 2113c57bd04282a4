use num_traits::Zero;
use serde_json::json;

use super::hom::{dual_module, HomSpace};
use super::module::{symmetry, Linearized, ModMorphism, ModulePresentation};
use crate::error::{Error, Result};
use crate::exactring::{LinearKind, Rational, RingDescriptor, RingElem};

/// Outcome of [`line_classify`].
#[derive(Clone, Debug)]
pub struct LineReport {
    pub dualizable: bool,
    pub invertible: bool,
    pub signature: Option<RingElem>,
    pub is_line: bool,
    pub is_antiline: bool,
    pub dual: HomSpace,
    pub evaluation: ModMorphism,
    /// Coevaluation `R → M ⊗ M*` as coefficients on generators `(i, k)`, when one exists.
    pub coevaluation: Option<Vec<RingElem>>,
}

impl LineReport {
    pub fn to_json(&self) -> serde_json::Value {
        let ring = &self.dual.source.ring;
        json!({
            "dualizable": self.dualizable,
            "invertible": self.invertible,
            "signature": self.signature.as_ref().map(|s| ring.display(s)),
            "is_line": self.is_line,
            "is_antiline": self.is_antiline,
            "dual": {
                "gens": self.dual.module.gens,
                "structure": self.dual.module.describe(),
            },
        })
    }
}

/// Scalars spanning the ring over its linear base (a base-field basis, or `1` over ℤ and ℤ/n).
pub(crate) fn scalar_basis(ring: &RingDescriptor) -> Result<Vec<RingElem>> {
    Ok(match ring.linear_kind()? {
        LinearKind::Field { .. } => ring.basis_elems(),
        LinearKind::Lattice { .. } => vec![ring.one()],
    })
}

pub(crate) fn combine_scalars(ring: &RingDescriptor, basis: &[RingElem], x: &[Rational]) -> Result<RingElem> {
    let mut acc = ring.zero();
    for (b, c) in basis.iter().zip(x) {
        if !c.is_zero() {
            acc = ring.add(&acc, &ring.mul(b, &ring.from_rational(c)?));
        }
    }
    Ok(acc)
}

/// Solves `f = c·id` for a scalar `c`.
pub fn scalar_of(f: &ModMorphism) -> Result<Option<RingElem>> {
    let m = &f.source;
    let ring = &m.ring;
    let basis = scalar_basis(ring)?;
    let lin = m.linearize()?;
    let parts: Vec<&Linearized> = std::iter::repeat(&*lin).take(m.gens).collect();
    let big = Linearized::direct_sum(&parts);
    let stack = |g: &ModMorphism| -> Vec<Rational> {
        (0..m.gens)
            .flat_map(|j| m.elem_coords(&g.matrix.iter().map(|r| r[j].clone()).collect::<Vec<_>>()))
            .collect()
    };
    let gens: Vec<Vec<Rational>> = basis.iter().map(|b| stack(&ModMorphism::scalar(m, b))).collect();
    match big.solve(&gens, &stack(f)) {
        None => Ok(None),
        Some(x) => Ok(Some(combine_scalars(ring, &basis, &x)?)),
    }
}

/// Finds scalars `a_g` with `Σ_g a_g·x_g = b` in `M^{⊕copies}`, where each `x_g` and `b` list one
/// element per copy.
pub fn solve_combination(m: &ModulePresentation, gens: &[Vec<Vec<RingElem>>], rhs: &[Vec<RingElem>]) -> Result<Option<Vec<RingElem>>> {
    let ring = &m.ring;
    let basis = scalar_basis(ring)?;
    if basis.is_empty() {
        return Ok(Some(vec![ring.zero(); gens.len()]));
    }
    let lin = m.linearize()?;
    let parts: Vec<&Linearized> = std::iter::repeat(&*lin).take(rhs.len()).collect();
    let big = Linearized::direct_sum(&parts);
    let mut cols = Vec::with_capacity(gens.len() * basis.len());
    for g in gens {
        for b in &basis {
            cols.push(g.iter().flat_map(|x| m.elem_coords(&x.iter().map(|c| ring.mul(b, c)).collect::<Vec<_>>())).collect());
        }
    }
    let target: Vec<Rational> = rhs.iter().flat_map(|x| m.elem_coords(x)).collect();
    let Some(x) = big.solve(&cols, &target) else { return Ok(None) };
    x.chunks(basis.len()).map(|c| combine_scalars(ring, &basis, c)).collect::<Result<Vec<_>>>().map(Some)
}

/// Duality, invertibility and signature of `M`, with `M* = Hom(M, R)` as the dual candidate.
pub fn line_classify(m: &ModulePresentation) -> Result<LineReport> {
    let ring = &m.ring;
    let dual = dual_module(m)?;
    let (n, s) = (m.gens, dual.gens.len());
    let phi = |k: usize, j: usize| dual.gens[k].matrix[0][j].clone();

    let unit = ModulePresentation::free(ring, 1);
    let dm = dual.module.tensor(m)?;
    let ev_row: Vec<RingElem> = (0..s).flat_map(|k| (0..n).map(move |j| (k, j))).map(|(k, j)| phi(k, j)).collect();
    let evaluation = ModMorphism::new(&dm, &unit, vec![ev_row])?;

    // both triangle identities as one linear system in the coefficients of coev(1)
    let basis = scalar_basis(ring)?;
    let ml = m.linearize()?;
    let dl = dual.module.linearize()?;
    let mut parts: Vec<&Linearized> = std::iter::repeat(&*ml).take(n).collect();
    parts.extend(std::iter::repeat(&*dl).take(s));
    let big = Linearized::direct_sum(&parts);
    let mut unknowns = Vec::new();
    let mut cols = Vec::new();
    for i in 0..n {
        for k in 0..s {
            for b in &basis {
                let mut v = Vec::new();
                for j in 0..n {
                    let mut x = vec![ring.zero(); n];
                    x[i] = ring.mul(b, &phi(k, j));
                    v.extend(m.elem_coords(&x));
                }
                for l in 0..s {
                    let mut y = vec![ring.zero(); s];
                    y[k] = ring.mul(b, &phi(l, i));
                    v.extend(dual.module.elem_coords(&y));
                }
                cols.push(v);
                unknowns.push((i, k, b.clone()));
            }
        }
    }
    let mut target = Vec::new();
    for j in 0..n {
        target.extend(m.elem_coords(&m.generator(j)));
    }
    for l in 0..s {
        target.extend(dual.module.elem_coords(&dual.module.generator(l)));
    }
    let coevaluation = big.solve(&cols, &target).map(|x| {
        let mut c = vec![ring.zero(); n * s];
        for ((i, k, b), xv) in unknowns.iter().zip(&x) {
            if !xv.is_zero() {
                let t = ring.mul(b, &ring.from_rational(xv).unwrap());
                c[i * s + k] = ring.add(&c[i * s + k], &t);
            }
        }
        c
    });
    let dualizable = coevaluation.is_some();
    let invertible = dualizable && evaluation.is_iso()?;
    let signature = if invertible {
        let sym = symmetry(m, m)?;
        let c = scalar_of(&sym)?
            .ok_or_else(|| Error::Internal("invertible module whose self-symmetry is not a scalar".into()))?;
        Some(c)
    } else {
        None
    };
    let minus_one = ring.from_int(-1);
    let is_line = signature.as_ref().is_some_and(|c| ring.is_one(c));
    let is_antiline = signature.as_ref().is_some_and(|c| ring.is_zero(&ring.sub(c, &minus_one)));
    Ok(LineReport { dualizable, invertible, signature, is_line, is_antiline, dual, evaluation, coevaluation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::parse_ring;

    #[test]
    fn unit_is_a_line() {
        for r in ["QQ", "ZZ", "ZZ/6", "QQ[x]/(x^2)"] {
            let ring = parse_ring(r).unwrap();
            let rep = line_classify(&ModulePresentation::free(&ring, 1)).unwrap();
            assert!(rep.invertible && rep.is_line, "{r}");
        }
    }

    #[test]
    fn free_rank_two_is_dualizable_not_invertible() {
        let q = RingDescriptor::Rationals;
        let rep = line_classify(&ModulePresentation::free(&q, 2)).unwrap();
        assert!(rep.dualizable);
        assert!(!rep.invertible);
        assert!(rep.signature.is_none());
    }

    #[test]
    fn torsion_group_is_not_dualizable() {
        let rep = line_classify(&ModulePresentation::abelian(&[2])).unwrap();
        assert!(!rep.dualizable && !rep.invertible);
    }

    #[test]
    fn summand_of_split_ring_is_dualizable() {
        // ℤ/6 ≅ ℤ/2 × ℤ/3, the ideal (3) is projective but not invertible
        let r = RingDescriptor::IntegersMod(6);
        let m = ModulePresentation::cyclic(&r, &r.from_int(2));
        let rep = line_classify(&m).unwrap();
        assert!(rep.dualizable);
        assert!(!rep.invertible);
    }
}
