use num_bigint::BigInt;
use num_traits::Zero;

use super::module::{lattice_preimage, present_submodule, Linearized, ModMorphism, ModulePresentation};
use crate::error::{Error, Result};
use crate::exactring::{Rational, RingElem};
use crate::linalg::FieldMatrix;

/// `Hom(M, N)` with one morphism per generator of the presentation.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: ModulePresentation,
    pub target: ModulePresentation,
    pub module: ModulePresentation,
    pub gens: Vec<ModMorphism>,
}

fn column_space(n: &ModulePresentation, x: &[Vec<RingElem>]) -> Vec<Rational> {
    x.iter().flat_map(|xi| n.elem_coords(xi)).collect()
}

impl HomSpace {
    /// Coefficients `c` with `f = Σ c_k gens_k`, if `f` is a morphism M → N.
    pub fn express(&self, f: &ModMorphism) -> Result<Option<Vec<RingElem>>> {
        let ring = &self.source.ring;
        let tl = self.target.linearize()?;
        let n = self.source.gens;
        let parts: Vec<&Linearized> = std::iter::repeat(&*tl).take(n).collect();
        let big = Linearized::direct_sum(&parts);
        let cols = |m: &ModMorphism| -> Vec<Vec<RingElem>> {
            (0..n).map(|j| m.matrix.iter().map(|r| r[j].clone()).collect()).collect()
        };
        let gens: Vec<Vec<Rational>> = self.gens.iter().map(|g| column_space(&self.target, &cols(g))).collect();
        let b = column_space(&self.target, &cols(f));
        Ok(match big.solve(&gens, &b) {
            None => None,
            Some(c) => Some(c.iter().map(|x| ring.from_rational(x)).collect::<Result<_>>()?),
        })
    }

    /// Morphism `M → N` given by coefficients on the generators.
    pub fn combine(&self, coeffs: &[RingElem]) -> Result<ModMorphism> {
        let mut acc = ModMorphism::zero(&self.source, &self.target);
        for (c, g) in coeffs.iter().zip(&self.gens) {
            acc = acc.add(&g.scale(c)?)?;
        }
        Ok(acc)
    }
}

/// Internal hom. Over field-linear rings the generators are a base-field basis of the hom space.
pub fn hom_module(m: &ModulePresentation, n: &ModulePresentation) -> Result<HomSpace> {
    if !m.ring.same_ring(&n.ring) {
        return Err(Error::RingMismatch(format!("{} vs {}", m.ring, n.ring)));
    }
    let ring = &m.ring;
    let tl = n.linearize()?;
    let elems: Vec<Vec<Vec<RingElem>>> = match &*tl {
        Linearized::Field { field, bdim, space } => {
            // unknowns: quotient coordinates of the image of each source generator
            let comp = space.complement();
            let qd = comp.len();
            let nv = m.gens * qd;
            let lift = |v: &[Rational]| -> Vec<RingElem> {
                let mut full = vec![Rational::zero(); n.gens * bdim];
                for (c, x) in comp.iter().zip(v) {
                    full[*c] = x.clone();
                }
                n.coords_elem(&full)
            };
            let mut eqs: Vec<Vec<Rational>> = Vec::new();
            for r in &m.rels {
                // column for unknown (i, t): projection of r_i · lift(e_t)
                let mut block = vec![vec![Rational::zero(); nv]; qd];
                for (i, ri) in r.iter().enumerate() {
                    if ring.is_zero(ri) {
                        continue;
                    }
                    for t in 0..qd {
                        let mut unit = vec![Rational::zero(); qd];
                        unit[t] = field.one();
                        let img: Vec<RingElem> = lift(&unit).iter().map(|x| ring.mul(ri, x)).collect();
                        let p = tl.project(&n.elem_coords(&img));
                        for (row, v) in block.iter_mut().zip(p) {
                            row[i * qd + t] = field.add(&row[i * qd + t], &v);
                        }
                    }
                }
                eqs.extend(block);
            }
            let basis = if eqs.is_empty() {
                FieldMatrix::identity(field, nv).data
            } else {
                FieldMatrix::with_shape(field, eqs.len(), nv, eqs).nullspace()
            };
            basis.iter().map(|v| (0..m.gens).map(|i| lift(&v[i * qd..(i + 1) * qd])).collect()).collect()
        }
        Linearized::Lattice { .. } => {
            let dn = n.gens;
            let nv = m.gens * dn;
            let rels_q: Vec<&Linearized> = std::iter::repeat(&*tl).take(m.rels.len()).collect();
            let gens_x: Vec<Vec<BigInt>> = if m.rels.is_empty() {
                (0..nv).map(|i| (0..nv).map(|j| BigInt::from((i == j) as u8)).collect()).collect()
            } else {
                let Linearized::Lattice { q: big } = Linearized::direct_sum(&rels_q) else { unreachable!() };
                // column for unknown (i, c): r_i placed at coordinate c of each relation block
                let cols: Vec<Vec<BigInt>> = (0..nv)
                    .map(|u| {
                        let (i, c) = (u / dn, u % dn);
                        let mut v = vec![BigInt::zero(); m.rels.len() * dn];
                        for (k, r) in m.rels.iter().enumerate() {
                            v[k * dn + c] = ring.int_value(&r[i]);
                        }
                        v
                    })
                    .collect();
                lattice_preimage(&cols, &big)
            };
            gens_x
                .iter()
                .map(|x| (0..m.gens).map(|i| x[i * dn..(i + 1) * dn].iter().map(|v| ring.from_bigint(v)).collect()).collect())
                .collect()
        }
    };
    let gens: Vec<ModMorphism> = elems
        .iter()
        .map(|cols| {
            let mat = (0..n.gens).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
            ModMorphism::new(m, n, mat)
        })
        .collect::<Result<_>>()?;
    // present Hom as a submodule of N^{gens(M)}
    let parts: Vec<ModulePresentation> = std::iter::repeat(n.clone()).take(m.gens).collect();
    let mut ambient = ModulePresentation::zero(ring);
    for p in &parts {
        ambient = ambient.direct_sum(p)?;
    }
    let flat: Vec<Vec<RingElem>> = elems.iter().map(|cols| cols.concat()).collect();
    let module = present_submodule(&ambient, &flat)?;
    Ok(HomSpace { source: m.clone(), target: n.clone(), module, gens })
}

/// `Hom(M, R)`.
pub fn dual_module(m: &ModulePresentation) -> Result<HomSpace> {
    hom_module(m, &ModulePresentation::free(&m.ring, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::RingDescriptor;
    use crate::fpmod::module::Structure;

    #[test]
    fn matrix_space_dimension() {
        let q = RingDescriptor::Rationals;
        let h = hom_module(&ModulePresentation::free(&q, 2), &ModulePresentation::free(&q, 3)).unwrap();
        assert_eq!(h.module.dim().unwrap(), 6);
        assert_eq!(h.gens.len(), 6);
    }

    #[test]
    fn hom_between_cyclic_groups() {
        let h = hom_module(&ModulePresentation::abelian(&[2]), &ModulePresentation::abelian(&[4])).unwrap();
        assert_eq!(h.module.structure().unwrap(), Structure::Factors(vec![BigInt::from(2)]));
        let h = hom_module(&ModulePresentation::abelian(&[6]), &ModulePresentation::abelian(&[0])).unwrap();
        assert!(h.module.is_zero_module().unwrap());
        let h = hom_module(&ModulePresentation::abelian(&[0, 4]), &ModulePresentation::abelian(&[6])).unwrap();
        assert_eq!(
            h.module.structure().unwrap(),
            Structure::Factors(vec![BigInt::from(2), BigInt::from(6)])
        );
    }

    #[test]
    fn hom_into_zero() {
        let q = RingDescriptor::Rationals;
        let h = hom_module(&ModulePresentation::free(&q, 2), &ModulePresentation::zero(&q)).unwrap();
        assert!(h.module.is_zero_module().unwrap());
    }

    #[test]
    fn hom_over_artinian_ring() {
        let b = crate::exactring::parse_ring("QQ[e]/(e^2)").unwrap();
        let e = crate::exactring::parse_ring_elem(&b, "e").unwrap();
        let k = ModulePresentation::cyclic(&b, &e);
        // Hom(B/e, B) ≅ ann(e) = (e), one-dimensional
        let h = hom_module(&k, &ModulePresentation::free(&b, 1)).unwrap();
        assert_eq!(h.module.dim().unwrap(), 1);
        let f = h.gens[0].clone();
        assert_eq!(h.express(&f).unwrap().unwrap().len(), 1);
    }
}
