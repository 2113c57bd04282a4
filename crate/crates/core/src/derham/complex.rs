use super::{omega1, FpAlgebra};
use crate::error::{Error, Result};
use crate::exactring::{Rational, RingElem};
use crate::fpmod::{ChainComplex, Linearized};
use crate::linalg::FieldMatrix;
use crate::sympow::{ext_power_auto, Power};

/// `Ω⁰ → Ω¹ → … → Ω^{pmax}` with `Ω^p = Λ^p_B Ω¹`; differentials are base-field matrices on
/// quotient bases of the `Ω^p`.
#[derive(Clone, Debug)]
pub struct DeRhamComplex {
    pub algebra: FpAlgebra,
    pub forms: Vec<Power>,
    pub complex: ChainComplex,
    /// `d` kills every relation of each `Ω^p` (times every basis scalar).
    pub well_defined: bool,
    pub d_squared_zero: bool,
    /// `d(f∧g) = df∧g + (−1)^p f∧dg` on all pairs of basis forms with `p + q < pmax`.
    pub leibniz: bool,
}

impl DeRhamComplex {
    pub fn dims(&self) -> &[usize] {
        &self.complex.dims
    }

    pub fn cohomology(&self) -> Vec<usize> {
        self.complex.cohomology_dims()
    }
}

struct Forms<'a> {
    b: &'a FpAlgebra,
    forms: &'a [Power],
}

impl Forms<'_> {
    /// `d(Σ c_t dx_t) = Σ_j Σ_t ∂c_t/∂x_j dx_j ∧ dx_t`.
    fn d(&self, p: usize, x: &[RingElem]) -> Vec<RingElem> {
        let ring = &self.b.ring;
        let out_pw = &self.forms[p + 1];
        let mut out = vec![ring.zero(); out_pw.module.gens];
        for (t, c) in self.forms[p].tuples.iter().zip(x) {
            if ring.is_zero(c) {
                continue;
            }
            for j in 0..self.b.nvars() {
                let dc = self.b.partial(c, j);
                if ring.is_zero(&dc) {
                    continue;
                }
                let mut u = vec![j];
                u.extend_from_slice(t);
                if let Some((s, i)) = out_pw.canonical(&u) {
                    out[i] = ring.add(&out[i], &ring.mul(&ring.from_int(s), &dc));
                }
            }
        }
        out
    }

    fn wedge(&self, p: usize, q: usize, x: &[RingElem], y: &[RingElem]) -> Vec<RingElem> {
        let ring = &self.b.ring;
        let out_pw = &self.forms[p + q];
        let mut out = vec![ring.zero(); out_pw.module.gens];
        for (s, a) in self.forms[p].tuples.iter().zip(x) {
            if ring.is_zero(a) {
                continue;
            }
            for (t, c) in self.forms[q].tuples.iter().zip(y) {
                if ring.is_zero(c) {
                    continue;
                }
                let mut u = s.clone();
                u.extend_from_slice(t);
                if let Some((sg, i)) = out_pw.canonical(&u) {
                    out[i] = ring.add(&out[i], &ring.mul(&ring.from_int(sg), &ring.mul(a, c)));
                }
            }
        }
        out
    }

    /// Quotient-basis representatives `(generator, basis scalar)` of `Ω^p`.
    fn basis_forms(&self, p: usize) -> Result<Vec<Vec<RingElem>>> {
        let m = &self.forms[p].module;
        let Linearized::Field { bdim, space, .. } = &*m.linearize()? else { unreachable!() };
        let scalars = self.b.ring.basis_elems();
        Ok(space
            .complement()
            .into_iter()
            .map(|c| {
                let mut x = vec![self.b.ring.zero(); m.gens];
                x[c / bdim] = scalars[c % bdim].clone();
                x
            })
            .collect())
    }

    fn quotient_coords(&self, p: usize, x: &[RingElem]) -> Result<Vec<Rational>> {
        let m = &self.forms[p].module;
        let Linearized::Field { space, .. } = &*m.linearize()? else { unreachable!() };
        let red = space.reduce(&m.elem_coords(x));
        Ok(space.complement().into_iter().map(|c| red[c].clone()).collect())
    }

    fn is_zero(&self, p: usize, x: &[RingElem]) -> Result<bool> {
        self.forms[p].module.is_zero_elem(x)
    }
}

pub fn derham_complex(b: &FpAlgebra, pmax: usize) -> Result<DeRhamComplex> {
    let field = b.field();
    if b.dim().is_none() {
        return Err(Error::Unsupported("de Rham complex needs a finite-dimensional algebra".into()));
    }
    let om = omega1(b)?;
    // one extra degree so that d on Ω^{pmax} can be checked against Ω^{pmax+1}
    let forms: Vec<Power> = (0..=pmax + 1).map(|p| ext_power_auto(&om.module, p)).collect::<Result<_>>()?;
    let fm = Forms { b, forms: &forms };
    let ring = &b.ring;
    let scalars = ring.basis_elems();

    let mut dims = Vec::new();
    let mut bases = Vec::new();
    for p in 0..=pmax {
        let bs = fm.basis_forms(p)?;
        dims.push(bs.len());
        bases.push(bs);
    }
    let mut maps = Vec::new();
    for p in 0..pmax {
        let cols: Vec<Vec<Rational>> = bases[p].iter().map(|x| fm.quotient_coords(p + 1, &fm.d(p, x))).collect::<Result<_>>()?;
        let rows = dims[p + 1];
        let data = (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        maps.push(FieldMatrix::with_shape(&field, rows, cols.len(), data));
    }
    let complex = ChainComplex::new(&field, dims, maps)?;

    let mut well_defined = true;
    for p in 0..=pmax {
        for r in &forms[p].module.rels {
            for s in &scalars {
                let x: Vec<RingElem> = r.iter().map(|c| ring.mul(s, c)).collect();
                well_defined &= fm.is_zero(p + 1, &fm.d(p, &x))?;
            }
        }
    }
    let d_squared_zero = complex.d_squared_zero();

    let mut leibniz = true;
    for p in 0..pmax {
        for q in 0..pmax - p {
            let sign = ring.from_int(if p % 2 == 0 { 1 } else { -1 });
            for f in &bases[p] {
                for g in &bases[q] {
                    let lhs = fm.d(p + q, &fm.wedge(p, q, f, g));
                    let a = fm.wedge(p + 1, q, &fm.d(p, f), g);
                    let c = fm.wedge(p, q + 1, f, &fm.d(q, g));
                    let diff: Vec<RingElem> =
                        (0..lhs.len()).map(|i| ring.sub(&lhs[i], &ring.add(&a[i], &ring.mul(&sign, &c[i])))).collect();
                    leibniz &= fm.is_zero(p + q + 1, &diff)?;
                }
            }
        }
    }
    let mut forms = forms;
    forms.truncate(pmax + 1);
    Ok(DeRhamComplex { algebra: b.clone(), forms, complex, well_defined, d_squared_zero, leibniz })
}

/// `dim H^p_{dR}` for `p = 0..=n`, computed through `Ω^{n+1} = 0`.
pub fn derham_cohomology(b: &FpAlgebra) -> Result<Vec<usize>> {
    let c = derham_complex(b, b.nvars() + 1)?;
    let mut h = c.cohomology();
    h.truncate(b.nvars() + 1);
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::parse_ring_elem;

    #[test]
    fn dual_numbers() {
        let b = FpAlgebra::parse("QQ[x]/(x^2)").unwrap();
        let c = derham_complex(&b, 2).unwrap();
        assert_eq!(c.dims(), &[2, 1, 0]);
        assert!(c.well_defined && c.d_squared_zero && c.leibniz);
        assert_eq!(derham_cohomology(&b).unwrap(), vec![1, 0]);
    }

    #[test]
    fn base_field() {
        let b = FpAlgebra::parse("QQ").unwrap();
        assert_eq!(derham_cohomology(&b).unwrap(), vec![1]);
    }

    #[test]
    fn two_variables() {
        let b = FpAlgebra::parse("QQ[x,y]/(x^2,y^2)").unwrap();
        let c = derham_complex(&b, 3).unwrap();
        assert!(c.well_defined && c.d_squared_zero && c.leibniz);
        let fm = Forms { b: &b, forms: &c.forms };
        let r = &b.ring;
        let x = parse_ring_elem(r, "x").unwrap();
        let y = parse_ring_elem(r, "y").unwrap();
        // x·dy and y·dx as 1-forms on generators (dx, dy)
        let x_dy = vec![r.zero(), x];
        let y_dx = vec![y, r.zero()];
        assert_eq!(fm.d(1, &x_dy), vec![r.one()]);
        assert_eq!(fm.d(1, &y_dx), vec![r.from_int(-1)]);
    }

    #[test]
    fn cubic_truncation() {
        let b = FpAlgebra::parse("QQ[x]/(x^3)").unwrap();
        assert_eq!(derham_cohomology(&b).unwrap(), vec![1, 0]);
    }
}
