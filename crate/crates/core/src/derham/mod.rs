//! Kähler differentials, the algebraic de Rham complex and the Euler-chart contraction.

mod complex;
mod euler;

pub use complex::{derham_cohomology, derham_complex, DeRhamComplex};
pub use euler::{euler_contraction_check, EulerReport};

use crate::error::{Error, Result};
use crate::exactring::{parse_ring, Field, Monomial, Polynomial, Rational, RingDescriptor, RingElem};
use crate::fpmod::{ModMorphism, ModulePresentation};
use num_traits::One;

/// A finitely presented commutative algebra `k[x₁..x_n]/I` over a field of characteristic ≠ 2.
#[derive(Clone, Debug)]
pub struct FpAlgebra {
    pub ring: RingDescriptor,
}

impl FpAlgebra {
    pub fn new(ring: &RingDescriptor) -> Result<Self> {
        let ring = match ring {
            RingDescriptor::Rationals => RingDescriptor::poly_quotient(Field::Rationals, &[], vec![])?,
            RingDescriptor::IntegersMod(p) => RingDescriptor::poly_quotient(Field::Prime(*p), &[], vec![])?,
            RingDescriptor::PolyQuotient(_) => ring.clone(),
            RingDescriptor::Integers => return Err(Error::Unsupported("algebras need a field base".into())),
        };
        if !ring.two_invertible() {
            return Err(Error::Unsupported("characteristic 2 base field".into()));
        }
        Ok(FpAlgebra { ring })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(&parse_ring(s)?)
    }

    fn q(&self) -> &crate::exactring::PolyQuotient {
        self.ring.pq().unwrap()
    }

    pub fn field(&self) -> Field {
        self.q().field.clone()
    }

    pub fn nvars(&self) -> usize {
        self.q().nvars()
    }

    pub fn dim(&self) -> Option<usize> {
        self.q().dim()
    }

    pub fn var(&self, j: usize) -> RingElem {
        RingElem::Poly(self.q().normal_form(&self.q().var(j)))
    }

    pub fn poly<'a>(&self, f: &'a RingElem) -> &'a Polynomial {
        match f {
            RingElem::Poly(p) => p,
            _ => unreachable!("algebra elements are polynomials"),
        }
    }

    /// `∂f/∂x_j` of the normal-form representative, reduced.
    pub fn partial(&self, f: &RingElem, j: usize) -> RingElem {
        RingElem::Poly(self.q().normal_form(&self.poly(f).derivative(j)))
    }

    /// Standard monomials as algebra elements, or `None` when infinite-dimensional.
    pub fn basis(&self) -> Option<Vec<RingElem>> {
        self.dim().map(|_| self.ring.basis_elems())
    }

    /// Coordinates of `f` in the standard-monomial basis.
    pub fn coords(&self, f: &RingElem) -> Vec<Rational> {
        self.ring.coords(f)
    }

    /// Normal monomials of total degree at most `bound`.
    pub fn monomials_up_to(&self, bound: u32) -> Vec<RingElem> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for e in &exps {
                let used: u32 = e.iter().sum();
                for k in 0..=bound - used {
                    let mut f = e.clone();
                    f.push(k);
                    next.push(f);
                }
            }
            exps = next;
        }
        for e in exps {
            let p = Polynomial::term(&self.field(), Monomial(e), Rational::one());
            if self.q().normal_form(&p) == p {
                out.push(RingElem::Poly(p));
            }
        }
        out
    }
}

/// Moves a polynomial into a ring with more variables, placing its variables from `offset` on.
pub(crate) fn lift(p: &Polynomial, nvars: usize, offset: usize) -> Polynomial {
    let mut out = Polynomial::zero(&p.field, nvars);
    for (m, c) in &p.terms {
        let mut e = vec![0; nvars];
        e[offset..offset + m.0.len()].copy_from_slice(&m.0);
        out = out.add(&Polynomial::term(&p.field, Monomial(e), c.clone()));
    }
    out
}

/// `B₁ ⊗_k B₂`, with the variables of `B₂` renamed if they clash.
pub fn tensor_algebra(b1: &FpAlgebra, b2: &FpAlgebra) -> Result<FpAlgebra> {
    if b1.field() != b2.field() {
        return Err(Error::RingMismatch("tensor of algebras over different fields".into()));
    }
    let (n1, n2) = (b1.nvars(), b2.nvars());
    let mut names: Vec<String> = b1.q().vars.clone();
    for v in &b2.q().vars {
        let mut name = v.clone();
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name);
    }
    let mut ideal: Vec<Polynomial> = b1.q().ideal.iter().map(|g| lift(g, n1 + n2, 0)).collect();
    ideal.extend(b2.q().ideal.iter().map(|g| lift(g, n1 + n2, n1)));
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    FpAlgebra::new(&RingDescriptor::poly_quotient(b1.field(), &refs, ideal)?)
}

/// `Ω¹_{B/k}` presented on `dx₁..dx_n` by the rows of the Jacobian of the ideal.
#[derive(Clone, Debug)]
pub struct Omega1 {
    pub algebra: FpAlgebra,
    pub module: ModulePresentation,
}

impl Omega1 {
    /// Universal differential `d f = Σ ∂f/∂x_j dx_j`.
    pub fn d(&self, f: &RingElem) -> Vec<RingElem> {
        (0..self.algebra.nvars()).map(|j| self.algebra.partial(f, j)).collect()
    }
}

pub fn omega1(b: &FpAlgebra) -> Result<Omega1> {
    let q = b.q();
    let rels = q
        .ideal
        .iter()
        .map(|g| (0..b.nvars()).map(|j| RingElem::Poly(q.normal_form(&g.derivative(j)))).collect())
        .collect();
    Ok(Omega1 { algebra: b.clone(), module: ModulePresentation::new(&b.ring, b.nvars(), rels)? })
}

/// The cokernel construction over a target algebra `T ⊇ B`: generators `e_k = d(β_k)` for the
/// standard monomials `β_k` of `B`, relations `e_{β_iβ_j} − β_i e_j − β_j e_i`.
fn cokernel_presentation(b: &FpAlgebra, t: &FpAlgebra) -> Result<ModulePresentation> {
    let basis = b.basis().ok_or_else(|| Error::Unsupported("cokernel construction needs finite dimension".into()))?;
    let nb = basis.len();
    let embed = |f: &RingElem| embed_into(b, t, f);
    let mut rels = Vec::new();
    for i in 0..nb {
        for j in i..nb {
            let prod = b.ring.mul(&basis[i], &basis[j]);
            let mut row: Vec<RingElem> = b.coords(&prod).iter().map(|c| t.ring.from_rational(c).unwrap()).collect();
            row[j] = t.ring.sub(&row[j], &embed(&basis[i]));
            row[i] = t.ring.sub(&row[i], &embed(&basis[j]));
            rels.push(row);
        }
    }
    ModulePresentation::new(&t.ring, nb, rels)
}

/// `B → T` sending the variables of `B` to the first variables of `T`.
fn embed_into(b: &FpAlgebra, t: &FpAlgebra, f: &RingElem) -> RingElem {
    let p = lift(b.poly(f), t.nvars(), 0);
    RingElem::Poly(t.q().normal_form(&p))
}

/// Jacobian presentation of `Ω¹_B ⊗_B T`.
fn jacobian_over(b: &FpAlgebra, t: &FpAlgebra) -> Result<ModulePresentation> {
    let om = omega1(b)?;
    let rels = om.module.rels.iter().map(|r| r.iter().map(|x| embed_into(b, t, x)).collect()).collect();
    ModulePresentation::new(&t.ring, b.nvars(), rels)
}

#[derive(Clone, Debug)]
pub struct Omega1Comparison {
    pub jacobian: ModulePresentation,
    pub cokernel: ModulePresentation,
    /// `e_k ↦ d β_k`.
    pub forward: ModMorphism,
    /// `dx_j ↦ d x_j`.
    pub backward: ModMorphism,
    pub dims: (usize, usize),
    pub iso_certified: bool,
    /// The backward map sends the Jacobian differential of each `β_k` to `e_k`.
    pub commutes_with_d: bool,
}

fn compare_over(b: &FpAlgebra, t: &FpAlgebra, jac: ModulePresentation) -> Result<Omega1Comparison> {
    let cok = cokernel_presentation(b, t)?;
    let basis = b.basis().unwrap();
    let nb = basis.len();
    let n = b.nvars();
    let fwd_cols: Vec<Vec<RingElem>> =
        basis.iter().map(|beta| (0..n).map(|j| embed_into(b, t, &b.partial(beta, j))).collect()).collect();
    let forward = ModMorphism::new(&cok, &jac, transpose(&fwd_cols, n, &t.ring))?;
    let d_cok = |f: &RingElem| -> Vec<RingElem> { b.coords(f).iter().map(|c| t.ring.from_rational(c).unwrap()).collect() };
    let back_cols: Vec<Vec<RingElem>> = (0..n).map(|j| d_cok(&b.var(j))).collect();
    let backward = ModMorphism::new(&jac, &cok, transpose(&back_cols, nb, &t.ring))?;
    let iso_certified = backward.compose(&forward)?.equals(&ModMorphism::identity(&cok))?
        && forward.compose(&backward)?.equals(&ModMorphism::identity(&jac))?;
    let mut commutes_with_d = true;
    for (k, col) in fwd_cols.iter().enumerate() {
        let img = backward.apply(col);
        let diff: Vec<RingElem> = img.iter().zip(cok.generator(k)).map(|(a, e)| t.ring.sub(a, &e)).collect();
        commutes_with_d &= cok.is_zero_elem(&diff)?;
    }
    let dims = (jac.dim()?, cok.dim()?);
    Ok(Omega1Comparison { jacobian: jac, cokernel: cok, forward, backward, dims, iso_certified, commutes_with_d })
}

/// Compares the Jacobian presentation of `Ω¹_B` with the cokernel construction on `B ⊗ B`.
pub fn omega1_comparison(b: &FpAlgebra) -> Result<Omega1Comparison> {
    compare_over(b, b, omega1(b)?.module)
}

pub(crate) fn transpose(cols: &[Vec<RingElem>], rows: usize, ring: &RingDescriptor) -> Vec<Vec<RingElem>> {
    (0..rows).map(|i| cols.iter().map(|c| c.get(i).cloned().unwrap_or_else(|| ring.zero())).collect()).collect()
}

/// Checks the Leibniz rule for `δ : B → M` given on the variables, on all products of normal
/// monomials (up to `degree_bound` when `B` is infinite-dimensional).
pub fn universal_derivation_check(
    b: &FpAlgebra,
    m: &ModulePresentation,
    delta: &[Vec<RingElem>],
    degree_bound: Option<u32>,
) -> Result<bool> {
    if !m.ring.same_ring(&b.ring) {
        return Err(Error::RingMismatch("derivation target must be a module over the algebra".into()));
    }
    if delta.len() != b.nvars() || delta.iter().any(|v| v.len() != m.gens) {
        return Err(Error::Invalid("δ needs one module element per variable".into()));
    }
    let monos = match (b.basis(), degree_bound) {
        (_, Some(bound)) => b.monomials_up_to(bound),
        (Some(basis), None) => basis,
        (None, None) => return Err(Error::Unsupported("infinite-dimensional algebra needs a degree bound".into())),
    };
    let ring = &b.ring;
    let apply = |f: &RingElem| -> Vec<RingElem> {
        let mut out = vec![ring.zero(); m.gens];
        for (j, dj) in delta.iter().enumerate() {
            let c = b.partial(f, j);
            for (o, x) in out.iter_mut().zip(dj) {
                *o = ring.add(o, &ring.mul(&c, x));
            }
        }
        out
    };
    for f in &monos {
        for g in &monos {
            let lhs = apply(&ring.mul(f, g));
            let (df, dg) = (apply(f), apply(g));
            let diff: Vec<RingElem> = (0..m.gens)
                .map(|i| ring.sub(&lhs[i], &ring.add(&ring.mul(f, &dg[i]), &ring.mul(g, &df[i]))))
                .collect();
            if !m.is_zero_elem(&diff)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct FunctorialityReport {
    /// `Ω¹(B₁⊗B₂)` by the cokernel construction against `Ω¹B₁⊗B₂ ⊕ B₁⊗Ω¹B₂`.
    pub sum_dims: (usize, usize),
    pub sum_iso: bool,
    /// `Ω¹_B ⊗ C` against the cokernel construction of `Ω¹_{B⊗C/C}`.
    pub base_change_dims: (usize, usize),
    pub base_change_iso: bool,
}

impl FunctorialityReport {
    pub fn passed(&self) -> bool {
        self.sum_iso && self.base_change_iso && self.sum_dims.0 == self.sum_dims.1 && self.base_change_dims.0 == self.base_change_dims.1
    }
}

pub fn omega1_functoriality_checks(b1: &FpAlgebra, b2: &FpAlgebra, c: &FpAlgebra) -> Result<FunctorialityReport> {
    let b12 = tensor_algebra(b1, b2)?;
    // Ω¹B₁⊗B₂ ⊕ B₁⊗Ω¹B₂ as a B₁⊗B₂-module
    let left = jacobian_over(b1, &b12)?;
    let shifted = {
        let om = omega1(b2)?;
        let rels = om
            .module
            .rels
            .iter()
            .map(|r| r.iter().map(|x| RingElem::Poly(b12.q().normal_form(&lift(b2.poly(x), b12.nvars(), b1.nvars())))).collect())
            .collect();
        ModulePresentation::new(&b12.ring, b2.nvars(), rels)?
    };
    let sum = left.direct_sum(&shifted)?;
    let s = compare_over(&b12, &b12, sum)?;
    let bc = tensor_algebra(b1, c)?;
    let lhs = jacobian_over(b1, &bc)?;
    let r = compare_over(b1, &bc, lhs)?;
    Ok(FunctorialityReport {
        sum_dims: s.dims,
        sum_iso: s.iso_certified && s.commutes_with_d,
        base_change_dims: r.dims,
        base_change_iso: r.iso_certified && r.commutes_with_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::parse_ring_elem;

    #[test]
    fn omega1_examples() {
        let b = FpAlgebra::parse("QQ[x]/(x^2)").unwrap();
        let om = omega1(&b).unwrap();
        assert_eq!(om.module.dim().unwrap(), 1);
        assert_eq!(FpAlgebra::parse("QQ").map(|b| omega1(&b).unwrap().module.dim().unwrap()).unwrap(), 0);
        let poly = FpAlgebra::parse("QQ[s,t]").unwrap();
        let om = omega1(&poly).unwrap();
        assert!(om.module.is_free_presentation() && om.module.gens == 2);
    }

    #[test]
    fn two_constructions_agree() {
        for s in ["QQ", "QQ[x]/(x^2)", "QQ[x]/(x^3)", "QQ[x,y]/(x^2,y^2)", "QQ[x,y]/(x^2-y, y^2)", "GF(3)[x]/(x^3)"] {
            let b = FpAlgebra::parse(s).unwrap();
            let c = omega1_comparison(&b).unwrap();
            assert!(c.iso_certified && c.commutes_with_d, "{s}");
            assert_eq!(c.dims.0, c.dims.1);
        }
    }

    #[test]
    fn characteristic_two_rejected() {
        assert!(FpAlgebra::parse("GF(2)[x]/(x^2)").is_err());
    }

    #[test]
    fn derivation_examples() {
        let b = FpAlgebra::parse("QQ[x]/(x^3)").unwrap();
        let r = &b.ring;
        let m = ModulePresentation::free(r, 1);
        assert!(!universal_derivation_check(&b, &m, &[vec![r.one()]], None).unwrap());
        let x2 = parse_ring_elem(r, "x^2").unwrap();
        let m2 = ModulePresentation::cyclic(r, &x2);
        assert!(universal_derivation_check(&b, &m2, &[vec![r.one()]], None).unwrap());
        assert!(universal_derivation_check(&b, &m, &[vec![r.zero()]], None).unwrap());
        let om = omega1(&b).unwrap();
        assert!(universal_derivation_check(&b, &om.module, &[om.module.generator(0)], None).unwrap());
        let poly = FpAlgebra::parse("QQ[x]").unwrap();
        assert!(universal_derivation_check(&poly, &ModulePresentation::free(&poly.ring, 1), &[vec![poly.ring.one()]], None).is_err());
        assert!(universal_derivation_check(&poly, &ModulePresentation::free(&poly.ring, 1), &[vec![poly.ring.one()]], Some(4)).unwrap());
    }

    #[test]
    fn sum_rule_and_base_change() {
        let b = FpAlgebra::parse("QQ[x]/(x^2)").unwrap();
        let eps = FpAlgebra::parse("QQ[e]/(e^2)").unwrap();
        let q = FpAlgebra::parse("QQ").unwrap();
        let r = omega1_functoriality_checks(&b, &b, &q).unwrap();
        assert!(r.passed());
        assert_eq!(r.base_change_dims, (1, 1));
        let r = omega1_functoriality_checks(&b, &b, &eps).unwrap();
        assert!(r.passed());
        assert_eq!(r.base_change_dims, (2, 2));
    }
}
