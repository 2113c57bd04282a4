//! Koszul complexes, Segre/Veronese/Plücker relations with round trips, and the Rees presentation.

mod koszul;
mod plucker;
mod rees;
mod segre;
mod veronese;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactring::{rational_to_string, Field, Monomial, Polynomial, Rational};
use crate::linalg::{FieldMatrix, RowSpace};

pub use koszul::{koszul_complex, KoszulComplex};
pub use plucker::{
    coordinate_names as plucker_coordinate_names, minors, plucker_backward, plucker_coordinates, plucker_images, plucker_relations,
    plucker_roundtrip, PluckerRoundtrip,
};
pub use rees::{rees_presentation, ReesBidegree, ReesReport};
pub use segre::{segre_backward, segre_forward, segre_images, segre_relations, segre_roundtrip, SegreRoundtrip};
pub use veronese::{
    veronese_backward, veronese_coordinates, veronese_forward, veronese_images, veronese_relations, veronese_roundtrip,
    VeroneseRoundtrip,
};

/// Surjective covector `s : k^n → k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "Vec<String>")]
pub struct LineQuotient {
    pub s: Vec<Rational>,
}

impl From<LineQuotient> for Vec<String> {
    fn from(l: LineQuotient) -> Self {
        l.s.iter().map(rational_to_string).collect()
    }
}

impl LineQuotient {
    pub fn new(s: Vec<Rational>) -> Result<Self> {
        if s.iter().all(|x| x.is_zero()) {
            return Err(Error::Invalid("the covector is zero".into()));
        }
        Ok(LineQuotient { s })
    }

    pub fn dim(&self) -> usize {
        self.s.len()
    }

    pub fn apply(&self, v: &[Rational]) -> Rational {
        self.s.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn normalized(&self) -> Vec<Rational> {
        normalize(&self.s)
    }
}

/// `d × n` matrix of rank `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDQuotient {
    pub t: FieldMatrix,
}

impl RankDQuotient {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let t = FieldMatrix::from_rows(&Field::Rationals, rows);
        if t.rank() != t.rows {
            return Err(Error::Invalid(format!("expected rank {}, found {}", t.rows, t.rank())));
        }
        Ok(RankDQuotient { t })
    }

    pub fn d(&self) -> usize {
        self.t.rows
    }

    pub fn n(&self) -> usize {
        self.t.cols
    }
}

/// Scales so that the first nonzero entry is 1.
pub fn normalize(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(c) => {
            let c = c.clone();
            v.iter().map(|x| x / &c).collect()
        }
    }
}

pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    a.len() == b.len() && normalize(a) == normalize(b)
}

/// The unique `φ` with `φ·s = s'`, if any; it is nonzero whenever `s'` is.
pub fn line_comparison(s: &LineQuotient, s2: &LineQuotient) -> Option<Rational> {
    let i = s.s.iter().position(|x| !x.is_zero())?;
    let phi = &s2.s[i] / &s.s[i];
    s.s.iter().zip(&s2.s).all(|(a, b)| a * &phi == *b).then_some(phi)
}

/// Homogeneous quadric `Σ c_{ij} x_i x_j` with `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quadric {
    pub terms: BTreeMap<(usize, usize), Rational>,
}

impl Quadric {
    pub fn new() -> Self {
        Quadric { terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: Rational) {
        let key = (i.min(j), i.max(j));
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// First monomial in index order gets coefficient 1.
    pub fn canonical(&self) -> Quadric {
        match self.terms.values().next() {
            None => self.clone(),
            Some(c) => {
                let c = c.clone();
                Quadric { terms: self.terms.iter().map(|(k, v)| (*k, v / &c)).collect() }
            }
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms.iter().map(|(&(i, j), c)| c * &x[i] * &x[j]).sum()
    }

    pub fn to_polynomial(&self, nvars: usize) -> Polynomial {
        let mut p = Polynomial::zero(&Field::Rationals, nvars);
        for (&(i, j), c) in &self.terms {
            let m = Monomial::var(nvars, i).mul(&Monomial::var(nvars, j));
            p = p.add(&Polynomial::term(&Field::Rationals, m, c.clone()));
        }
        p
    }

    pub fn display(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (k, (&(i, j), c)) in self.terms.iter().enumerate() {
            let neg = *c < Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !mag.is_one() {
                out.push_str(&rational_to_string(&mag));
                out.push('*');
            }
            if i == j {
                out.push_str(&format!("{}^2", names[i]));
            } else {
                out.push_str(&format!("{}*{}", names[i], names[j]));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Default for Quadric {
    fn default() -> Self {
        Self::new()
    }
}

/// Deduplicated set of canonical quadrics over named coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSet {
    pub coords: Vec<String>,
    pub quadrics: Vec<Quadric>,
}

impl QuadricSet {
    pub fn from_generated(coords: Vec<String>, generated: impl IntoIterator<Item = Quadric>) -> Self {
        let set: BTreeSet<Quadric> = generated.into_iter().filter(|q| !q.is_zero()).map(|q| q.canonical()).collect();
        QuadricSet { coords, quadrics: set.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.quadrics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quadrics.is_empty()
    }

    pub fn display(&self) -> Vec<String> {
        self.quadrics.iter().map(|q| q.display(&self.coords)).collect()
    }

    /// Quadrics that do not vanish at `x`.
    pub fn violations(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.quadrics.len()).filter(|&k| !self.quadrics[k].eval(x).is_zero()).collect()
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.violations(x).is_empty()
    }

    fn monomial_index(&self) -> BTreeMap<(usize, usize), usize> {
        let n = self.coords.len();
        let mut idx = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                let k = idx.len();
                idx.insert((i, j), k);
            }
        }
        idx
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        let idx = self.monomial_index();
        self.quadrics
            .iter()
            .map(|q| {
                let mut v = vec![Rational::zero(); idx.len()];
                for (k, c) in &q.terms {
                    v[idx[k]] = c.clone();
                }
                v
            })
            .collect()
    }

    pub fn span_rank(&self) -> usize {
        RowSpace::spanned_by(&Field::Rationals, self.monomial_index().len(), &self.vectors()).rank()
    }
}

/// Result of comparing a relation set with the degree-2 kernel of a coordinate map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelComparison {
    pub kernel_dim: usize,
    pub span_rank: usize,
    pub all_in_kernel: bool,
    pub equal: bool,
}

/// Basis of the degree-2 part of `ker(k[x_0..x_{N−1}] → k[y])`, `x_i ↦ images[i]`, as vectors over the
/// monomials `x_i x_j`, `i ≤ j`, in index order.
pub fn degree2_kernel(images: &[Polynomial]) -> Vec<Vec<Rational>> {
    let n = images.len();
    let mut products = Vec::new();
    for i in 0..n {
        for j in i..n {
            products.push(images[i].mul(&images[j]));
        }
    }
    let monos: BTreeSet<&Monomial> = products.iter().flat_map(|p| p.terms.keys()).collect();
    let pos: BTreeMap<&Monomial, usize> = monos.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let mut rows = vec![vec![Rational::zero(); products.len()]; pos.len()];
    for (c, p) in products.iter().enumerate() {
        for (m, v) in &p.terms {
            rows[pos[m]][c] = v.clone();
        }
    }
    FieldMatrix::with_shape(&Field::Rationals, pos.len(), products.len(), rows).nullspace()
}

pub fn compare_with_kernel(set: &QuadricSet, images: &[Polynomial]) -> KernelComparison {
    let kernel = degree2_kernel(images);
    let all_in_kernel = set.quadrics.iter().all(|q| q.to_polynomial(images.len()).substitute(images).is_zero());
    let span_rank = set.span_rank();
    KernelComparison { kernel_dim: kernel.len(), span_rank, all_in_kernel, equal: all_in_kernel && span_rank == kernel.len() }
}

/// `v ↦ (v mod W)` restricted to the pivot-complement coordinates, as rows of a matrix.
pub(crate) fn cokernel_matrix(dim: usize, relations: &[Vec<Rational>]) -> FieldMatrix {
    let w = RowSpace::spanned_by(&Field::Rationals, dim, relations);
    let comp = w.complement();
    let mut rows = vec![vec![Rational::zero(); dim]; comp.len()];
    for e in 0..dim {
        let mut v = vec![Rational::zero(); dim];
        v[e] = Rational::one();
        let red = w.reduce(&v);
        for (r, &c) in comp.iter().enumerate() {
            rows[r][e] = red[c].clone();
        }
    }
    FieldMatrix::with_shape(&Field::Rationals, comp.len(), dim, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    #[test]
    fn quadric_canonical_form() {
        let mut q = Quadric::new();
        q.add_term(3, 0, rat(-2));
        q.add_term(1, 2, rat(2));
        let c = q.canonical();
        let names: Vec<String> = (0..4).map(|i| format!("x{i}")).collect();
        assert_eq!(c.display(&names), "x0*x3 - x1*x2");
        assert_eq!(c.eval(&[rat(1), rat(2), rat(3), rat(6)]), rat(0));
    }

    #[test]
    fn kernel_of_monomial_map() {
        // x0 ↦ a², x1 ↦ ab, x2 ↦ b²
        let q = Field::Rationals;
        let a = Polynomial::var(&q, 2, 0);
        let b = Polynomial::var(&q, 2, 1);
        let k = degree2_kernel(&[a.mul(&a), a.mul(&b), b.mul(&b)]);
        assert_eq!(k.len(), 1);
        // over x0², x0x1, x0x2, x1², x1x2, x2²
        assert_eq!(normalize(&k[0]), vec![rat(0), rat(0), rat(1), rat(-1), rat(0), rat(0)]);
    }

    #[test]
    fn line_comparison_unique() {
        let s = LineQuotient::new(vec![rat(0), rat(2), rat(4)]).unwrap();
        let t = LineQuotient::new(vec![rat(0), rat(3), rat(6)]).unwrap();
        assert_eq!(line_comparison(&s, &t), Some(crate::exactring::ratio(3, 2)));
        let u = LineQuotient::new(vec![rat(1), rat(3), rat(6)]).unwrap();
        assert_eq!(line_comparison(&s, &u), None);
        assert!(LineQuotient::new(vec![rat(0)]).is_err());
    }

    #[test]
    fn cokernel_of_span() {
        let c = cokernel_matrix(3, &[vec![rat(1), rat(-1), rat(0)]]);
        assert_eq!(c.rows, 2);
        assert!(c.mul(&FieldMatrix::from_rows(&Field::Rationals, vec![vec![rat(1)], vec![rat(-1)], vec![rat(0)]])).is_zero());
    }
}
