use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactring::{Field, Monomial, Polynomial, Rational};
use crate::linalg::{FieldMatrix, RowSpace};

/// Kernel of `k[s,t][U,V] → ⊕ Iⁿ T^n`, `U ↦ sT`, `V ↦ tT`, in bidegree `(i, n)`
/// (`i` in `s,t`, `n` in `U,V`), compared with `(sV − tU)` in that bidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReesBidegree {
    pub i: usize,
    pub n: usize,
    pub source_dim: usize,
    pub kernel_dim: usize,
    pub ideal_dim: usize,
    pub ideal_in_kernel: bool,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReesReport {
    pub bound: usize,
    pub relation: String,
    pub bidegrees: Vec<ReesBidegree>,
    pub presented: bool,
}

/// Monomials `s^a t^{i−a} U^b V^{n−b}` over variables `(s, t, U, V)`.
fn bidegree_monomials(i: usize, n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=i {
        for b in 0..=n {
            out.push(Monomial(vec![a as u32, (i - a) as u32, b as u32, (n - b) as u32]));
        }
    }
    out
}

fn coefficient_rows(polys: &[Polynomial]) -> (usize, Vec<Vec<Rational>>) {
    let monos: BTreeSet<&Monomial> = polys.iter().flat_map(|p| p.terms.keys()).collect();
    let pos: BTreeMap<&Monomial, usize> = monos.into_iter().enumerate().map(|(k, m)| (m, k)).collect();
    let rows = polys
        .iter()
        .map(|p| {
            let mut v = vec![Rational::zero(); pos.len()];
            for (m, c) in &p.terms {
                v[pos[m]] = c.clone();
            }
            v
        })
        .collect();
    (pos.len(), rows)
}

pub fn rees_presentation(bound: usize) -> Result<ReesReport> {
    if bound < 1 {
        return Err(Error::Invalid("degree bound must be at least 1".into()));
    }
    let q = Field::Rationals;
    let var4 = |k| Polynomial::var(&q, 4, k);
    let var3 = |k| Polynomial::var(&q, 3, k);
    // U ↦ sT, V ↦ tT
    let images = [var3(0), var3(1), var3(0).mul(&var3(2)), var3(1).mul(&var3(2))];
    let relation = var4(0).mul(&var4(3)).sub(&var4(1).mul(&var4(2)));

    let mut bidegrees = Vec::new();
    for i in 0..=bound {
        for n in 0..=bound {
            let source = bidegree_monomials(i, n);
            let mapped: Vec<Polynomial> =
                source.iter().map(|m| Polynomial::term(&q, m.clone(), Rational::one()).substitute(&images)).collect();
            let (len, rows) = coefficient_rows(&mapped);
            // columns = source monomials
            let cols: Vec<Vec<Rational>> = (0..len).map(|r| rows.iter().map(|row| row[r].clone()).collect()).collect();
            let map = FieldMatrix::with_shape(&q, len, source.len(), cols);
            let kernel_dim = source.len() - map.rank();

            let multiples: Vec<Polynomial> = if i >= 1 && n >= 1 {
                bidegree_monomials(i - 1, n - 1)
                    .into_iter()
                    .map(|m| relation.mul(&Polynomial::term(&q, m, Rational::one())))
                    .collect()
            } else {
                Vec::new()
            };
            let ideal_in_kernel = multiples.iter().all(|p| p.substitute(&images).is_zero());
            let src_index: BTreeMap<&Monomial, usize> = source.iter().enumerate().map(|(k, m)| (m, k)).collect();
            let vecs: Vec<Vec<Rational>> = multiples
                .iter()
                .map(|p| {
                    let mut v = vec![Rational::zero(); source.len()];
                    for (m, c) in &p.terms {
                        v[src_index[m]] = c.clone();
                    }
                    v
                })
                .collect();
            let ideal_dim = RowSpace::spanned_by(&q, source.len(), &vecs).rank();
            bidegrees.push(ReesBidegree {
                i,
                n,
                source_dim: source.len(),
                kernel_dim,
                ideal_dim,
                ideal_in_kernel,
                equal: ideal_in_kernel && ideal_dim == kernel_dim,
            });
        }
    }
    let presented = bidegrees.iter().all(|b| b.equal);
    Ok(ReesReport { bound, relation: "s*V - t*U".into(), bidegrees, presented })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_relation() {
        let r = rees_presentation(3).unwrap();
        assert!(r.presented);
        let at = |i, n| r.bidegrees.iter().find(|b| b.i == i && b.n == n).unwrap().clone();
        assert_eq!(at(1, 1).kernel_dim, 1);
        for n in 0..=3 {
            assert_eq!(at(0, n).kernel_dim, 0);
        }
        // (sV − tU) times the four monomials of bidegree (1,1)
        assert_eq!(at(2, 2).kernel_dim, 4);
        assert_eq!(at(2, 2).ideal_dim, 4);
        assert!(rees_presentation(0).is_err());
    }
}
