use num_traits::Zero;
use serde::Serialize;

use super::LineQuotient;
use crate::error::{Error, Result};
use crate::exactring::{Field, Rational};
use crate::fpmod::ChainComplex;
use crate::linalg::FieldMatrix;
use crate::perm;

/// `Λ^P E → … → Λ²E → E → k → 0` for `s : E = k^n → k`, with
/// `d_p(e_{i₁}∧…∧e_{i_p}) = Σ_k (−1)^k s(e_{i_k}) e_{i₁}∧…ê_{i_k}…∧e_{i_p}`.
#[derive(Clone, Debug, Serialize)]
pub struct KoszulComplex {
    pub s: LineQuotient,
    pub top: usize,
    /// `dim Λ^p E` for `p = 0..=top`.
    pub dims: Vec<usize>,
    #[serde(skip)]
    pub differentials: Vec<FieldMatrix>,
    #[serde(skip)]
    pub complex: ChainComplex,
    pub d_squared_zero: bool,
    /// Homology vanishes at `p = 0..top` (and at `top` when `top = n`).
    pub exact: bool,
    /// `d_{p+1}t_p + t_{p−1}d_p = −id` for `t_p = e∧−` with `s(e) = 1`.
    pub contraction: Option<bool>,
}

impl KoszulComplex {
    /// `d_p : Λ^p → Λ^{p−1}` for `1 ≤ p ≤ top`.
    pub fn d(&self, p: usize) -> &FieldMatrix {
        &self.differentials[p - 1]
    }

    pub fn passed(&self) -> bool {
        self.d_squared_zero && self.exact && self.contraction.unwrap_or(true)
    }
}

fn differential(s: &LineQuotient, p: usize) -> FieldMatrix {
    let n = s.dim();
    let src = perm::subsets(n, p);
    let dst = perm::subsets(n, p - 1);
    let mut m = FieldMatrix::zero(&Field::Rationals, dst.len(), src.len());
    for (c, set) in src.iter().enumerate() {
        for k in 0..p {
            let coeff = &s.s[set[k]];
            if coeff.is_zero() {
                continue;
            }
            let mut rest = set.clone();
            rest.remove(k);
            let r = dst.binary_search(&rest).unwrap();
            // positions are 1-based in the alternating sum
            let sign = if (k + 1) % 2 == 0 { coeff.clone() } else { -coeff.clone() };
            m.data[r][c] += sign;
        }
    }
    m
}

/// `x ↦ e∧x` on `Λ^p`.
fn wedge_with(e: &[Rational], p: usize) -> FieldMatrix {
    let n = e.len();
    let src = perm::subsets(n, p);
    let dst = perm::subsets(n, p + 1);
    let mut m = FieldMatrix::zero(&Field::Rationals, dst.len(), src.len());
    for (c, set) in src.iter().enumerate() {
        for (j, ej) in e.iter().enumerate() {
            if ej.is_zero() || set.contains(&j) {
                continue;
            }
            let before = set.iter().filter(|&&i| i < j).count();
            let mut u = set.clone();
            u.insert(before, j);
            let r = dst.binary_search(&u).unwrap();
            m.data[r][c] += if before % 2 == 0 { ej.clone() } else { -ej.clone() };
        }
    }
    m
}

/// Builds the complex through `Λ^{min(pmax, n)}`; `e` (rescaled so that `s(e) = 1`) supplies the contraction.
pub fn koszul_complex(s: &LineQuotient, pmax: usize, e: Option<&[Rational]>) -> Result<KoszulComplex> {
    let n = s.dim();
    let top = pmax.min(n);
    let dims: Vec<usize> = (0..=top).map(|p| perm::binomial(n, p)).collect();
    let differentials: Vec<FieldMatrix> = (1..=top).map(|p| differential(s, p)).collect();

    // terms in decreasing exterior degree
    let cdims: Vec<usize> = dims.iter().rev().cloned().collect();
    let cmaps: Vec<FieldMatrix> = differentials.iter().rev().cloned().collect();
    let complex = ChainComplex::new(&Field::Rationals, cdims, cmaps)?;
    let h = complex.cohomology_dims();
    // h[0] sits at Λ^top, whose incoming map is not part of the truncation
    let exact = h.iter().enumerate().all(|(i, &x)| x == 0 || (i == 0 && top < n));

    let contraction = match e {
        None => None,
        Some(e) => {
            if e.len() != n {
                return Err(Error::Invalid(format!("e has length {}, expected {n}", e.len())));
            }
            let se = s.apply(e);
            if se.is_zero() {
                return Err(Error::Invalid("s(e) = 0".into()));
            }
            let e: Vec<Rational> = e.iter().map(|x| x / &se).collect();
            let mut ok = true;
            for p in 0..top {
                let dt = differentials[p].mul(&wedge_with(&e, p));
                let td = if p == 0 {
                    FieldMatrix::zero(&Field::Rationals, 1, 1)
                } else {
                    wedge_with(&e, p - 1).mul(&differentials[p - 1])
                };
                ok &= dt.add(&td).add(&FieldMatrix::identity(&Field::Rationals, dims[p])).is_zero();
            }
            Some(ok)
        }
    };

    Ok(KoszulComplex {
        s: s.clone(),
        top,
        dims,
        differentials,
        d_squared_zero: complex.d_squared_zero(),
        complex,
        exact,
        contraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    fn line(v: &[i64]) -> LineQuotient {
        LineQuotient::new(v.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn one_dimensional() {
        let k = koszul_complex(&line(&[1]), 5, None).unwrap();
        assert_eq!(k.dims, vec![1, 1]);
        assert!(k.exact && k.d_squared_zero);
        assert_eq!(k.d(1).data, vec![vec![rat(-1)]]);
    }

    #[test]
    fn contraction_on_coordinate_line() {
        let e = [rat(1), rat(0), rat(0)];
        let k = koszul_complex(&line(&[1, 0, 0]), 3, Some(&e)).unwrap();
        assert_eq!(k.contraction, Some(true));
        assert!(k.passed());
    }

    #[test]
    fn homotopy_sign() {
        // with the differential above, d₂t₁ = id + t₀d₁ already fails on e₁
        let s = line(&[1, 0, 0]);
        let e = [rat(1), rat(0), rat(0)];
        let d1 = differential(&s, 1);
        let d2 = differential(&s, 2);
        let lhs = d2.mul(&wedge_with(&e, 1));
        let rhs = FieldMatrix::identity(&Field::Rationals, 3).add(&wedge_with(&e, 0).mul(&d1));
        assert_ne!(lhs, rhs);
        assert_eq!(lhs.add(&wedge_with(&e, 0).mul(&d1)), FieldMatrix::identity(&Field::Rationals, 3).scale(&rat(-1)));
    }

    #[test]
    fn four_dimensional() {
        let k = koszul_complex(&line(&[2, -1, 0, 3]), 4, Some(&[rat(0), rat(1), rat(0), rat(0)])).unwrap();
        assert_eq!(k.dims, vec![1, 4, 6, 4, 1]);
        for p in 1..4 {
            assert!(k.d(p).mul(k.d(p + 1)).is_zero());
        }
        assert!(k.passed());
    }

    #[test]
    fn truncation_keeps_lower_exactness() {
        let k = koszul_complex(&line(&[1, 1, 1, 1]), 2, None).unwrap();
        assert_eq!(k.top, 2);
        assert!(k.exact);
    }
}
