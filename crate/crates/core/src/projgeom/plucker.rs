use num_traits::{One, Zero};
use serde::Serialize;

use super::{cokernel_matrix, proportional, LineQuotient, Quadric, QuadricSet, RankDQuotient};
use crate::error::{Error, Result};
use crate::exactring::{rational_to_string, Field, Polynomial, Rational};
use crate::linalg::FieldMatrix;
use crate::perm;

fn check(n: usize, d: usize) -> Result<()> {
    if d == 0 || d > n {
        return Err(Error::Invalid(format!("Plücker needs 1 ≤ d ≤ n, got d = {d}, n = {n}")));
    }
    Ok(())
}

pub fn coordinate_names(n: usize, d: usize) -> Vec<String> {
    let sep = if n >= 10 { "," } else { "" };
    perm::subsets(n, d)
        .into_iter()
        .map(|s| format!("X{}", s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(sep)))
        .collect()
}

/// `(sign, index)` of `X_{i₁…i_d}` for an arbitrary tuple, `None` on a repeat.
fn signed_index(subsets: &[Vec<usize>], t: &[usize]) -> Option<(i64, usize)> {
    let (sign, sorted) = perm::sort_with_sign(t);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, subsets.binary_search(&sorted).unwrap()))
}

/// `Σ_k (−1)^k X_{a₁…a_{d−1}b_k} X_{b₀…b̂_k…b_d}` for every `(d−1)`-subset `a` and `(d+1)`-subset `b`.
pub fn plucker_relations(n: usize, d: usize) -> Result<QuadricSet> {
    check(n, d)?;
    let coords = perm::subsets(n, d);
    let mut gen = Vec::new();
    for a in perm::subsets(n, d - 1) {
        for b in perm::subsets(n, d + 1) {
            let mut q = Quadric::new();
            for k in 0..=d {
                let mut left = a.clone();
                left.push(b[k]);
                let mut right = b.clone();
                right.remove(k);
                if let (Some((s1, i)), Some((s2, j))) = (signed_index(&coords, &left), signed_index(&coords, &right)) {
                    let sign = if k % 2 == 0 { s1 * s2 } else { -s1 * s2 };
                    q.add_term(i, j, Rational::from_integer(sign.into()));
                }
            }
            gen.push(q);
        }
    }
    Ok(QuadricSet::from_generated(coordinate_names(n, d), gen))
}

/// `X_I ↦ det(z_{r,i})_{r<d, i∈I}` over the generic `d × n` matrix `z`.
pub fn plucker_images(n: usize, d: usize) -> Vec<Polynomial> {
    let q = Field::Rationals;
    let nv = d * n;
    perm::subsets(n, d)
        .into_iter()
        .map(|cols| {
            let mut det = Polynomial::zero(&q, nv);
            for p in perm::all(d) {
                let mut term = Polynomial::constant(&q, nv, Rational::from_integer(perm::sign(&p).into()));
                for r in 0..d {
                    term = term.mul(&Polynomial::var(&q, nv, r * n + cols[p[r]]));
                }
                det = det.add(&term);
            }
            det
        })
        .collect()
}

/// `d × d` minors of `t` over column subsets in lexicographic order.
pub fn minors(t: &FieldMatrix) -> Vec<Rational> {
    perm::subsets(t.cols, t.rows)
        .into_iter()
        .map(|cols| {
            let sub: Vec<Vec<Rational>> = t.data.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
            FieldMatrix::from_rows(&t.field, sub).det()
        })
        .collect()
}

/// `Λ^d(t)`.
pub fn plucker_coordinates(t: &RankDQuotient) -> LineQuotient {
    LineQuotient { s: minors(&t.t) }
}

/// Cokernel of `Λ^{d+1}E → E`, `a₀∧…∧a_d ↦ Σ_k (−1)^k s(a₀∧…â_k…∧a_d) a_k`, on pivot-complement coordinates.
pub fn plucker_backward(n: usize, d: usize, s: &LineQuotient) -> Result<RankDQuotient> {
    check(n, d)?;
    let coords = perm::subsets(n, d);
    if s.dim() != coords.len() {
        return Err(Error::Invalid(format!("expected {} coordinates, found {}", coords.len(), s.dim())));
    }
    let rel = plucker_relations(n, d)?;
    if let Some(&k) = rel.violations(&s.s).first() {
        return Err(Error::Invalid(format!("violates the Plücker relation {}", rel.quadrics[k].display(&rel.coords))));
    }
    let mut rels = Vec::new();
    for a in perm::subsets(n, d + 1) {
        let mut v = vec![Rational::zero(); n];
        for k in 0..=d {
            let mut rest = a.clone();
            rest.remove(k);
            let c = &s.s[coords.binary_search(&rest).unwrap()];
            if k % 2 == 0 {
                v[a[k]] += c;
            } else {
                v[a[k]] -= c;
            }
        }
        rels.push(v);
    }
    let t = cokernel_matrix(n, &rels);
    if t.rows != d {
        return Err(Error::Internal(format!("cokernel has dimension {}, expected {d}", t.rows)));
    }
    if !proportional(&minors(&t), &s.s) {
        return Err(Error::Internal("Λ^d of the cokernel is not proportional to s".into()));
    }
    Ok(RankDQuotient { t })
}

#[derive(Clone, Debug, Serialize)]
pub struct PluckerRoundtrip {
    pub n: usize,
    pub d: usize,
    pub t: Vec<Vec<String>>,
    pub coordinates: LineQuotient,
    pub relations_hold: bool,
    pub recovered: Vec<Vec<String>>,
    pub recovered_rank: usize,
    /// `Λ^d(t') ∝ s`.
    pub minors_match: bool,
    pub row_space_matches: bool,
}

impl PluckerRoundtrip {
    pub fn passed(&self) -> bool {
        self.relations_hold && self.recovered_rank == self.d && self.minors_match && self.row_space_matches
    }
}

fn show(m: &FieldMatrix) -> Vec<Vec<String>> {
    m.data.iter().map(|r| r.iter().map(rational_to_string).collect()).collect()
}

pub fn plucker_roundtrip(t: &RankDQuotient) -> Result<PluckerRoundtrip> {
    let (n, d) = (t.n(), t.d());
    check(n, d)?;
    let s = LineQuotient::new(minors(&t.t))?;
    let relations_hold = plucker_relations(n, d)?.satisfied_by(&s.s);
    let back = plucker_backward(n, d, &s)?;
    Ok(PluckerRoundtrip {
        n,
        d,
        t: show(&t.t),
        relations_hold,
        recovered: show(&back.t),
        recovered_rank: back.t.rank(),
        minors_match: proportional(&minors(&back.t), &s.s),
        row_space_matches: back.t.rref().0 == t.t.rref().0,
        coordinates: s,
    })
}

impl RankDQuotient {
    pub fn projection(n: usize, d: usize) -> Self {
        let mut t = FieldMatrix::zero(&Field::Rationals, d, n);
        for i in 0..d {
            t.data[i][i] = Rational::one();
        }
        RankDQuotient { t }
    }
}

#[cfg(test)]
mod tests {
    use super::super::compare_with_kernel;
    use super::*;
    use crate::exactring::rat;

    #[test]
    fn lines_in_three_space() {
        let r = plucker_relations(4, 2).unwrap();
        assert_eq!(r.display(), vec!["X12*X34 - X13*X24 + X14*X23"]);
    }

    #[test]
    fn projective_space_has_no_relations() {
        assert!(plucker_relations(5, 1).unwrap().is_empty());
        assert!(plucker_relations(3, 3).unwrap().is_empty());
    }

    #[test]
    fn kernel_completeness() {
        let r = plucker_relations(5, 2).unwrap();
        assert_eq!(r.len(), 5);
        assert!(compare_with_kernel(&r, &plucker_images(5, 2)).equal);
        for (n, d) in [(4, 2), (4, 3), (4, 1), (3, 2)] {
            assert!(compare_with_kernel(&plucker_relations(n, d).unwrap(), &plucker_images(n, d)).equal, "{n} {d}");
        }
    }

    #[test]
    fn projection_round_trip() {
        let t = RankDQuotient::projection(4, 2);
        let r = plucker_roundtrip(&t).unwrap();
        assert_eq!(r.coordinates.s, vec![rat(1), rat(0), rat(0), rat(0), rat(0), rat(0)]);
        assert!(r.passed());
    }

    #[test]
    fn generic_round_trip() {
        let t = RankDQuotient::new(vec![
            vec![rat(1), rat(2), rat(-1), rat(3)],
            vec![rat(0), rat(5), rat(4), rat(-2)],
        ])
        .unwrap();
        assert!(plucker_roundtrip(&t).unwrap().passed());
    }

    #[test]
    fn rejects_violation() {
        // X12 = X34 = 1
        let s = LineQuotient::new(vec![rat(1), rat(0), rat(0), rat(0), rat(0), rat(1)]).unwrap();
        let err = plucker_backward(4, 2, &s).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }
}
