use num_traits::{One, Zero};
use serde::Serialize;

use super::{cokernel_matrix, proportional, LineQuotient, Quadric, QuadricSet};
use crate::error::{Error, Result};
use crate::exactring::{Field, Polynomial, Rational};

fn coord_name(a: usize, b: usize, wide: bool) -> String {
    if wide {
        format!("x{a}_{b}")
    } else {
        format!("x{a}{b}")
    }
}

/// `x_{ab}x_{cd} − x_{ad}x_{cb}` over `k^{n₁} ⊗ k^{n₂}`, coordinate `x_{ab}` at index `a·n₂ + b`.
pub fn segre_relations(n1: usize, n2: usize) -> Result<QuadricSet> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::Invalid("Segre factors must be nonzero".into()));
    }
    let wide = n1 > 10 || n2 > 10;
    let coords = (0..n1).flat_map(|a| (0..n2).map(move |b| coord_name(a, b, wide))).collect();
    let x = |a: usize, b: usize| a * n2 + b;
    let mut gen = Vec::new();
    for a in 0..n1 {
        for c in 0..n1 {
            for b in 0..n2 {
                for d in 0..n2 {
                    let mut q = Quadric::new();
                    q.add_term(x(a, b), x(c, d), Rational::one());
                    q.add_term(x(a, d), x(c, b), -Rational::one());
                    gen.push(q);
                }
            }
        }
    }
    Ok(QuadricSet::from_generated(coords, gen))
}

/// `x_{ab} ↦ u_a v_b`.
pub fn segre_images(n1: usize, n2: usize) -> Vec<Polynomial> {
    let q = Field::Rationals;
    let nv = n1 + n2;
    (0..n1)
        .flat_map(|a| (0..n2).map(move |b| (a, b)))
        .map(|(a, b)| Polynomial::var(&q, nv, a).mul(&Polynomial::var(&q, nv, n1 + b)))
        .collect()
}

pub fn segre_forward(s1: &LineQuotient, s2: &LineQuotient) -> LineQuotient {
    LineQuotient { s: s1.s.iter().flat_map(|a| s2.s.iter().map(move |b| a * b)).collect() }
}

/// Recovers `(s₁, s₂)` with `s₁ ⊗ s₂ = s` from the coequalizers of
/// `a ⊗ s(c⊗b)` and `c ⊗ s(a⊗b)` (and symmetrically in the second factor).
pub fn segre_backward(n1: usize, n2: usize, s: &LineQuotient) -> Result<(LineQuotient, LineQuotient)> {
    if s.dim() != n1 * n2 {
        return Err(Error::Invalid(format!("expected {} coordinates, found {}", n1 * n2, s.dim())));
    }
    let rel = segre_relations(n1, n2)?;
    if let Some(&k) = rel.violations(&s.s).first() {
        return Err(Error::Invalid(format!("violates the Segre relation {}", rel.quadrics[k].display(&rel.coords))));
    }
    let at = |a: usize, b: usize| &s.s[a * n2 + b];
    let unit = |n: usize, i: usize| {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    };
    let combo = |n: usize, i: usize, ci: &Rational, j: usize, cj: &Rational| {
        let mut v = unit(n, i).into_iter().map(|x| x * ci).collect::<Vec<_>>();
        v[j] -= cj;
        v
    };
    let mut r1 = Vec::new();
    for a in 0..n1 {
        for c in 0..n1 {
            for b in 0..n2 {
                r1.push(combo(n1, a, at(c, b), c, at(a, b)));
            }
        }
    }
    let mut r2 = Vec::new();
    for b in 0..n2 {
        for d in 0..n2 {
            for a in 0..n1 {
                r2.push(combo(n2, b, at(a, d), d, at(a, b)));
            }
        }
    }
    let c1 = cokernel_matrix(n1, &r1);
    let c2 = cokernel_matrix(n2, &r2);
    if c1.rows != 1 || c2.rows != 1 {
        return Err(Error::Internal("coequalizer is not one-dimensional".into()));
    }
    let s1 = LineQuotient::new(c1.data[0].clone())?;
    let s2 = LineQuotient::new(c2.data[0].clone())?;
    let t = segre_forward(&s1, &s2);
    let i = s.s.iter().position(|x| !x.is_zero()).unwrap();
    let lambda = &s.s[i] / &t.s[i];
    let s1 = LineQuotient { s: s1.s.iter().map(|x| x * &lambda).collect() };
    if segre_forward(&s1, &s2) != *s {
        return Err(Error::Internal("reconstructed factors do not multiply back".into()));
    }
    Ok((s1, s2))
}

#[derive(Clone, Debug, Serialize)]
pub struct SegreRoundtrip {
    pub s1: LineQuotient,
    pub s2: LineQuotient,
    pub s: LineQuotient,
    pub relations_hold: bool,
    pub recovered: (LineQuotient, LineQuotient),
    /// `s₁' ⊗ s₂' = s` exactly.
    pub tensor_matches: bool,
    /// `s₁' ∝ s₁` and `s₂' ∝ s₂`.
    pub factors_match: bool,
}

impl SegreRoundtrip {
    pub fn passed(&self) -> bool {
        self.relations_hold && self.tensor_matches && self.factors_match
    }
}

pub fn segre_roundtrip(s1: &LineQuotient, s2: &LineQuotient) -> Result<SegreRoundtrip> {
    let s = segre_forward(s1, s2);
    let relations_hold = segre_relations(s1.dim(), s2.dim())?.satisfied_by(&s.s);
    let recovered = segre_backward(s1.dim(), s2.dim(), &s)?;
    Ok(SegreRoundtrip {
        tensor_matches: segre_forward(&recovered.0, &recovered.1) == s,
        factors_match: proportional(&recovered.0.s, &s1.s) && proportional(&recovered.1.s, &s2.s),
        s1: s1.clone(),
        s2: s2.clone(),
        s,
        relations_hold,
        recovered,
    })
}

#[cfg(test)]
mod tests {
    use super::super::compare_with_kernel;
    use super::*;
    use crate::exactring::rat;

    fn line(v: &[i64]) -> LineQuotient {
        LineQuotient::new(v.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn two_by_two() {
        let r = segre_relations(2, 2).unwrap();
        assert_eq!(r.display(), vec!["x00*x11 - x01*x10"]);
    }

    #[test]
    fn degenerate_and_kernel() {
        assert!(segre_relations(1, 4).unwrap().is_empty());
        let r = segre_relations(2, 3).unwrap();
        assert_eq!(r.len(), 3);
        let k = compare_with_kernel(&r, &segre_images(2, 3));
        assert_eq!(k.kernel_dim, 3);
        assert!(k.equal);
        for (a, b) in [(3, 3), (2, 4), (3, 4)] {
            assert!(compare_with_kernel(&segre_relations(a, b).unwrap(), &segre_images(a, b)).equal);
        }
    }

    #[test]
    fn round_trips() {
        let r = segre_roundtrip(&line(&[1, 0]), &line(&[1, 0])).unwrap();
        assert_eq!(r.s, line(&[1, 0, 0, 0]));
        assert!(r.passed());
        assert_eq!(r.recovered.0.normalized(), vec![rat(1), rat(0)]);
        assert!(segre_roundtrip(&line(&[3, -2, 5]), &line(&[0, 7])).unwrap().passed());
    }

    #[test]
    fn rejects_violation() {
        assert!(segre_backward(2, 2, &line(&[1, 0, 0, 1])).is_err());
    }
}
