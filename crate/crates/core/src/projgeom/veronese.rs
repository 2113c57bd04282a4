use num_traits::{One, Zero};
use serde::Serialize;

use super::{cokernel_matrix, proportional, LineQuotient, Quadric, QuadricSet};
use crate::error::{Error, Result};
use crate::exactring::{Field, Monomial, Polynomial, Rational};
use crate::perm;

/// Degree-`d` monomials in `n` variables as sorted index multisets, in lexicographic order.
pub fn veronese_coordinates(n: usize, d: usize) -> Vec<Vec<usize>> {
    perm::multisets(n, d)
}

fn check(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 {
        return Err(Error::Invalid("Veronese needs n ≥ 1 and d ≥ 1".into()));
    }
    Ok(())
}

/// `t(v₁v₂…v_d)t(w₁w₂…w_d) − t(w₁v₂…v_d)t(v₁w₂…w_d)` over all exchanges of one factor.
pub fn veronese_relations(n: usize, d: usize) -> Result<QuadricSet> {
    check(n, d)?;
    let mono = veronese_coordinates(n, d);
    let idx = |m: &mut Vec<usize>| {
        m.sort();
        mono.binary_search(m).unwrap()
    };
    let mut gen = Vec::new();
    for (a, v) in mono.iter().enumerate() {
        for (b, w) in mono.iter().enumerate().skip(a) {
            for i in 0..d {
                for j in 0..d {
                    let (mut v2, mut w2) = (v.clone(), w.clone());
                    v2[i] = w[j];
                    w2[j] = v[i];
                    let mut q = Quadric::new();
                    q.add_term(a, b, Rational::one());
                    q.add_term(idx(&mut v2), idx(&mut w2), -Rational::one());
                    gen.push(q);
                }
            }
        }
    }
    let coords = (0..mono.len()).map(|i| format!("t{i}")).collect();
    Ok(QuadricSet::from_generated(coords, gen))
}

/// `t_M ↦ x^M`.
pub fn veronese_images(n: usize, d: usize) -> Vec<Polynomial> {
    veronese_coordinates(n, d)
        .into_iter()
        .map(|m| {
            let mut e = vec![0u32; n];
            for i in m {
                e[i] += 1;
            }
            Polynomial::term(&Field::Rationals, Monomial(e), Rational::one())
        })
        .collect()
}

/// `Sym^d(s)` on the monomial basis.
pub fn veronese_forward(s: &LineQuotient, d: usize) -> LineQuotient {
    let s_of = |m: &Vec<usize>| m.iter().map(|&i| s.s[i].clone()).product::<Rational>();
    LineQuotient { s: veronese_coordinates(s.dim(), d).iter().map(s_of).collect() }
}

/// The coequalizer of `w₁ ⊗ t(v₁v₂…v_d)` and `v₁ ⊗ t(w₁v₂…v_d)`, a covector on `k^n`.
pub fn veronese_backward(n: usize, d: usize, t: &LineQuotient) -> Result<LineQuotient> {
    let mono = veronese_coordinates(n, d);
    if t.dim() != mono.len() {
        return Err(Error::Invalid(format!("expected {} coordinates, found {}", mono.len(), t.dim())));
    }
    let rel = veronese_relations(n, d)?;
    if let Some(&k) = rel.violations(&t.s).first() {
        return Err(Error::Invalid(format!("violates the Veronese relation {}", rel.quadrics[k].display(&rel.coords))));
    }
    let t_of = |first: usize, rest: &[usize]| {
        let mut m = rest.to_vec();
        m.push(first);
        m.sort();
        t.s[mono.binary_search(&m).unwrap()].clone()
    };
    let mut rels = Vec::new();
    for rest in perm::multisets(n, d - 1) {
        for w in 0..n {
            for v in 0..n {
                let mut r = vec![Rational::zero(); n];
                r[w] += t_of(v, &rest);
                r[v] -= t_of(w, &rest);
                rels.push(r);
            }
        }
    }
    let c = cokernel_matrix(n, &rels);
    if c.rows != 1 {
        return Err(Error::Internal("coequalizer is not one-dimensional".into()));
    }
    let s = LineQuotient::new(c.data[0].clone())?;
    if !proportional(&veronese_forward(&s, d).s, &t.s) {
        return Err(Error::Internal("Sym^d of the coequalizer is not proportional to t".into()));
    }
    Ok(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct VeroneseRoundtrip {
    pub s: LineQuotient,
    pub d: usize,
    pub t: LineQuotient,
    pub relations_hold: bool,
    pub recovered: LineQuotient,
    /// `Sym^d(s') ∝ t`.
    pub power_matches: bool,
    pub recovered_matches: bool,
}

impl VeroneseRoundtrip {
    pub fn passed(&self) -> bool {
        self.relations_hold && self.power_matches && self.recovered_matches
    }
}

pub fn veronese_roundtrip(s: &LineQuotient, d: usize) -> Result<VeroneseRoundtrip> {
    check(s.dim(), d)?;
    let t = veronese_forward(s, d);
    let relations_hold = veronese_relations(s.dim(), d)?.satisfied_by(&t.s);
    let recovered = veronese_backward(s.dim(), d, &t)?;
    Ok(VeroneseRoundtrip {
        power_matches: proportional(&veronese_forward(&recovered, d).s, &t.s),
        recovered_matches: proportional(&recovered.s, &s.s),
        s: s.clone(),
        d,
        t,
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
    fn conic() {
        let r = veronese_relations(2, 2).unwrap();
        assert_eq!(r.display(), vec!["t0*t2 - t1^2"]);
        let k = compare_with_kernel(&r, &veronese_images(2, 2));
        assert_eq!(k.kernel_dim, 1);
        assert!(k.equal);
    }

    #[test]
    fn completeness_small() {
        for (n, d) in [(3, 2), (2, 3), (3, 3), (4, 2), (2, 4)] {
            let r = veronese_relations(n, d).unwrap();
            assert!(compare_with_kernel(&r, &veronese_images(n, d)).equal, "{n} {d}");
        }
    }

    #[test]
    fn linear_case() {
        assert!(veronese_relations(3, 1).unwrap().is_empty());
        let r = veronese_roundtrip(&line(&[2, 0, -1]), 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.t, line(&[2, 0, -1]));
    }

    #[test]
    fn round_trips() {
        let r = veronese_roundtrip(&line(&[1, 1]), 2).unwrap();
        assert_eq!(r.t, line(&[1, 1, 1]));
        assert!(r.passed());
        assert!(veronese_roundtrip(&line(&[0, 3, -2]), 3).unwrap().passed());
    }

    #[test]
    fn rejects_violation() {
        assert!(veronese_backward(2, 2, &line(&[1, 0, 1])).is_err());
    }
}
