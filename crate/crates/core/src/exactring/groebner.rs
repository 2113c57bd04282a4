use std::collections::BTreeSet;

use super::poly::{Monomial, Polynomial};

/// Fully reduces `p` modulo `basis` (every term, not just the leading one).
pub fn reduce(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut rem = Polynomial::zero(&p.field, p.nvars);
    let mut cur = p.clone();
    while let Some((m, c)) = cur.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let mut divided = false;
        for g in basis {
            let (lm, lc) = match g.leading() {
                Some(t) => t,
                None => continue,
            };
            if let Some(q) = m.div(lm) {
                let f = cur.field.div(&c, lc).unwrap();
                cur = cur.sub(&g.mul_term(&q, &f));
                divided = true;
                break;
            }
        }
        if !divided {
            rem = rem.add(&Polynomial::term(&p.field, m.clone(), c.clone()));
            cur.terms.remove(&m);
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, cf) = f.leading().unwrap();
    let (mg, cg) = g.leading().unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).unwrap(), &f.field.inv(cf).unwrap());
    let b = g.mul_term(&l.div(mg).unwrap(), &g.field.inv(cg).unwrap());
    a.sub(&b)
}

/// Reduced Gröbner basis under degrevlex, sorted by decreasing leading monomial.
///
/// Buchberger with the normal selection strategy (smallest lcm first) and the coprime
/// leading-term criterion, followed by full autoreduction.
pub fn groebner_basis(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if basis.is_empty() {
        return basis;
    }
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((lcm_of(&basis[i], &basis[j]), i, j));
        }
    }
    while let Some(pair) = pairs.iter().next().cloned() {
        pairs.remove(&pair);
        let (_, i, j) = pair;
        let (li, lj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if li.coprime(lj) {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let k = basis.len();
        basis.push(r);
        for i in 0..k {
            pairs.insert((lcm_of(&basis[i], &basis[k]), i, k));
        }
    }
    autoreduce(basis)
}

fn lcm_of(a: &Polynomial, b: &Polynomial) -> Monomial {
    a.leading_monomial().unwrap().lcm(b.leading_monomial().unwrap())
}

fn autoreduce(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop elements whose leading monomial is divisible by another's
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap().clone();
        if minimal.iter().any(|h| h.leading_monomial().unwrap().divides(&lm)) {
            continue;
        }
        minimal.push(g);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let g = &minimal[i];
        let (lm, lc) = g.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut tail = g.clone();
        tail.terms.remove(&lm);
        let mut r = reduce(&tail, &others);
        r.terms.insert(lm, lc);
        out.push(r.monic());
    }
    out.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    out
}

/// Standard monomials (not divisible by any leading monomial) when the quotient is finite-dimensional.
pub fn standard_monomials(basis: &[Polynomial], nvars: usize) -> Option<Vec<Monomial>> {
    let leads: Vec<&Monomial> = basis.iter().filter_map(|g| g.leading_monomial()).collect();
    if leads.iter().any(|m| m.degree() == 0) {
        return Some(Vec::new());
    }
    let mut bounds = vec![0u32; nvars];
    for (i, b) in bounds.iter_mut().enumerate() {
        let pure = leads
            .iter()
            .filter(|m| m.0.iter().enumerate().all(|(j, e)| j == i || *e == 0))
            .map(|m| m.0[i])
            .min()?;
        *b = pure;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    loop {
        let m = Monomial(cur.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut k = 0;
        loop {
            if k == nvars {
                out.sort();
                return Some(out);
            }
            cur[k] += 1;
            if cur[k] < bounds[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

pub fn in_ideal(p: &Polynomial, basis: &[Polynomial]) -> bool {
    reduce(p, basis).is_zero()
}

#[cfg(test)]
fn leading_coefficient_is_one(p: &Polynomial) -> bool {
    use num_traits::One;
    p.leading().map(|(_, c)| c.is_one()).unwrap_or(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::field::Field;

    fn xy() -> (Polynomial, Polynomial, Polynomial) {
        let q = Field::Rationals;
        (Polynomial::var(&q, 2, 0), Polynomial::var(&q, 2, 1), Polynomial::one(&q, 2))
    }

    #[test]
    fn linear_system_reduces_to_points() {
        let (x, y, one) = xy();
        let gb = groebner_basis(&[x.sub(&y), y.sub(&one)]);
        assert_eq!(gb, vec![x.sub(&one), y.sub(&one)]);
    }

    #[test]
    fn zero_ideal_and_single_generator() {
        assert!(groebner_basis(&[]).is_empty());
        let q = Field::Rationals;
        let x = Polynomial::var(&q, 1, 0);
        let g = x.pow(2).sub(&Polynomial::one(&q, 1));
        assert_eq!(groebner_basis(&[g.clone()]), vec![g]);
    }

    #[test]
    fn twisted_cubic_style_basis_contains_generators() {
        let (x, y, _) = xy();
        let gens = vec![x.pow(2).sub(&y), x.mul(&y).sub(&x)];
        let gb = groebner_basis(&gens);
        for g in &gens {
            assert!(in_ideal(g, &gb));
        }
        for g in &gb {
            assert!(leading_coefficient_is_one(g));
        }
    }

    #[test]
    fn standard_monomials_of_artinian_quotient() {
        let (x, y, _) = xy();
        let gb = groebner_basis(&[x.pow(2), y.pow(2)]);
        let sm = standard_monomials(&gb, 2).unwrap();
        assert_eq!(sm.len(), 4);
        assert!(standard_monomials(&groebner_basis(&[x.pow(2)]), 2).is_none());
    }
}
