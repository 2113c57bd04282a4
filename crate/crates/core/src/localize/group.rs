use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::smith_decompose;

/// Finitely generated abelian group `ℤ/d₁ ⊕ … ⊕ ℤ/d_r`, `d₁ | d₂ | …`, with `0` for each free summand
/// (zeros last) and no unit factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FgAbGroup {
    pub factors: Vec<u64>,
}

impl FgAbGroup {
    /// Canonical form of `⊕ ℤ/cᵢ` (`cᵢ = 0` for ℤ) by Smith normal form of the relation matrix.
    pub fn from_cyclic(orders: &[u64]) -> Self {
        let r = orders.len();
        let rel: Vec<Vec<BigInt>> =
            (0..r).map(|i| (0..r).map(|j| BigInt::from(if i == j { orders[i] } else { 0 })).collect()).collect();
        Self::from_relations(r, &rel)
    }

    /// `ℤ^gens / (columns of rel)`, with `rel` a `gens × k` matrix.
    pub fn from_relations(gens: usize, rel: &[Vec<BigInt>]) -> Self {
        let cols = rel.first().map_or(0, Vec::len);
        let s = smith_decompose(&rel.to_vec(), gens, cols);
        let factors = s.cokernel_factors().iter().map(|d| d.abs().to_u64().expect("invariant factor fits u64")).collect();
        FgAbGroup { factors }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { factors: vec![0; rank] }
    }

    pub fn trivial() -> Self {
        FgAbGroup { factors: Vec::new() }
    }

    /// `"12"`, `"0,2"`, `"2,4,0"`; empty or `"trivial"` for `0`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "trivial" {
            return Ok(Self::trivial());
        }
        let orders = s
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad cyclic order {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_cyclic(&orders))
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|&&d| d == 0).count()
    }

    pub fn torsion(&self) -> Vec<u64> {
        self.factors.iter().copied().filter(|&d| d != 0).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank() == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.factors.iter().product())
    }

    pub fn torsion_free_part(&self) -> Self {
        Self::free(self.rank())
    }

    /// Multiplication by `a` is injective iff `a` is coprime to every torsion factor.
    pub fn mul_injective(&self, a: u64) -> bool {
        if a == 0 {
            return self.is_trivial();
        }
        self.torsion().iter().all(|d| d.gcd(&a) == 1)
    }

    /// Elements of the finite group as coordinate vectors.
    pub fn elements(&self) -> Option<Vec<Vec<u64>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &d in &self.factors {
            out = out.into_iter().flat_map(|v| (0..d).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        Some(out)
    }

    /// Every abelian group of order `n`, one per partition of each prime exponent.
    pub fn of_order(n: u64) -> Vec<Self> {
        if n == 0 {
            return Vec::new();
        }
        let mut out = vec![Vec::new()];
        for (p, e) in factorize(n) {
            let mut next = Vec::new();
            for part in partitions(e as usize) {
                for base in &out {
                    let mut v: Vec<u64> = base.clone();
                    v.extend(part.iter().map(|&k| p.pow(k as u32)));
                    next.push(v);
                }
            }
            out = next;
        }
        let mut groups: Vec<Self> = out.iter().map(|v| Self::from_cyclic(v)).collect();
        groups.sort();
        groups.dedup();
        groups
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|&d| if d == 0 { "Z".into() } else { format!("Z/{d}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A homomorphism from a group with canonical generators, as generator images in the target's torsion coordinates.
pub type HomImages = Vec<Vec<u64>>;

/// All homomorphisms `M → N` into the finite group `N`: generator `eᵢ` of order `dᵢ` goes to any `y` with `dᵢy = 0`.
pub fn homs_to_finite(m: &FgAbGroup, n: &FgAbGroup) -> Result<Vec<HomImages>> {
    let elems = n.elements().ok_or_else(|| Error::Invalid(format!("{n} is not finite")))?;
    let mut out: Vec<HomImages> = vec![Vec::new()];
    for &d in &m.factors {
        let allowed: Vec<&Vec<u64>> = elems
            .iter()
            .filter(|y| n.factors.iter().zip(y.iter()).all(|(&nj, &yj)| (d as u128 * yj as u128) % nj as u128 == 0))
            .collect();
        out = out.into_iter().flat_map(|h| allowed.iter().map(move |y| [h.clone(), vec![(*y).clone()]].concat())).collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(FgAbGroup::from_cyclic(&[2, 3]).factors, vec![6]);
        assert_eq!(FgAbGroup::from_cyclic(&[0, 4, 6]).factors, vec![2, 12, 0]);
        assert_eq!(FgAbGroup::from_cyclic(&[1, 1]).factors, Vec::<u64>::new());
        assert_eq!(FgAbGroup::parse("0,2").unwrap().to_string(), "Z/2 + Z");
    }

    #[test]
    fn groups_of_small_order() {
        let counts: Vec<usize> = (1..=16).map(|n| FgAbGroup::of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        assert!(FgAbGroup::of_order(12).iter().all(|g| g.order() == Some(12)));
    }

    #[test]
    fn hom_counts() {
        // |Hom(ℤ/m, ℤ/n)| = gcd(m, n)
        for m in 1..8u64 {
            for n in 1..8u64 {
                let h = homs_to_finite(&FgAbGroup::from_cyclic(&[m]), &FgAbGroup::from_cyclic(&[n])).unwrap();
                assert_eq!(h.len() as u64, m.gcd(&n));
            }
        }
        let h = homs_to_finite(&FgAbGroup::free(2), &FgAbGroup::from_cyclic(&[3])).unwrap();
        assert_eq!(h.len(), 9);
    }

    #[test]
    fn injectivity() {
        let g = FgAbGroup::parse("0,9").unwrap();
        assert!(g.mul_injective(2));
        assert!(!g.mul_injective(3));
        assert!(FgAbGroup::free(3).mul_injective(5));
    }
}
