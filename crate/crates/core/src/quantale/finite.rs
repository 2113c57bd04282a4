use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::Quantale;
use crate::error::{Error, Result};

/// Finite quantale on `0..n` given by its join and product tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteQuantale {
    pub labels: Vec<String>,
    pub join: Vec<Vec<usize>>,
    pub product: Vec<Vec<usize>>,
    pub unit: usize,
    #[serde(skip)]
    bottom: usize,
}

impl FiniteQuantale {
    /// Validates lattice, monoid and distributivity laws on all triples.
    pub fn new(labels: Vec<String>, join: Vec<Vec<usize>>, product: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Invalid("a quantale has at least a bottom element".into()));
        }
        let square = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n));
        if !square(&join) || !square(&product) || unit >= n {
            return Err(Error::Invalid(format!("tables must be {n}×{n} over 0..{n}")));
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| join[b][x] == x))
            .ok_or_else(|| Error::Invalid("join has no bottom element".into()))?;
        let q = FiniteQuantale { labels, join, product, unit, bottom };
        for x in 0..n {
            if q.join[x][x] != x {
                return Err(Error::Invalid(format!("join is not idempotent at {}", q.labels[x])));
            }
            for y in 0..n {
                if q.join[x][y] != q.join[y][x] {
                    return Err(Error::Invalid(format!("join is not commutative at {}, {}", q.labels[x], q.labels[y])));
                }
                for z in 0..n {
                    if q.join[x][q.join[y][z]] != q.join[q.join[x][y]][z] {
                        return Err(Error::Invalid("join is not associative".into()));
                    }
                }
            }
        }
        let all: Vec<usize> = (0..n).collect();
        if let Some(w) = super::check_axioms(&q, &all).witness {
            return Err(Error::Invalid(w));
        }
        Ok(q)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    fn from_fns(labels: Vec<String>, join: impl Fn(usize, usize) -> usize, mul: impl Fn(usize, usize) -> usize, unit: usize) -> Result<Self> {
        let n = labels.len();
        let join = (0..n).map(|x| (0..n).map(|y| join(x, y)).collect()).collect();
        let product = (0..n).map(|x| (0..n).map(|y| mul(x, y)).collect()).collect();
        Self::new(labels, join, product, unit)
    }

    /// The chain `0 < 1 < … < n−1` with truncated addition `x·y = max(0, x + y − (n−1))`.
    pub fn lukasiewicz(n: usize) -> Result<Self> {
        let top = n.saturating_sub(1);
        Self::from_fns((0..n).map(|x| x.to_string()).collect(), |x, y| x.max(y), |x, y| (x + y).saturating_sub(top), top)
    }

    /// Subsets of a `k`-element set with union and intersection.
    pub fn powerset_frame(k: usize) -> Result<Self> {
        let labels = (0..1usize << k).map(|m| format!("{m:0k$b}")).collect();
        Self::from_fns(labels, |x, y| x | y, |x, y| x & y, (1 << k) - 1)
    }

    /// Ideals of ℤ/n, one per divisor `d` of `n`: sum is gcd, product is `gcd(de, n)`.
    pub fn ideals_mod(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("modulus must be positive".into()));
        }
        let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        let idx = |d: u64| divs.iter().position(|&e| e == d).expect("divisor");
        Self::from_fns(
            divs.iter().map(|d| format!("({d})")).collect(),
            |x, y| idx(divs[x].gcd(&divs[y])),
            |x, y| idx((divs[x] * divs[y]).gcd(&n)),
            idx(1),
        )
    }

    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Lit {
            labels: Vec<String>,
            join: Vec<Vec<usize>>,
            product: Vec<Vec<usize>>,
            unit: usize,
        }
        let l: Lit = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(l.labels, l.join, l.product, l.unit)
    }
}

impl Quantale for FiniteQuantale {
    type Elem = usize;
    fn bottom(&self) -> usize {
        self.bottom
    }
    fn unit(&self) -> usize {
        self.unit
    }
    fn sup(&self, a: &usize, b: &usize) -> usize {
        self.join[*a][*b]
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.product[*a][*b]
    }
    fn le(&self, a: &usize, b: &usize) -> bool {
        self.join[*a][*b] == *b
    }
    /// Join of every `z` with `z·a ≤ b`, found by scan.
    fn residual(&self, b: &usize, a: &usize) -> usize {
        (0..self.size()).filter(|z| self.le(&self.product[*z][*a], b)).fold(self.bottom, |acc, z| self.join[acc][z])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_validate() {
        for q in [
            FiniteQuantale::lukasiewicz(4).unwrap(),
            FiniteQuantale::powerset_frame(2).unwrap(),
            FiniteQuantale::ideals_mod(12).unwrap(),
            FiniteQuantale::ideals_mod(1).unwrap(),
        ] {
            let n = q.size();
            for a in 0..n {
                for b in 0..n {
                    let r = q.residual(&b, &a);
                    assert!(q.le(&q.mul(&r, &a), &b));
                    for z in 0..n {
                        assert_eq!(q.le(&q.mul(&z, &a), &b), q.le(&z, &r));
                    }
                }
                assert_eq!(q.residual(&a, &q.unit), a);
            }
        }
    }

    #[test]
    fn ideals_of_z12() {
        let q = FiniteQuantale::ideals_mod(12).unwrap();
        assert_eq!(q.size(), 6);
        let find = |l: &str| q.labels.iter().position(|x| x == l).unwrap();
        // [(6) : (4)] = (3) already in ℤ/12
        assert_eq!(q.residual(&find("(6)"), &find("(4)")), find("(3)"));
        assert_eq!(q.mul(&find("(2)"), &find("(6)")), find("(12)"));
    }

    #[test]
    fn rejects_bad_tables() {
        // product that does not distribute over join
        let labels = vec!["0".to_string(), "1".into(), "2".into()];
        let join = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]];
        let product = vec![vec![0, 0, 0], vec![0, 2, 1], vec![0, 1, 2]];
        assert!(FiniteQuantale::new(labels, join, product, 2).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let q = FiniteQuantale::lukasiewicz(3).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(FiniteQuantale::from_json(&s).unwrap(), q);
    }
}
