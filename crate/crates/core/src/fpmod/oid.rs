use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactring::factorize;

/// Orthogonal idempotent decomposition of `ℤ/n`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Oid {
    pub idempotents: Vec<u64>,
    /// Orders of the summands `e_i·ℤ/n`.
    pub summand_orders: Vec<u64>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct OidReport {
    pub n: u64,
    pub idempotents: Vec<u64>,
    pub decompositions: Vec<Oid>,
    /// The finest decomposition, one summand per prime power.
    pub maximal: Oid,
    pub crt_factors: Vec<u64>,
    pub matches_crt: bool,
}

fn is_oid(n: u64, es: &[u64]) -> bool {
    let sum: u64 = es.iter().sum::<u64>() % n;
    if sum != 1 % n {
        return false;
    }
    for (a, &x) in es.iter().enumerate() {
        if (x as u128 * x as u128 % n as u128) as u64 != x {
            return false;
        }
        for &y in &es[a + 1..] {
            if x as u128 * y as u128 % n as u128 != 0 {
                return false;
            }
        }
    }
    true
}

/// All idempotents by brute force, all o.i.d.s (sets of nonzero pairwise orthogonal idempotents
/// summing to 1), and the comparison with the prime-power factorization of `n`.
pub fn oid_decompose(n: u64) -> Result<OidReport> {
    if n < 2 {
        return Err(Error::Invalid("oid_decompose needs n ≥ 2".into()));
    }
    let idempotents: Vec<u64> = (0..n).filter(|&e| (e as u128 * e as u128 % n as u128) as u64 == e).collect();
    let nonzero: Vec<u64> = idempotents.iter().copied().filter(|&e| e != 0).collect();
    let mut decompositions = Vec::new();
    let mut stack: Vec<(usize, Vec<u64>)> = vec![(0, Vec::new())];
    while let Some((start, cur)) = stack.pop() {
        if !cur.is_empty() && is_oid(n, &cur) {
            decompositions.push(cur.clone());
        }
        for k in start..nonzero.len() {
            let e = nonzero[k];
            if cur.iter().all(|&x| x as u128 * e as u128 % n as u128 == 0) {
                let mut next = cur.clone();
                next.push(e);
                stack.push((k + 1, next));
            }
        }
    }
    let order = |e: u64| n / e.gcd(&n);
    let mut decompositions: Vec<Oid> = decompositions
        .into_iter()
        .map(|es| {
            let summand_orders = es.iter().map(|&e| order(e)).collect();
            Oid { idempotents: es, summand_orders }
        })
        .collect();
    decompositions.sort_by(|a, b| (a.idempotents.len(), &a.idempotents).cmp(&(b.idempotents.len(), &b.idempotents)));
    let maximal = decompositions.iter().max_by_key(|d| d.idempotents.len()).cloned().unwrap();
    let crt_factors: Vec<u64> = factorize(n).into_iter().map(|(p, e)| p.pow(e)).collect();
    let mut sorted = maximal.summand_orders.clone();
    sorted.sort();
    let mut crt_sorted = crt_factors.clone();
    crt_sorted.sort();
    let products_ok = decompositions.iter().all(|d| d.summand_orders.iter().product::<u64>() == n);
    // each o.i.d. corresponds to a partition of the prime powers
    let count_ok = decompositions.len() == bell(crt_factors.len());
    let matches_crt = sorted == crt_sorted && products_ok && count_ok;
    Ok(OidReport { n, idempotents, decompositions, maximal, crt_factors, matches_crt })
}

fn bell(k: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..k {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_splits_as_two_times_three() {
        let r = oid_decompose(6).unwrap();
        assert_eq!(r.idempotents, vec![0, 1, 3, 4]);
        assert_eq!(r.maximal.idempotents, vec![3, 4]);
        assert_eq!(r.maximal.summand_orders, vec![2, 3]);
        assert!(r.matches_crt);
    }

    #[test]
    fn prime_powers_are_connected() {
        let r = oid_decompose(4).unwrap();
        assert_eq!(r.idempotents, vec![0, 1]);
        assert_eq!(r.decompositions, vec![Oid { idempotents: vec![1], summand_orders: vec![4] }]);
    }

    #[test]
    fn bell_numbers() {
        assert_eq!((0..5).map(bell).collect::<Vec<_>>(), vec![1, 1, 2, 5, 15]);
    }
}
