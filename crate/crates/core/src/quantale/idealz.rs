use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use super::Quantale;

/// Ideals `(n)` of ℤ, `n ≥ 0`; order is inclusion, so `(n) ≤ (m)` iff `m | n`.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdealZ;

impl Quantale for IdealZ {
    type Elem = u128;
    fn bottom(&self) -> u128 {
        0
    }
    fn unit(&self) -> u128 {
        1
    }
    fn sup(&self, a: &u128, b: &u128) -> u128 {
        a.gcd(b)
    }
    fn mul(&self, a: &u128, b: &u128) -> u128 {
        a.checked_mul(*b).expect("ideal generator exceeds u128")
    }
    fn le(&self, a: &u128, b: &u128) -> bool {
        contained(*a, *b)
    }
    fn residual(&self, b: &u128, a: &u128) -> u128 {
        if *a == 0 {
            return 1;
        }
        b / a.gcd(b)
    }
}

/// `(n) ⊆ (m)`.
fn contained(n: u128, m: u128) -> bool {
    if m == 0 {
        n == 0
    } else {
        n % m == 0
    }
}

/// `((n) + (m), (n)·(m)) = ((gcd), (nm))`.
pub fn ideal_sum_product(n: u128, m: u128) -> (u128, u128) {
    (IdealZ.sup(&n, &m), IdealZ.mul(&n, &m))
}

/// Decided by factorization: `(0)` and `(p)` for `p` prime.
pub fn is_prime(n: u128) -> bool {
    match n {
        0 => true,
        1 => false,
        _ => (2..).take_while(|d| d * d <= n).all(|d| n % d != 0),
    }
}

/// Quantifier test over `(a), (b)` with `a, b ≤ bound`: `(n) ≠ (1)` and `(a)(b) ⊆ (n)` forces `(a) ⊆ (n)` or `(b) ⊆ (n)`.
/// Returns the witness pair on failure.
pub fn is_prime_brute(n: u128, bound: u128) -> Result<(), Option<(u128, u128)>> {
    if n == 1 {
        return Err(None);
    }
    for a in 0..=bound {
        for b in a..=bound {
            if contained(a * b, n) && !contained(a, n) && !contained(b, n) {
                return Err(Some((a, b)));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumEntry {
    pub ideal: u128,
    pub prime: bool,
    pub witness: Option<(u128, u128)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub bound: u128,
    pub primes: Vec<u128>,
    pub entries: Vec<SpectrumEntry>,
    /// Factorization and the quantifier test agree on every `(n)`, `n ≤ bound`.
    pub agree: bool,
}

/// Classify `(n)` for `n ≤ bound`, quantifying over `(a), (b)` with `a, b ≤ max(n, 2)`.
pub fn spectrum(bound: u128) -> SpectrumReport {
    let mut entries = Vec::new();
    let mut agree = true;
    for n in 0..=bound {
        let prime = is_prime(n);
        let brute = is_prime_brute(n, n.max(2));
        agree &= prime == brute.is_ok();
        entries.push(SpectrumEntry { ideal: n, prime, witness: brute.err().flatten() });
    }
    let primes = entries.iter().filter(|e| e.prime).map(|e| e.ideal).collect();
    SpectrumReport { bound, primes, entries, agree }
}

/// `V((n))` inside the truncated spectrum `{(0)} ∪ {(p) : p ≤ max_prime}`.
pub fn vanishing(n: u128, max_prime: u128) -> BTreeSet<u128> {
    std::iter::once(0).chain((2..=max_prime).filter(|&p| is_prime(p))).filter(|&p| contained(n, p)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ZariskiLaw {
    pub law: String,
    pub cases: usize,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZariskiReport {
    pub max_prime: u128,
    pub laws: Vec<ZariskiLaw>,
}

impl ZariskiReport {
    pub fn law(&self, name: &str) -> Option<&ZariskiLaw> {
        self.laws.iter().find(|l| l.law == name)
    }
}

fn show(s: &BTreeSet<u128>) -> String {
    let parts: Vec<String> = s.iter().map(|p| format!("({p})")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Evaluates the closed-set identities on all pairs (and the whole list, for sums) of `samples`.
/// Both the intersection form and the union form of the product law are reported.
pub fn zariski_laws_check(samples: &[u128], max_prime: u128) -> ZariskiReport {
    let v = |n| vanishing(n, max_prime);
    let all = v(0);
    let mut laws = Vec::new();

    let w = if v(0) != all {
        Some("V((0)) is not the whole spectrum".to_string())
    } else if !v(1).is_empty() {
        Some("V((1)) is not empty".to_string())
    } else {
        None
    };
    laws.push(ZariskiLaw { law: "V(0) = Spec, V(1) = ∅".into(), cases: 2, holds: w.is_none(), witness: w });

    let mut product_cap = None;
    let mut product_cup = None;
    let mut sum_pair = None;
    let mut cases = 0;
    for &i in samples {
        for &j in samples {
            cases += 1;
            let (vi, vj, vij) = (v(i), v(j), v(IdealZ.mul(&i, &j)));
            let cap: BTreeSet<u128> = vi.intersection(&vj).copied().collect();
            let cup: BTreeSet<u128> = vi.union(&vj).copied().collect();
            if product_cap.is_none() && vij != cap {
                product_cap = Some(format!("I = ({i}), J = ({j}): V(IJ) = {} but V(I) ∩ V(J) = {}", show(&vij), show(&cap)));
            }
            if product_cup.is_none() && vij != cup {
                product_cup = Some(format!("I = ({i}), J = ({j}): V(IJ) = {} but V(I) ∪ V(J) = {}", show(&vij), show(&cup)));
            }
            let vs = v(IdealZ.sup(&i, &j));
            if sum_pair.is_none() && vs != cap {
                sum_pair = Some(format!("I = ({i}), J = ({j}): V(I + J) = {} but V(I) ∩ V(J) = {}", show(&vs), show(&cap)));
            }
        }
    }
    let total = samples.iter().fold(0, |acc, n| IdealZ.sup(&acc, n));
    let meet = samples.iter().fold(all.clone(), |acc, &n| acc.intersection(&v(n)).copied().collect());
    let sum_all = (v(total) != meet).then(|| format!("V(Σ I) = {} but ∩ V(I) = {}", show(&v(total)), show(&meet)));

    laws.push(ZariskiLaw { law: "V(IJ) = V(I) ∩ V(J)".into(), cases, holds: product_cap.is_none(), witness: product_cap });
    laws.push(ZariskiLaw { law: "V(IJ) = V(I) ∪ V(J)".into(), cases, holds: product_cup.is_none(), witness: product_cup });
    let sum_witness = sum_pair.or(sum_all);
    laws.push(ZariskiLaw { law: "V(Σ I) = ∩ V(I)".into(), cases: cases + 1, holds: sum_witness.is_none(), witness: sum_witness });
    ZariskiReport { max_prime, laws }
}

#[cfg(test)]
mod tests {
    use super::super::check_axioms;
    use super::*;

    #[test]
    fn residuals() {
        assert_eq!(IdealZ.residual(&6, &4), 3);
        for b in [0, 1, 7, 12] {
            assert_eq!(IdealZ.residual(&b, &1), b);
        }
        assert_eq!(IdealZ.residual(&5, &0), 1);
        assert_eq!(IdealZ.residual(&0, &3), 0);
    }

    #[test]
    fn sums_and_products() {
        assert_eq!(ideal_sum_product(4, 6), (2, 24));
        assert_eq!(ideal_sum_product(9, 0).0, 9);
        assert_eq!(ideal_sum_product(9, 1).1, 9);
    }

    #[test]
    fn primes_small() {
        assert!(is_prime(5) && is_prime_brute(5, 10).is_ok());
        assert!(!is_prime(6));
        assert_eq!(is_prime_brute(6, 10), Err(Some((2, 3))));
        assert!(is_prime(0) && is_prime_brute(0, 10).is_ok());
        assert!(!is_prime(1) && is_prime_brute(1, 10) == Err(None));
    }

    #[test]
    fn spectrum_to_100() {
        let r = spectrum(100);
        assert!(r.agree);
        assert_eq!(r.primes.len(), 26);
        assert_eq!(r.primes[..4], [0, 2, 3, 5]);
    }

    #[test]
    fn vanishing_sets() {
        assert_eq!(vanishing(6, 30), BTreeSet::from([2, 3]));
        assert!(vanishing(1, 30).is_empty());
        assert_eq!(vanishing(0, 30).len(), 11);
        assert_eq!(vanishing(36, 30), BTreeSet::from([2, 3]));
    }

    #[test]
    fn product_law_is_a_union() {
        let r = zariski_laws_check(&[4, 9], 30);
        assert!(r.law("V(IJ) = V(I) ∪ V(J)").unwrap().holds);
        assert!(r.law("V(Σ I) = ∩ V(I)").unwrap().holds);
        assert!(r.law("V(0) = Spec, V(1) = ∅").unwrap().holds);
        let cap = r.law("V(IJ) = V(I) ∩ V(J)").unwrap();
        assert!(!cap.holds);
        assert!(cap.witness.as_ref().unwrap().starts_with("I = (4), J = (9)"));
    }

    #[test]
    fn axioms_on_divisors() {
        let samples: Vec<u128> = vec![0, 1, 2, 3, 4, 6, 9, 12, 35];
        assert!(check_axioms(&IdealZ, &samples).passed());
    }
}
