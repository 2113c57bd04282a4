use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactring::{rat, Field};
use crate::linalg::{FieldMatrix, IntQuotient};

/// Formal space on brackets `⟨x, y⟩` over a list of symbols, indexed by ordered pairs.
#[derive(Clone, Debug)]
pub struct BracketSpace {
    pub symbols: Vec<char>,
}

/// `⟨x,y⟩ + ⟨z,w⟩ − ⟨x,z⟩ − ⟨y,w⟩` for distinct symbols.
pub type Instance = [usize; 4];

impl BracketSpace {
    pub fn new(symbols: &[char]) -> Self {
        BracketSpace { symbols: symbols.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.symbols.len() * self.symbols.len()
    }

    pub fn pair(&self, x: usize, y: usize) -> usize {
        x * self.symbols.len() + y
    }

    pub fn symbol(&self, c: char) -> Result<usize> {
        self.symbols.iter().position(|&s| s == c).ok_or_else(|| Error::Invalid(format!("unknown symbol {c}")))
    }

    /// Instances up to the sign flip `r(x,y,z,w) = −r(x,z,y,w)`: those with `y < z`.
    pub fn instances(&self) -> Vec<Instance> {
        let n = self.symbols.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in y + 1..n {
                    for w in 0..n {
                        if x != y && x != z && x != w && y != w && z != w {
                            out.push([x, y, z, w]);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn instance_vector(&self, r: &Instance) -> Vec<i64> {
        let mut v = vec![0i64; self.dim()];
        v[self.pair(r[0], r[1])] += 1;
        v[self.pair(r[2], r[3])] += 1;
        v[self.pair(r[0], r[2])] -= 1;
        v[self.pair(r[1], r[3])] -= 1;
        v
    }

    /// Parses a combination like `"<e,d> - <d,e>"` or `"2<a,b> - 2<b,a>"`.
    pub fn parse(&self, s: &str) -> Result<Vec<i64>> {
        let mut v = vec![0i64; self.dim()];
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, after) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let digits: String = after.chars().take_while(|c| c.is_ascii_digit()).collect();
            let coeff: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| Error::Parse(s.into()))? };
            let after = &after[digits.len()..];
            let close = after.find('>').ok_or_else(|| Error::Parse(format!("unterminated bracket in {s}")))?;
            let inner = after.strip_prefix('<').ok_or_else(|| Error::Parse(format!("expected '<' in {s}")))?;
            let body: Vec<char> = inner[..close - 1].chars().filter(|&c| c != ',').collect();
            if body.len() != 2 {
                return Err(Error::Parse(format!("bracket needs two symbols in {s}")));
            }
            let (x, y) = (self.symbol(body[0])?, self.symbol(body[1])?);
            v[self.pair(x, y)] += sign * coeff;
            rest = &after[close + 1..];
        }
        Ok(v)
    }

    pub fn show_instance(&self, r: &Instance) -> String {
        let c = |i: usize| self.symbols[i];
        format!("<{},{}>+<{},{}>-<{},{}>-<{},{}>", c(r[0]), c(r[1]), c(r[2]), c(r[3]), c(r[0]), c(r[2]), c(r[1]), c(r[3]))
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CertTerm {
    pub coeff: i64,
    pub instance: String,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CertifyOutcome {
    pub rational_solvable: bool,
    pub integer_solvable: bool,
    /// How the returned certificate was found: `unit-search`, `integer-solve` or `none`.
    pub method: String,
    pub certificate: Vec<CertTerm>,
    /// A rational solution `(coefficient, instance)` when no integer one exists.
    pub rational_solution: Option<Vec<(String, String)>>,
    /// The certificate's instances sum exactly to the target.
    pub verified: bool,
}

/// Largest support explored by the `{−1, 0, 1}` search.
const MAX_SUPPORT: usize = 6;

fn sub_vec(a: &[i8], b: &[i8]) -> Vec<i8> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Signed combinations of at most `k` instances, keyed by their sum.
fn half_table(vecs: &[Vec<i8>], k: usize) -> HashMap<Vec<i8>, Vec<Vec<(usize, i8)>>> {
    let mut table: HashMap<Vec<i8>, Vec<Vec<(usize, i8)>>> = HashMap::new();
    let dim = vecs.first().map_or(0, |v| v.len());
    let mut stack: Vec<(usize, Vec<(usize, i8)>, Vec<i8>)> = vec![(0, Vec::new(), vec![0; dim])];
    while let Some((start, combo, sum)) = stack.pop() {
        let bucket = table.entry(sum.clone()).or_default();
        if bucket.len() < 8 {
            bucket.push(combo.clone());
        }
        if combo.len() == k {
            continue;
        }
        for i in start..vecs.len() {
            for s in [1i8, -1] {
                let mut c = combo.clone();
                c.push((i, s));
                let next: Vec<i8> = sum.iter().zip(&vecs[i]).map(|(a, b)| a + s * b).collect();
                stack.push((i + 1, c, next));
            }
        }
    }
    table
}

/// Meet-in-the-middle search for a `{−1, 0, 1}` combination of smallest support.
fn unit_search(vecs: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    if target.iter().any(|x| x.abs() > 4 * MAX_SUPPORT as i64) {
        return None;
    }
    let small = |v: &[i64]| -> Vec<i8> { v.iter().map(|&x| x as i8).collect() };
    let vecs8: Vec<Vec<i8>> = vecs.iter().map(|v| small(v)).collect();
    let target = small(target);
    let table = half_table(&vecs8, MAX_SUPPORT / 2);
    let mut best: Option<Vec<i64>> = None;
    let mut best_support = usize::MAX;
    let mut lefts: Vec<(&Vec<i8>, &Vec<(usize, i8)>)> =
        table.iter().flat_map(|(k, combos)| combos.iter().map(move |c| (k, c))).collect();
    lefts.sort_by(|a, b| (a.1.len(), a.1).cmp(&(b.1.len(), b.1)));
    for (sum, left) in lefts {
        let need = sub_vec(&target, sum);
        let Some(rights) = table.get(&need) else { continue };
        for right in rights {
            let mut coeffs = vec![0i64; vecs.len()];
            for &(i, s) in left.iter().chain(right.iter()) {
                coeffs[i] += s as i64;
            }
            if coeffs.iter().any(|c| c.abs() > 1) {
                continue;
            }
            let support = coeffs.iter().filter(|c| **c != 0).count();
            if support < best_support {
                best_support = support;
                best = Some(coeffs);
            }
        }
    }
    best
}

fn combination(vecs: &[Vec<i64>], coeffs: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; vecs.first().map_or(0, |v| v.len())];
    for (v, c) in vecs.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Writes `target` as a combination of bracket instances: `{−1, 0, 1}` coefficients first, then
/// any integer solution, then a rational one.
pub fn certify(space: &BracketSpace, target: &[i64]) -> Result<CertifyOutcome> {
    if target.len() != space.dim() {
        return Err(Error::Invalid("target has the wrong length".into()));
    }
    let inst = space.instances();
    let vecs: Vec<Vec<i64>> = inst.iter().map(|r| space.instance_vector(r)).collect();
    let dim = space.dim();

    let q = Field::Rationals;
    let data = (0..dim).map(|i| vecs.iter().map(|v| rat(v[i])).collect()).collect();
    let a = FieldMatrix::with_shape(&q, dim, vecs.len(), data);
    let rat_sol = a.solve(&target.iter().map(|&x| rat(x)).collect::<Vec<_>>());
    let rational_solvable = rat_sol.is_some();

    let big = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&x| BigInt::from(x)).collect() };
    let lattice = IntQuotient::new(dim, None);
    let int_sol = lattice.solve(&vecs.iter().map(|v| big(v)).collect::<Vec<_>>(), &big(target));
    let integer_solvable = int_sol.is_some();

    let (method, coeffs) = if target.iter().all(|x| *x == 0) {
        ("unit-search", Some(vec![0i64; vecs.len()]))
    } else if let Some(c) = unit_search(&vecs, target) {
        ("unit-search", Some(c))
    } else if let Some(c) = int_sol {
        let c: Option<Vec<i64>> = c.iter().map(|x| x.to_i64()).collect();
        ("integer-solve", c)
    } else if rational_solvable {
        ("rational-solve", None)
    } else {
        ("none", None)
    };
    let rational_solution = (method == "rational-solve").then(|| {
        rat_sol
            .unwrap()
            .iter()
            .zip(&inst)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, r)| (c.to_string(), space.show_instance(r)))
            .collect()
    });
    let coeffs = coeffs.unwrap_or_default();
    let verified = !coeffs.is_empty() && combination(&vecs, &coeffs) == target;
    let certificate = coeffs
        .iter()
        .zip(&inst)
        .filter(|(c, _)| **c != 0)
        .map(|(&coeff, r)| CertTerm { coeff, instance: space.show_instance(r) })
        .collect();
    Ok(CertifyOutcome { rational_solvable, integer_solvable, method: method.into(), certificate, rational_solution, verified })
}

/// The six instances with unit coefficients that sum to `⟨e,d⟩ − ⟨d,e⟩`.
pub const PUBLISHED_COMBINATION: [[char; 4]; 6] = [
    ['a', 'b', 'c', 'e'],
    ['b', 'c', 'a', 'e'],
    ['a', 'b', 'e', 'd'],
    ['a', 'd', 'b', 'e'],
    ['b', 'a', 'c', 'd'],
    ['a', 'c', 'b', 'd'],
];

#[derive(Clone, Debug, serde::Serialize)]
pub struct BracketCertificate {
    pub target: String,
    pub outcome: CertifyOutcome,
    pub published_combination_valid: bool,
    /// Number of bracket terms in the published combination before cancellation.
    pub published_terms: usize,
}

/// Certificate for `⟨e,d⟩ − ⟨d,e⟩` over the symbols `a..e`.
pub fn bracket_identity_certificate() -> Result<BracketCertificate> {
    let space = BracketSpace::new(&['a', 'b', 'c', 'd', 'e']);
    let target = space.parse("<e,d> - <d,e>")?;
    let outcome = certify(&space, &target)?;
    if !outcome.verified {
        return Err(Error::Internal("no certificate for the bracket identity".into()));
    }
    let mut sum = vec![0i64; space.dim()];
    for r in PUBLISHED_COMBINATION {
        let idx = [space.symbol(r[0])?, space.symbol(r[1])?, space.symbol(r[2])?, space.symbol(r[3])?];
        for (s, x) in sum.iter_mut().zip(space.instance_vector(&idx)) {
            *s += x;
        }
    }
    Ok(BracketCertificate {
        target: "<e,d>-<d,e>".into(),
        outcome,
        published_combination_valid: sum == target,
        published_terms: 2 * PUBLISHED_COMBINATION.len(),
    })
}

/// Whether a combination lies in the span, over ℚ and over ℤ, without searching for small support.
pub fn solvability(space: &BracketSpace, target: &[i64]) -> (bool, bool) {
    let inst = space.instances();
    let vecs: Vec<Vec<i64>> = inst.iter().map(|r| space.instance_vector(r)).collect();
    let mut rs = crate::linalg::RowSpace::new(&Field::Rationals, space.dim());
    let mut lat = IntQuotient::new(space.dim(), None);
    for v in &vecs {
        rs.insert(&v.iter().map(|&x| rat(x)).collect::<Vec<_>>());
        lat.insert(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    }
    let t: Vec<BigInt> = target.iter().map(|&x| BigInt::from(x)).collect();
    (rs.contains(&target.iter().map(|&x| rat(x)).collect::<Vec<_>>()), lat.is_zero(&t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_combination_sums_to_target() {
        let c = bracket_identity_certificate().unwrap();
        assert!(c.published_combination_valid);
        assert!(c.outcome.verified && c.outcome.rational_solvable && c.outcome.integer_solvable);
        assert_eq!(c.outcome.method, "unit-search");
        assert!(c.outcome.certificate.iter().all(|t| t.coeff.abs() == 1));
    }

    #[test]
    fn instance_count() {
        assert_eq!(BracketSpace::new(&['a', 'b', 'c', 'd', 'e']).instances().len(), 60);
        assert_eq!(BracketSpace::new(&['a', 'b', 'c', 'd']).instances().len(), 12);
    }

    #[test]
    fn trivial_target() {
        let s = BracketSpace::new(&['a', 'b', 'c', 'd', 'e']);
        let t = s.parse("<a,b> - <a,b>").unwrap();
        let o = certify(&s, &t).unwrap();
        assert!(o.verified && o.certificate.is_empty());
    }

    #[test]
    fn four_symbols() {
        let s = BracketSpace::new(&['a', 'b', 'c', 'd']);
        let twice = s.parse("2<a,b> - 2<b,a>").unwrap();
        let o = certify(&s, &twice).unwrap();
        assert!(o.verified && o.integer_solvable);
        let once = s.parse("<a,b> - <b,a>").unwrap();
        let (q, z) = solvability(&s, &once);
        assert!(q);
        let o1 = certify(&s, &once).unwrap();
        assert_eq!(o1.integer_solvable, z);
    }

    #[test]
    fn parse_rejects_garbage() {
        let s = BracketSpace::new(&['a', 'b']);
        assert!(s.parse("<a,c>").is_err());
        assert!(s.parse("<a,b").is_err());
    }
}
