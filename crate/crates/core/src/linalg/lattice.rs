use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::smith::smith_decompose;

/// The abelian group ℤ^dim / L, with L kept in echelon form (one row per pivot column).
///
/// With a modulus n, L always contains nℤ^dim, which models modules over ℤ/n.
#[derive(Clone, Debug)]
pub struct IntQuotient {
    pub dim: usize,
    pub modulus: Option<BigInt>,
    pub piv: Vec<Option<Vec<BigInt>>>,
}

fn insert_row(
    piv: &mut [Option<Vec<BigInt>>],
    mut v: Vec<BigInt>,
    pivot_cols: usize,
    modulus: Option<&BigInt>,
) -> bool {
    let reduce_tail = |row: &mut Vec<BigInt>, from: usize| {
        if let Some(n) = modulus {
            for x in row[from..pivot_cols].iter_mut() {
                *x = x.mod_floor(n);
            }
        }
    };
    for c in 0..pivot_cols {
        if let Some(n) = modulus {
            v[c] = v[c].mod_floor(n);
        }
        if v[c].is_zero() {
            continue;
        }
        match piv[c].take() {
            None => {
                if v[c].is_negative() {
                    for x in v.iter_mut() {
                        *x = -x.clone();
                    }
                }
                reduce_tail(&mut v, c + 1);
                piv[c] = Some(v);
                return true;
            }
            Some(p) => {
                let a = p[c].clone();
                let b = v[c].clone();
                let e = a.extended_gcd(&b);
                let g = e.gcd.clone();
                let (s, t) = (e.x, e.y);
                let mut newp: Vec<BigInt> = p.iter().zip(&v).map(|(x, y)| &s * x + &t * y).collect();
                let (ag, bg) = (&a / &g, &b / &g);
                let rem: Vec<BigInt> = p.iter().zip(&v).map(|(x, y)| &ag * y - &bg * x).collect();
                if newp[c].is_negative() {
                    for x in newp.iter_mut() {
                        *x = -x.clone();
                    }
                }
                reduce_tail(&mut newp, c + 1);
                piv[c] = Some(newp);
                v = rem;
            }
        }
    }
    false
}

impl IntQuotient {
    pub fn new(dim: usize, modulus: Option<u64>) -> Self {
        let modulus = modulus.map(BigInt::from);
        let mut q = IntQuotient { dim, modulus: modulus.clone(), piv: vec![None; dim] };
        if let Some(n) = modulus {
            for c in 0..dim {
                let mut row = vec![BigInt::zero(); dim];
                row[c] = n.clone();
                q.piv[c] = Some(row);
            }
        }
        q
    }

    pub fn insert(&mut self, v: &[BigInt]) {
        let m = self.modulus.clone();
        insert_row(&mut self.piv, v.to_vec(), self.dim, m.as_ref());
    }

    /// Canonical representative modulo L.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for c in 0..self.dim {
            if let Some(row) = &self.piv[c] {
                let q = v[c].div_floor(&row[c]);
                if !q.is_zero() {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x -= &q * y;
                    }
                }
            }
        }
        v
    }

    pub fn is_zero(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        self.piv.iter().flatten().cloned().collect()
    }

    /// Invariant factors of ℤ^dim / L (units dropped, zeros for free summands), ascending by divisibility.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let rows = self.basis_rows();
        if rows.is_empty() {
            return vec![BigInt::zero(); self.dim];
        }
        // cokernel of the transpose: ℤ^dim / (column span of rowsᵀ)
        let r = rows.len();
        let t: Vec<Vec<BigInt>> = (0..self.dim).map(|j| (0..r).map(|i| rows[i][j].clone()).collect()).collect();
        let s = smith_decompose(&t, self.dim, r);
        let mut f: Vec<BigInt> = s.cokernel_factors();
        f.sort_by(|a, b| match (a.is_zero(), b.is_zero()) {
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            _ => a.cmp(b),
        });
        f
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        let mut o = BigInt::one();
        for c in 0..self.dim {
            o *= self.piv[c].as_ref()?[c].clone();
        }
        Some(o)
    }

    /// All canonical representatives (finite groups only).
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        let bounds: Vec<BigInt> = (0..self.dim).map(|c| self.piv[c].as_ref().map(|r| r[c].clone())).collect::<Option<_>>()?;
        let mut out = Vec::new();
        let mut cur = vec![BigInt::zero(); self.dim];
        loop {
            out.push(self.reduce(&cur));
            let mut k = 0;
            loop {
                if k == self.dim {
                    return Some(out);
                }
                cur[k] += 1;
                if cur[k] < bounds[k] {
                    break;
                }
                cur[k] = BigInt::zero();
                k += 1;
            }
        }
    }

    /// Some integer x with Σ x_i·gens_i − b ∈ L.
    pub fn solve(&self, gens: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
        let k = gens.len();
        let width = self.dim + k;
        let mut piv: Vec<Option<Vec<BigInt>>> = vec![None; self.dim];
        for row in self.basis_rows() {
            let mut r = row.clone();
            r.extend(std::iter::repeat(BigInt::zero()).take(k));
            insert_row(&mut piv, r, self.dim, self.modulus.as_ref());
        }
        for (i, g) in gens.iter().enumerate() {
            let mut r = g.clone();
            r.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            insert_row(&mut piv, r, self.dim, self.modulus.as_ref());
        }
        let mut w = b.to_vec();
        w.extend(std::iter::repeat(BigInt::zero()).take(k));
        debug_assert_eq!(w.len(), width);
        for c in 0..self.dim {
            if let Some(n) = &self.modulus {
                // shifting by multiples of n·e_c keeps w in the same coset
                let r = w[c].mod_floor(n);
                w[c] = r;
            }
            if w[c].is_zero() {
                continue;
            }
            let row = piv[c].as_ref()?;
            let (q, r) = w[c].div_mod_floor(&row[c]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        Some(w[self.dim..].iter().map(|x| -x.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclic_quotients() {
        let mut q = IntQuotient::new(2, None);
        q.insert(&bi(&[2, 0]));
        q.insert(&bi(&[0, 3]));
        assert_eq!(q.invariant_factors(), bi(&[6]));
        assert_eq!(q.order(), Some(BigInt::from(6)));
        assert!(q.is_zero(&bi(&[4, 6])));
        assert!(!q.is_zero(&bi(&[1, 0])));
    }

    #[test]
    fn modulus_rows_are_present() {
        let mut q = IntQuotient::new(1, Some(4));
        assert_eq!(q.order(), Some(BigInt::from(4)));
        q.insert(&bi(&[6]));
        assert_eq!(q.invariant_factors(), bi(&[2]));
        assert_eq!(q.elements().unwrap().len(), 2);
    }

    #[test]
    fn solve_finds_combinations() {
        let mut q = IntQuotient::new(1, Some(4));
        q.insert(&bi(&[0]));
        // 2x ≡ 2 mod 4 solvable, 2x ≡ 1 not
        let x = q.solve(&[bi(&[2])], &bi(&[2])).unwrap();
        assert!(q.is_zero(&bi(&[2 * i64::try_from(x[0].clone()).unwrap() - 2])));
        assert!(q.solve(&[bi(&[2])], &bi(&[1])).is_none());
        let free = IntQuotient::new(2, None);
        assert!(free.solve(&[bi(&[1, 1])], &bi(&[1, 0])).is_none());
        assert_eq!(free.solve(&[bi(&[2, 2])], &bi(&[4, 4])), Some(bi(&[2])));
    }
}
