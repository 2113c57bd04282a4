use petgraph::unionfind::UnionFind;

use super::theory::{Algebra, FiniteAlgebra, ENUM_LIMIT};
use crate::error::{Error, Result};

/// Smallest congruence on `alg` containing the given pairs, as a disjoint-set partition.
#[derive(Clone, Debug)]
pub struct Congruence {
    /// Class index of every element, numbered by first occurrence.
    pub class_of: Vec<usize>,
    /// Smallest element of each class.
    pub reps: Vec<usize>,
}

impl Congruence {
    pub fn generated(alg: &dyn Algebra, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = alg.size();
        let ops = alg.theory().ops();
        let mut uf = UnionFind::<usize>::new(n);
        let mut work: Vec<(usize, usize)> = pairs.into_iter().collect();
        while let Some((x, y)) = work.pop() {
            if !uf.union(x, y) {
                continue;
            }
            // re-close under every operation with x and y in each slot
            for (k, sig) in ops.iter().enumerate() {
                match sig.arity {
                    0 => {}
                    1 => work.push((alg.op(k, &[x]), alg.op(k, &[y]))),
                    2 => {
                        for z in 0..n {
                            work.push((alg.op(k, &[x, z]), alg.op(k, &[y, z])));
                            work.push((alg.op(k, &[z, x]), alg.op(k, &[z, y])));
                        }
                    }
                    a => return Err(Error::Unsupported(format!("operations of arity {a}"))),
                }
            }
        }
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut root_class = std::collections::HashMap::new();
        for x in 0..n {
            let r = uf.find(x);
            let c = *root_class.entry(r).or_insert_with(|| {
                reps.push(x);
                reps.len() - 1
            });
            class_of[x] = c;
        }
        Ok(Congruence { class_of, reps })
    }

    pub fn classes(&self) -> usize {
        self.reps.len()
    }

    /// Quotient operation tables built from representatives, with well-definedness re-verified on all tuples.
    pub fn quotient(&self, alg: &dyn Algebra, labels: Vec<String>) -> Result<FiniteAlgebra> {
        let n = alg.size();
        let q = self.classes();
        let ops = alg.theory().ops();
        let mut tables = Vec::new();
        for (k, sig) in ops.iter().enumerate() {
            if n.checked_pow(sig.arity as u32).is_none_or(|c| c > ENUM_LIMIT * 4) {
                return Err(Error::Unsupported("quotient too large to verify".into()));
            }
            let mut t = vec![usize::MAX; q.pow(sig.arity as u32)];
            for idx in 0..t.len() {
                let mut args = vec![0; sig.arity];
                let mut r = idx;
                for slot in args.iter_mut().rev() {
                    *slot = self.reps[r % q];
                    r /= q;
                }
                t[idx] = self.class_of[alg.op(k, &args)];
            }
            // every tuple, not only representatives
            for idx in 0..n.pow(sig.arity as u32) {
                let mut args = vec![0; sig.arity];
                let mut r = idx;
                for slot in args.iter_mut().rev() {
                    *slot = r % n;
                    r /= n;
                }
                let cidx = args.iter().fold(0, |acc, &a| acc * q + self.class_of[a]);
                if t[cidx] != self.class_of[alg.op(k, &args)] {
                    return Err(Error::Internal(format!("{} is not well defined on the quotient", sig.name)));
                }
            }
            tables.push(t);
        }
        Ok(FiniteAlgebra { theory: alg.theory().clone(), carrier: labels, tables })
    }
}

#[cfg(test)]
mod tests {
    use super::super::theory::{FreeAlgebra, Theory};
    use super::*;

    #[test]
    fn mod6_collapse() {
        // in ℤ/6, 0 ~ 2 and 0 ~ 3 force everything together
        let f = FreeAlgebra::new(&Theory::ModN(6), 1).unwrap();
        let c = Congruence::generated(&f, [(0, 2), (0, 3)]).unwrap();
        assert_eq!(c.classes(), 1);
        let c = Congruence::generated(&f, [(0, 2)]).unwrap();
        assert_eq!(c.classes(), 2);
        let q = c.quotient(&f, vec!["0".into(), "1".into()]).unwrap();
        assert_eq!(Theory::ModN(6).axiom_violation(&q), None);
    }

    #[test]
    fn join_closure() {
        // identifying {x0} with ∅ in the free sup-lattice on two generators leaves {∅, {x1}}
        let f = FreeAlgebra::new(&Theory::SupLattice, 2).unwrap();
        let c = Congruence::generated(&f, [(1, 0)]).unwrap();
        assert_eq!(c.classes(), 2);
        assert_eq!(c.class_of, vec![0, 0, 1, 1]);
    }
}
