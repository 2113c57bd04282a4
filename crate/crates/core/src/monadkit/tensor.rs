use serde::Serialize;

use super::congruence::Congruence;
use super::monad::Monad;
use super::theory::{is_homomorphism, Algebra, FiniteAlgebra, FreeAlgebra, ENUM_LIMIT};
use crate::error::{Error, Result};

/// Greedy generating set: constants first, then every element not yet generated, in index order.
pub fn generating_set(alg: &dyn Algebra) -> Vec<usize> {
    let n = alg.size();
    let ops = alg.theory().ops();
    let mut inside = vec![false; n];
    let mut members = Vec::new();
    let mut gens = Vec::new();
    let mut queue = Vec::new();
    for (k, sig) in ops.iter().enumerate() {
        if sig.arity == 0 && n > 0 {
            queue.push(alg.op(k, &[]));
        }
    }
    let mut next = 0;
    loop {
        while let Some(x) = queue.pop() {
            if inside[x] {
                continue;
            }
            inside[x] = true;
            members.push(x);
            for (k, sig) in ops.iter().enumerate() {
                match sig.arity {
                    1 => queue.push(alg.op(k, &[x])),
                    2 => {
                        for &y in &members {
                            queue.push(alg.op(k, &[x, y]));
                            queue.push(alg.op(k, &[y, x]));
                        }
                    }
                    _ => {}
                }
            }
        }
        while next < n && inside[next] {
            next += 1;
        }
        if next == n {
            return gens;
        }
        gens.push(next);
        queue.push(next);
    }
}

/// For each element, some `u ∈ free(gens)` evaluating to it.
pub fn express(alg: &dyn Algebra, gens: &[usize]) -> Result<Vec<usize>> {
    let free = FreeAlgebra::new(alg.theory(), gens.len())?;
    if free.size > ENUM_LIMIT {
        return Err(Error::Unsupported(format!("free algebra on {} generators is too large", gens.len())));
    }
    let mut term = vec![usize::MAX; alg.size()];
    let mut missing = alg.size();
    for u in 0..free.size {
        let x = free.lift(&|s| gens[s], alg, u);
        if term[x] == usize::MAX {
            term[x] = u;
            missing -= 1;
            if missing == 0 {
                break;
            }
        }
    }
    if missing > 0 {
        return Err(Error::Internal("generating set does not generate".into()));
    }
    Ok(term)
}

/// `A ⊗_T B` as `free(S_A × S_B)` modulo bilinearity of `(a, b) ↦ d(u_a, v_b)`, where `S_A`, `S_B`
/// generate and `u_a`, `v_b` are chosen terms.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub a: FiniteAlgebra,
    pub b: FiniteAlgebra,
    pub gens_a: Vec<usize>,
    pub gens_b: Vec<usize>,
    pub free: FreeAlgebra,
    pub congruence: Congruence,
    pub algebra: FiniteAlgebra,
    /// `tensor[a][b]` is the class of `a ⊗ b`.
    pub tensor: Vec<Vec<usize>>,
    pub relations: usize,
}

impl TensorProduct {
    pub fn size(&self) -> usize {
        self.algebra.size()
    }
}

pub fn tensor_modules(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<TensorProduct> {
    if a.theory != b.theory {
        return Err(Error::Invalid("tensor factors must share a theory".into()));
    }
    let th = a.theory.clone();
    let m = Monad::new(&th);
    let gens_a = generating_set(a);
    let gens_b = generating_set(b);
    let ua = express(a, &gens_a)?;
    let vb = express(b, &gens_b)?;
    let (na, nb) = (gens_a.len(), gens_b.len());
    let labels: Vec<String> =
        gens_a.iter().flat_map(|&x| gens_b.iter().map(move |&y| format!("{}⊗{}", a.label(x), b.label(y)))).collect();
    let free = FreeAlgebra::with_labels(&th, labels)?;
    if free.size > 1 << 13 {
        return Err(Error::Unsupported(format!("free algebra on {} generator pairs is too large", na * nb)));
    }
    let mut tau = vec![vec![0; b.size()]; a.size()];
    for x in 0..a.size() {
        for y in 0..b.size() {
            tau[x][y] = m.d(na, nb, ua[x], vb[y])?;
        }
    }

    let mut pairs = Vec::new();
    for (k, sig) in th.ops().iter().enumerate() {
        match sig.arity {
            0 => {
                let (ca, cb, cf) = (a.op(k, &[]), b.op(k, &[]), free.op(k, &[]));
                pairs.extend((0..a.size()).map(|x| (tau[x][cb], cf)));
                pairs.extend((0..b.size()).map(|y| (tau[ca][y], cf)));
            }
            1 => {
                for x in 0..a.size() {
                    for y in 0..b.size() {
                        pairs.push((tau[x][b.op(k, &[y])], free.op(k, &[tau[x][y]])));
                        pairs.push((tau[a.op(k, &[x])][y], free.op(k, &[tau[x][y]])));
                    }
                }
            }
            2 => {
                for x in 0..a.size() {
                    for y1 in 0..b.size() {
                        for y2 in 0..b.size() {
                            pairs.push((tau[x][b.op(k, &[y1, y2])], free.op(k, &[tau[x][y1], tau[x][y2]])));
                        }
                    }
                }
                for y in 0..b.size() {
                    for x1 in 0..a.size() {
                        for x2 in 0..a.size() {
                            pairs.push((tau[a.op(k, &[x1, x2])][y], free.op(k, &[tau[x1][y], tau[x2][y]])));
                        }
                    }
                }
            }
            r => return Err(Error::Unsupported(format!("operations of arity {r}"))),
        }
    }
    let relations = pairs.len();
    let congruence = Congruence::generated(&free, pairs)?;
    let tensor: Vec<Vec<usize>> = tau.iter().map(|row| row.iter().map(|&u| congruence.class_of[u]).collect()).collect();

    let mut labels = vec![String::new(); congruence.classes()];
    for x in 0..a.size() {
        for y in 0..b.size() {
            let c = tensor[x][y];
            if labels[c].is_empty() {
                labels[c] = format!("{}⊗{}", a.label(x), b.label(y));
            }
        }
    }
    for (c, l) in labels.iter_mut().enumerate() {
        if l.is_empty() {
            *l = free.label(congruence.reps[c]);
        }
    }
    let algebra = congruence.quotient(&free, labels)?;
    Ok(TensorProduct { a: a.clone(), b: b.clone(), gens_a, gens_b, free, congruence, algebra, tensor, relations })
}

/// The literal coequalizer: `free(A × B)` modulo `d(u, v) ~ η(α(u), β(v))` for all `u ∈ T(A)`, `v ∈ T(B)`.
/// Returns the quotient and `a ⊗ b`.
pub fn tensor_brute(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<(FiniteAlgebra, Vec<Vec<usize>>)> {
    if a.theory != b.theory {
        return Err(Error::Invalid("tensor factors must share a theory".into()));
    }
    let th = a.theory.clone();
    let m = Monad::new(&th);
    let (na, nb) = (a.size(), b.size());
    let free = FreeAlgebra::new(&th, na * nb)?;
    let (ta, tb) = (m.t(na).unwrap_or(usize::MAX), m.t(nb).unwrap_or(usize::MAX));
    if free.size > 1 << 12 || ta.saturating_mul(tb) > ENUM_LIMIT {
        return Err(Error::Unsupported("brute-force tensor product is too large".into()));
    }
    let mut pairs = Vec::new();
    for u in 0..ta {
        let au = a.action(u);
        for v in 0..tb {
            pairs.push((m.d(na, nb, u, v)?, free.eta(au * nb + b.action(v))));
        }
    }
    let cong = Congruence::generated(&free, pairs)?;
    let labels = (0..cong.classes()).map(|c| free.label(cong.reps[c])).collect();
    let q = cong.quotient(&free, labels)?;
    let tensor = (0..na).map(|x| (0..nb).map(|y| cong.class_of[free.eta(x * nb + y)]).collect()).collect();
    Ok((q, tensor))
}

/// The unique homomorphism `f̄ : A ⊗ B → C` with `f̄(a ⊗ b) = f(a, b)`, or `None` if `f` does not factor.
pub fn factor(t: &TensorProduct, c: &dyn Algebra, f: &dyn Fn(usize, usize) -> usize) -> Option<Vec<usize>> {
    let nb = t.gens_b.len();
    let g = |p: usize| f(t.gens_a[p / nb], t.gens_b[p % nb]);
    let mut bar = vec![usize::MAX; t.size()];
    for u in 0..t.free.size {
        let v = t.free.lift(&g, c, u);
        let cls = t.congruence.class_of[u];
        if bar[cls] == usize::MAX {
            bar[cls] = v;
        } else if bar[cls] != v {
            return None;
        }
    }
    if is_homomorphism(&t.algebra, c, &bar).is_some() {
        return None;
    }
    for x in 0..t.a.size() {
        for y in 0..t.b.size() {
            if bar[t.tensor[x][y]] != f(x, y) {
                return None;
            }
        }
    }
    Some(bar)
}

#[derive(Clone, Debug, Serialize)]
pub struct BihomReport {
    /// Failing variable and witness of the per-variable squares.
    pub per_variable: Option<String>,
    /// Witness of `c ∘ T(f) ∘ d ≠ f ∘ (a × b)`; `None` inside `Some` means it holds.
    pub single_square: Option<Option<String>>,
    pub is_bihom: bool,
    pub criteria_agree: bool,
}

/// Checks a table `f[a][b] ∈ C` both per variable and with the single square through `d`.
pub fn is_bihom(f: &[Vec<usize>], a: &FiniteAlgebra, b: &FiniteAlgebra, c: &FiniteAlgebra) -> Result<BihomReport> {
    let (na, nb) = (a.size(), b.size());
    let mut per_variable = None;
    for x in 0..na {
        if let Some(w) = is_homomorphism(b, c, &f[x]) {
            per_variable = Some(format!("not a homomorphism in the second variable at a = {}: {w}", a.label(x)));
            break;
        }
    }
    if per_variable.is_none() {
        for y in 0..nb {
            let col: Vec<usize> = (0..na).map(|x| f[x][y]).collect();
            if let Some(w) = is_homomorphism(a, c, &col) {
                per_variable = Some(format!("not a homomorphism in the first variable at b = {}: {w}", b.label(y)));
                break;
            }
        }
    }
    let m = Monad::new(&a.theory);
    let (ta, tb) = (m.t(na), m.t(nb));
    let single_square = match (ta, tb) {
        (Some(ta), Some(tb)) if ta.saturating_mul(tb) <= ENUM_LIMIT && m.t(na * nb).is_some() => {
            let mut w = None;
            'sq: for u in 0..ta {
                for v in 0..tb {
                    let lhs = a.theory.lift(na * nb, &|p| f[p / nb][p % nb], c, m.d(na, nb, u, v)?);
                    let rhs = f[a.action(u)][b.action(v)];
                    if lhs != rhs {
                        w = Some(format!("u = {u}, v = {v}"));
                        break 'sq;
                    }
                }
            }
            Some(w)
        }
        _ => None,
    };
    let is_bihom = per_variable.is_none();
    let criteria_agree = single_square.as_ref().is_none_or(|w| w.is_none() == is_bihom);
    Ok(BihomReport { per_variable, single_square, is_bihom, criteria_agree })
}

#[cfg(test)]
mod tests {
    use super::super::theory::Theory;
    use super::*;

    #[test]
    fn smash_of_pointed_sets() {
        for (p, q) in [(3, 3), (1, 4), (4, 2), (2, 2)] {
            let a = FiniteAlgebra::pointed(p).unwrap();
            let b = FiniteAlgebra::pointed(q).unwrap();
            assert_eq!(tensor_modules(&a, &b).unwrap().size(), (p - 1) * (q - 1) + 1);
            assert_eq!(tensor_brute(&a, &b).unwrap().0.size(), (p - 1) * (q - 1) + 1);
        }
    }

    #[test]
    fn coprime_cyclic_modules() {
        let a = FiniteAlgebra::cyclic_module(6, 2).unwrap();
        let b = FiniteAlgebra::cyclic_module(6, 3).unwrap();
        assert_eq!(tensor_modules(&a, &b).unwrap().size(), 1);
        let z2 = FiniteAlgebra::cyclic_module(2, 2).unwrap();
        assert_eq!(tensor_modules(&z2, &z2).unwrap().size(), 2);
        assert_eq!(tensor_brute(&z2, &z2).unwrap().0.size(), 2);
        let c = FiniteAlgebra::cyclic_module(4, 4).unwrap();
        let d = FiniteAlgebra::cyclic_module(4, 2).unwrap();
        assert_eq!(tensor_modules(&c, &d).unwrap().size(), 2);
    }

    #[test]
    fn free_unit_is_neutral() {
        for th in Theory::builtins() {
            let a = FiniteAlgebra::free(&th, 2).unwrap();
            let one = FiniteAlgebra::free(&th, 1).unwrap();
            assert_eq!(tensor_modules(&a, &one).unwrap().size(), a.size(), "{}", th.name());
        }
    }

    #[test]
    fn brute_agrees_on_small_suplattices() {
        let a = FiniteAlgebra::free(&Theory::SupLattice, 1).unwrap();
        let b = FiniteAlgebra::free(&Theory::SupLattice, 2).unwrap();
        assert_eq!(tensor_modules(&a, &b).unwrap().size(), tensor_brute(&a, &b).unwrap().0.size());
    }

    #[test]
    fn bihom_examples() {
        let a = FiniteAlgebra::pointed(3).unwrap();
        let b = FiniteAlgebra::pointed(3).unwrap();
        let t = tensor_modules(&a, &b).unwrap();
        let r = is_bihom(&t.tensor, &a, &b, &t.algebra).unwrap();
        assert!(r.is_bihom && r.criteria_agree);

        // f(a, b) = a into A is not a homomorphism in b
        let proj: Vec<Vec<usize>> = (0..3).map(|x| vec![x; 3]).collect();
        let r = is_bihom(&proj, &a, &b, &a).unwrap();
        assert!(!r.is_bihom && r.criteria_agree);
        assert!(r.per_variable.unwrap().contains("second variable"));

        let constant = vec![vec![0; 3]; 3];
        assert!(is_bihom(&constant, &a, &b, &a).unwrap().is_bihom);
    }

    #[test]
    fn factor_through_tensor() {
        let a = FiniteAlgebra::pointed(3).unwrap();
        let t = tensor_modules(&a, &a).unwrap();
        let f = |x: usize, y: usize| if x == 0 || y == 0 { 0 } else { 1 };
        let two = FiniteAlgebra::pointed(2).unwrap();
        let bar = factor(&t, &two, &f).unwrap();
        assert_eq!(bar.len(), 5);
        assert!(factor(&t, &a, &|x, _| x).is_none());
    }

    #[test]
    fn generators_of_free_algebras() {
        for th in Theory::builtins() {
            let f = FiniteAlgebra::free(&th, 3).unwrap();
            let expected: Vec<usize> = (0..3).map(|s| th.eta(3, s)).collect();
            assert_eq!(generating_set(&f), expected, "{}", th.name());
        }
    }
}
