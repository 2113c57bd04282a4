use std::collections::BTreeSet;

use serde::Serialize;

use super::monad::Monad;
use super::tensor::{express, factor, generating_set, tensor_modules, TensorProduct};
use super::theory::{is_homomorphism, Algebra, FiniteAlgebra, FreeAlgebra, Theory, ENUM_LIMIT};
use crate::error::{Error, Result};
use crate::perm;

/// All homomorphisms `A → C`, found by assigning the generators of `A`.
pub fn homs(a: &dyn Algebra, c: &dyn Algebra) -> Result<Vec<Vec<usize>>> {
    let gens = generating_set(a);
    let terms = express(a, &gens)?;
    let free = FreeAlgebra::new(a.theory(), gens.len())?;
    let count = c.size().checked_pow(gens.len() as u32).filter(|&k| k <= ENUM_LIMIT);
    let count = count.ok_or_else(|| Error::Unsupported("too many generator assignments".into()))?;
    let mut out = Vec::new();
    for idx in 0..count {
        let g = perm::index_tuple(idx, c.size(), gens.len());
        let h: Vec<usize> = terms.iter().map(|&u| free.lift(&|s| g[s], c, u)).collect();
        if is_homomorphism(a, c, &h).is_none() {
            out.push(h);
        }
    }
    Ok(out)
}

/// All bihomomorphisms `A × B → C` as tables `f[a][b]`: rows are homomorphisms in `b`, columns in `a`.
pub fn bihoms(a: &FiniteAlgebra, b: &FiniteAlgebra, c: &FiniteAlgebra) -> Result<Vec<Vec<Vec<usize>>>> {
    let rows = homs(b, c)?;
    let na = a.size();
    let count = rows.len().checked_pow(na as u32).filter(|&k| k <= ENUM_LIMIT);
    let count = count.ok_or_else(|| Error::Unsupported("too many candidate bihomomorphisms".into()))?;
    let mut out = Vec::new();
    for idx in 0..count {
        let choice = perm::index_tuple(idx, rows.len(), na);
        let f: Vec<Vec<usize>> = choice.iter().map(|&r| rows[r].clone()).collect();
        let columns_ok = (0..b.size()).all(|y| {
            let col: Vec<usize> = (0..na).map(|x| f[x][y]).collect();
            is_homomorphism(a, c, &col).is_none()
        });
        if columns_ok {
            out.push(f);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalReport {
    pub sizes: [usize; 4],
    pub bihoms: usize,
    pub homs: usize,
    /// `h ↦ h ∘ ⊗` is injective and its image is exactly the bihomomorphisms.
    pub bijection: bool,
    /// `factor` recovers `h` from `h ∘ ⊗` for every homomorphism `h`.
    pub factorization: bool,
    pub passed: bool,
}

pub fn verify_universal(a: &FiniteAlgebra, b: &FiniteAlgebra, c: &FiniteAlgebra) -> Result<UniversalReport> {
    let t = tensor_modules(a, b)?;
    verify_universal_with(&t, c)
}

pub fn verify_universal_with(t: &TensorProduct, c: &FiniteAlgebra) -> Result<UniversalReport> {
    let bi = bihoms(&t.a, &t.b, c)?;
    let hs = homs(&t.algebra, c)?;
    let composed: Vec<Vec<Vec<usize>>> =
        hs.iter().map(|h| t.tensor.iter().map(|row| row.iter().map(|&w| h[w]).collect()).collect()).collect();
    let image: BTreeSet<&Vec<Vec<usize>>> = composed.iter().collect();
    let targets: BTreeSet<&Vec<Vec<usize>>> = bi.iter().collect();
    let bijection = image.len() == composed.len() && image == targets;
    let factorization = hs.iter().zip(&composed).all(|(h, f)| factor(t, c, &|x, y| f[x][y]).as_ref() == Some(h));
    Ok(UniversalReport {
        sizes: [t.a.size(), t.b.size(), t.size(), c.size()],
        bihoms: bi.len(),
        homs: hs.len(),
        bijection,
        factorization,
        passed: bijection && factorization && bi.len() == hs.len(),
    })
}

fn relabel(alg: &FiniteAlgebra, p: &[usize]) -> Vec<usize> {
    let n = alg.size();
    let mut out = Vec::new();
    for (k, sig) in alg.theory.ops().iter().enumerate() {
        let len = n.pow(sig.arity as u32);
        let mut t = vec![0; len];
        for (idx, &v) in alg.tables[k].iter().enumerate() {
            let args = perm::index_tuple(idx, n, sig.arity);
            let moved: Vec<usize> = args.iter().map(|&x| p[x]).collect();
            t[perm::tuple_index(&moved, n)] = p[v];
        }
        out.extend(t);
    }
    out
}

/// Lexicographically least relabelled table vector; equal for isomorphic algebras.
pub fn canonical_form(alg: &FiniteAlgebra) -> Vec<usize> {
    perm::all(alg.size()).iter().map(|p| relabel(alg, p)).min().unwrap_or_default()
}

/// Every algebra on `n` elements up to isomorphism, by exhaustive search over operation tables.
pub fn small_algebras(theory: &Theory, n: usize) -> Result<Vec<FiniteAlgebra>> {
    let ops = theory.ops();
    let lens: Vec<usize> = ops.iter().map(|s| n.pow(s.arity as u32)).collect();
    let entries: usize = lens.iter().sum();
    if theory.ops().iter().any(|s| s.arity == 0) && n == 0 {
        return Ok(Vec::new());
    }
    let total = n.checked_pow(entries as u32).filter(|&k| k <= 1 << 22);
    let total = total.ok_or_else(|| Error::Unsupported(format!("too many {} tables on {n} elements", theory.name())))?;
    let carrier: Vec<String> = (0..n).map(|x| format!("e{x}")).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut flat = vec![0usize; entries];
    for idx in 0..total {
        if idx > 0 {
            // odometer step
            for slot in flat.iter_mut() {
                *slot += 1;
                if *slot < n {
                    break;
                }
                *slot = 0;
            }
        }
        let mut tables = Vec::with_capacity(ops.len());
        let mut at = 0;
        for &len in &lens {
            tables.push(flat[at..at + len].to_vec());
            at += len;
        }
        let alg = FiniteAlgebra { theory: theory.clone(), carrier: carrier.clone(), tables };
        if theory.axiom_violation(&alg).is_some() {
            continue;
        }
        if seen.insert(canonical_form(&alg)) {
            out.push(alg);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoCheck {
    pub name: String,
    pub source_size: usize,
    pub target_size: usize,
    pub homomorphism: bool,
    pub bijective: bool,
    pub diagram: bool,
    pub witness: Option<String>,
}

impl IsoCheck {
    pub fn passed(&self) -> bool {
        self.homomorphism && self.bijective && self.diagram
    }

    fn new(name: &str, src: &dyn Algebra, dst: &dyn Algebra, map: &[usize], diagram: Option<String>) -> Self {
        let hom = is_homomorphism(src, dst, map);
        let bijective = src.size() == dst.size() && map.iter().collect::<BTreeSet<_>>().len() == map.len();
        let witness = hom
            .clone()
            .or_else(|| (!bijective).then(|| format!("map of size {} into {} is not a bijection", src.size(), dst.size())))
            .or_else(|| diagram.clone());
        IsoCheck {
            name: name.into(),
            source_size: src.size(),
            target_size: dst.size(),
            homomorphism: hom.is_none(),
            bijective,
            diagram: diagram.is_none(),
            witness,
        }
    }

    fn failed(name: &str, witness: String) -> Self {
        IsoCheck {
            name: name.into(),
            source_size: 0,
            target_size: 0,
            homomorphism: false,
            bijective: false,
            diagram: false,
            witness: Some(witness),
        }
    }
}

/// `F(X × Y) → F(X) ⊗ F(Y)` extending `(x, y) ↦ ηx ⊗ ηy`; the diagram is `φ ∘ d = ⊗` on all of `T(X) × T(Y)`.
pub fn free_tensor_iso(theory: &Theory, nx: usize, ny: usize) -> Result<IsoCheck> {
    let fx = FiniteAlgebra::free(theory, nx)?;
    let fy = FiniteAlgebra::free(theory, ny)?;
    let t = tensor_modules(&fx, &fy)?;
    let fxy = FreeAlgebra::new(theory, nx * ny)?;
    let gen = |p: usize| t.tensor[theory.eta(nx, p / ny)][theory.eta(ny, p % ny)];
    let phi: Vec<usize> = (0..fxy.size).map(|u| fxy.lift(&gen, &t.algebra, u)).collect();
    let m = Monad::new(theory);
    let mut diagram = None;
    'outer: for u in 0..fx.size() {
        for v in 0..fy.size() {
            if phi[m.d(nx, ny, u, v)?] != t.tensor[u][v] {
                diagram = Some(format!("φ(d({}, {})) ≠ {} ⊗ {}", fx.label(u), fy.label(v), fx.label(u), fy.label(v)));
                break 'outer;
            }
        }
    }
    Ok(IsoCheck::new(&format!("free-tensor {nx}x{ny}"), &fxy, &t.algebra, &phi, diagram))
}

/// `A ⊗ B → B ⊗ A` with `a ⊗ b ↦ b ⊗ a`; the diagram is that the reverse map is its inverse.
pub fn symmetry_iso(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<IsoCheck> {
    let ab = tensor_modules(a, b)?;
    let ba = tensor_modules(b, a)?;
    let Some(s) = factor(&ab, &ba.algebra, &|x, y| ba.tensor[y][x]) else {
        return Ok(IsoCheck::failed("symmetry", "(a, b) ↦ b ⊗ a does not factor".into()));
    };
    let Some(s2) = factor(&ba, &ab.algebra, &|y, x| ab.tensor[x][y]) else {
        return Ok(IsoCheck::failed("symmetry", "(b, a) ↦ a ⊗ b does not factor".into()));
    };
    let diagram = (0..ab.size()).find(|&w| s2[s[w]] != w).map(|w| format!("S ∘ S ≠ id at {}", ab.algebra.label(w)));
    Ok(IsoCheck::new("symmetry", &ab.algebra, &ba.algebra, &s, diagram))
}

/// `(A ⊗ B) ⊗ C → A ⊗ (B ⊗ C)` with `(a ⊗ b) ⊗ c ↦ a ⊗ (b ⊗ c)`, built by factoring twice.
pub fn associativity_iso(a: &FiniteAlgebra, b: &FiniteAlgebra, c: &FiniteAlgebra) -> Result<IsoCheck> {
    let ab = tensor_modules(a, b)?;
    let bc = tensor_modules(b, c)?;
    let ab_c = tensor_modules(&ab.algebra, c)?;
    let a_bc = tensor_modules(a, &bc.algebra)?;
    // for fixed c, (a, b) ↦ a ⊗ (b ⊗ c) factors through A ⊗ B
    let mut f = vec![vec![0; c.size()]; ab.size()];
    for z in 0..c.size() {
        let Some(col) = factor(&ab, &a_bc.algebra, &|x, y| a_bc.tensor[x][bc.tensor[y][z]]) else {
            return Ok(IsoCheck::failed("associativity", format!("slice at c = {} does not factor", c.label(z))));
        };
        for (w, &v) in col.iter().enumerate() {
            f[w][z] = v;
        }
    }
    let Some(alpha) = factor(&ab_c, &a_bc.algebra, &|w, z| f[w][z]) else {
        return Ok(IsoCheck::failed("associativity", "(a ⊗ b, c) ↦ a ⊗ (b ⊗ c) does not factor".into()));
    };
    let mut diagram = None;
    'outer: for x in 0..a.size() {
        for y in 0..b.size() {
            for z in 0..c.size() {
                if alpha[ab_c.tensor[ab.tensor[x][y]][z]] != a_bc.tensor[x][bc.tensor[y][z]] {
                    diagram = Some(format!("({} ⊗ {}) ⊗ {}", a.label(x), b.label(y), c.label(z)));
                    break 'outer;
                }
            }
        }
    }
    Ok(IsoCheck::new("associativity", &ab_c.algebra, &a_bc.algebra, &alpha, diagram))
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub theory: String,
    pub checks: Vec<IsoCheck>,
    pub passed: bool,
}

pub fn verify_structure_isos(
    theory: &Theory,
    nx: usize,
    ny: usize,
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    c: &FiniteAlgebra,
) -> Result<StructureReport> {
    let checks = vec![free_tensor_iso(theory, nx, ny)?, symmetry_iso(a, b)?, associativity_iso(a, b, c)?];
    let passed = checks.iter().all(IsoCheck::passed);
    Ok(StructureReport { theory: theory.name(), checks, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExhaustiveReport {
    pub theory: String,
    pub max_size: usize,
    pub algebras: usize,
    pub triples: usize,
    pub failures: Vec<String>,
}

/// `verify_universal` on every triple of algebras with at most `max_size` elements, up to isomorphism.
pub fn verify_universal_exhaustive(theory: &Theory, max_size: usize) -> Result<ExhaustiveReport> {
    let mut algs = Vec::new();
    for n in 0..=max_size {
        algs.extend(small_algebras(theory, n)?);
    }
    let mut triples = 0;
    let mut failures = Vec::new();
    for a in &algs {
        for b in &algs {
            let t = tensor_modules(a, b)?;
            for c in &algs {
                triples += 1;
                let r = verify_universal_with(&t, c)?;
                if !r.passed {
                    failures.push(format!("{:?} {:?} {:?}: {} bihoms, {} homs", a.tables, b.tables, c.tables, r.bihoms, r.homs));
                }
            }
        }
    }
    Ok(ExhaustiveReport { theory: theory.name(), max_size, algebras: algs.len(), triples, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_small_algebras() {
        let count = |th: &Theory, n| small_algebras(th, n).unwrap().len();
        assert_eq!(count(&Theory::Pointed, 3), 1);
        assert_eq!(count(&Theory::Pointed, 0), 0);
        // sup-lattices with at most three elements are chains
        assert_eq!(count(&Theory::SupLattice, 3), 1);
        assert_eq!(count(&Theory::Semilattice, 0), 1);
        assert_eq!(count(&Theory::Semilattice, 3), 2);
        assert_eq!(count(&Theory::ModN(2), 2), 1);
        assert_eq!(count(&Theory::ModN(2), 3), 0);
    }

    #[test]
    fn universal_counts() {
        let z2 = FiniteAlgebra::cyclic_module(2, 2).unwrap();
        let r = verify_universal(&z2, &z2, &z2).unwrap();
        assert_eq!((r.bihoms, r.homs), (2, 2));
        assert!(r.passed);
        let zero = FiniteAlgebra::cyclic_module(2, 1).unwrap();
        let r = verify_universal(&z2, &z2, &zero).unwrap();
        assert_eq!((r.bihoms, r.homs), (1, 1));
        let p3 = FiniteAlgebra::pointed(3).unwrap();
        let p2 = FiniteAlgebra::pointed(2).unwrap();
        assert!(verify_universal(&p3, &p2, &p3).unwrap().passed);
    }

    #[test]
    fn structure_isos() {
        let p = FiniteAlgebra::pointed(3).unwrap();
        let r = verify_structure_isos(&Theory::Pointed, 2, 2, &p, &p, &p).unwrap();
        assert!(r.passed, "{:?}", r.checks);
        let sup = free_tensor_iso(&Theory::SupLattice, 2, 2).unwrap();
        assert!(sup.passed());
        assert_eq!((sup.source_size, sup.target_size), (16, 16));
        let z4 = FiniteAlgebra::cyclic_module(4, 4).unwrap();
        let z2 = FiniteAlgebra::cyclic_module(4, 2).unwrap();
        let assoc = associativity_iso(&z4, &z2, &z2).unwrap();
        assert!(assoc.passed());
        assert_eq!(assoc.source_size, 2);
    }

    #[test]
    fn exhaustive_on_pointed_sets() {
        let r = verify_universal_exhaustive(&Theory::Pointed, 3).unwrap();
        assert_eq!(r.algebras, 3);
        assert_eq!(r.triples, 27);
        assert!(r.failures.is_empty(), "{:?}", r.failures);
    }
}
