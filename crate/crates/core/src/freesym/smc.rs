use std::fmt;

use serde::Serialize;

use super::FinCat;
use crate::error::{Error, Result};
use crate::perm::{self, Perm};

/// `(σ, f) : (X₁..X_n) → (Y₁..Y_n)` with `fᵢ : Xᵢ → Y_{σ(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmcMorphism {
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
    pub sigma: Perm,
    pub comps: Vec<usize>,
}

impl SmcMorphism {
    /// The morphism is determined by `σ` and its components.
    pub fn new(cat: &FinCat, sigma: Perm, comps: Vec<usize>) -> Result<Self> {
        if sigma.len() != comps.len() || !perm::is_perm(&sigma) {
            return Err(Error::Invalid(format!("{sigma:?} is not a permutation of {} letters", comps.len())));
        }
        if let Some(&f) = comps.iter().find(|&&f| f >= cat.num_arrows()) {
            return Err(Error::Invalid(format!("no morphism with index {f}")));
        }
        let src = comps.iter().map(|&f| cat.src(f)).collect();
        let mut dst = vec![0; comps.len()];
        for (i, &f) in comps.iter().enumerate() {
            dst[sigma[i]] = cat.dst(f);
        }
        Ok(SmcMorphism { src, dst, sigma, comps })
    }

    pub fn identity(cat: &FinCat, objs: &[usize]) -> Self {
        SmcMorphism { src: objs.to_vec(), dst: objs.to_vec(), sigma: perm::identity(objs.len()), comps: objs.iter().map(|&x| cat.id(x)).collect() }
    }

    /// `(σ, id)` out of `objs`: the symmetry moving factor `i` to position `σ(i)`.
    pub fn bare(cat: &FinCat, objs: &[usize], sigma: &[usize]) -> Result<Self> {
        Self::new(cat, sigma.to_vec(), objs.iter().map(|&x| cat.id(x)).collect())
    }

    /// `"1,0|e,u"`: one-line `σ`, then component names. Components may be omitted for a one-object
    /// category, meaning identities.
    pub fn parse(cat: &FinCat, s: &str) -> Result<Self> {
        let (p, c) = match s.split_once('|') {
            Some((p, c)) => (p, Some(c)),
            None => (s, None),
        };
        let sigma: Perm = if p.trim().is_empty() {
            Vec::new()
        } else {
            p.split(',').map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad permutation entry {x:?}")))).collect::<Result<_>>()?
        };
        let comps = match c {
            Some(c) if !c.trim().is_empty() => c.split(',').map(|n| cat.arrow_index(n.trim())).collect::<Result<Vec<_>>>()?,
            Some(_) => Vec::new(),
            None if cat.num_objects() == 1 => vec![cat.id(0); sigma.len()],
            None => return Err(Error::Parse("components required unless the category has one object".into())),
        };
        Self::new(cat, sigma, comps)
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn view(&self, cat: &FinCat) -> SmcView {
        SmcView {
            src: self.src.iter().map(|&x| cat.objects[x].clone()).collect(),
            dst: self.dst.iter().map(|&x| cat.objects[x].clone()).collect(),
            sigma: self.sigma.clone(),
            comps: self.comps.iter().map(|&f| cat.name(f).to_string()).collect(),
        }
    }
}

/// Named form of an [`SmcMorphism`] for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmcView {
    pub src: Vec<String>,
    pub dst: Vec<String>,
    pub sigma: Perm,
    pub comps: Vec<String>,
}

impl fmt::Display for SmcView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) -[{:?}; {}]-> ({})", self.src.join(","), self.sigma, self.comps.join(","), self.dst.join(","))
    }
}

/// `(τ, g) ∘ (σ, f) = (τσ, (g_{σ(i)} ∘ fᵢ))`.
pub fn smc_compose(cat: &FinCat, g: &SmcMorphism, f: &SmcMorphism) -> Result<SmcMorphism> {
    if g.src != f.dst {
        return Err(Error::Invalid(format!("cannot compose: target {:?} is not source {:?}", f.dst, g.src)));
    }
    let comps = (0..f.len())
        .map(|i| cat.compose(g.comps[f.sigma[i]], f.comps[i]).ok_or_else(|| Error::Internal("ill-typed component".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(SmcMorphism { src: f.src.clone(), dst: g.dst.clone(), sigma: perm::compose(&g.sigma, &f.sigma), comps })
}

/// Block sum `σ ⊕ τ` with concatenated components.
pub fn smc_tensor(f: &SmcMorphism, g: &SmcMorphism) -> SmcMorphism {
    let n = f.len();
    let sigma = f.sigma.iter().copied().chain(g.sigma.iter().map(|&j| j + n)).collect();
    SmcMorphism {
        src: [f.src.clone(), g.src.clone()].concat(),
        dst: [f.dst.clone(), g.dst.clone()].concat(),
        sigma,
        comps: [f.comps.clone(), g.comps.clone()].concat(),
    }
}

/// `(σ⁻¹, (f_{σ⁻¹(j)}⁻¹))`, when every component is invertible.
pub fn smc_inverse(cat: &FinCat, f: &SmcMorphism) -> Option<SmcMorphism> {
    let inv = perm::inverse(&f.sigma);
    let comps = inv.iter().map(|&i| cat.inverse(f.comps[i])).collect::<Option<Vec<_>>>()?;
    Some(SmcMorphism { src: f.dst.clone(), dst: f.src.clone(), sigma: inv, comps })
}

/// Every morphism of `S(C)` out of the tuple `src`.
pub fn morphisms_from(cat: &FinCat, src: &[usize]) -> Vec<SmcMorphism> {
    let mut comp_choices: Vec<Vec<usize>> = vec![Vec::new()];
    for &x in src {
        comp_choices = comp_choices.into_iter().flat_map(|c| cat.from_object(x).into_iter().map(move |f| [c.clone(), vec![f]].concat())).collect();
    }
    let mut out = Vec::new();
    for sigma in perm::all(src.len()) {
        for comps in &comp_choices {
            out.push(SmcMorphism::new(cat, sigma.clone(), comps.clone()).expect("well-typed by construction"));
        }
    }
    out
}

/// All object tuples of length `n`.
pub fn tuples(cat: &FinCat, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| (0..cat.num_objects()).map(move |x| [t.clone(), vec![x]].concat())).collect();
    }
    out
}

/// `Hom_ℙ(X^{⊗n}, X^{⊗m})`: `Σ_n` when `n = m`, empty otherwise.
pub fn perm_groupoid_hom(n: usize, m: usize) -> Vec<Perm> {
    if n == m { perm::all(n) } else { Vec::new() }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ComposeLawReport {
    pub max_len: usize,
    pub morphisms: usize,
    pub triples: usize,
    pub tensor_pairs: usize,
    pub witness: Option<String>,
}

impl ComposeLawReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Associativity and unit laws on every composable triple of tuples of length `≤ max_len`, and the
/// interchange law `(g ⊗ g') ∘ (f ⊗ f') = (g ∘ f) ⊗ (g' ∘ f')` on all pairs of total length `≤ max_len`.
pub fn check_compose_laws(cat: &FinCat, max_len: usize) -> ComposeLawReport {
    let mut r = ComposeLawReport { max_len, ..Default::default() };
    let from: Vec<Vec<Vec<SmcMorphism>>> =
        (0..=max_len).map(|n| tuples(cat, n).iter().map(|t| morphisms_from(cat, t)).collect()).collect();
    let out_of = |t: &[usize]| {
        let idx = t.iter().fold(0, |acc, &x| acc * cat.num_objects() + x);
        &from[t.len()][idx]
    };
    let show = |m: &SmcMorphism| m.view(cat).to_string();
    for n in 0..=max_len {
        for fs in &from[n] {
            for f in fs {
                r.morphisms += 1;
                let left = smc_compose(cat, &SmcMorphism::identity(cat, &f.dst), f).ok();
                let right = smc_compose(cat, f, &SmcMorphism::identity(cat, &f.src)).ok();
                if left.as_ref() != Some(f) || right.as_ref() != Some(f) {
                    r.witness.get_or_insert(format!("unit law fails at {}", show(f)));
                }
                for g in out_of(&f.dst) {
                    let gf = smc_compose(cat, g, f).expect("composable");
                    for h in out_of(&g.dst) {
                        r.triples += 1;
                        let a = smc_compose(cat, h, &gf).expect("composable");
                        let b = smc_compose(cat, &smc_compose(cat, h, g).expect("composable"), f).expect("composable");
                        if a != b {
                            r.witness.get_or_insert(format!("associativity fails at ({}, {}, {})", show(h), show(g), show(f)));
                        }
                    }
                }
            }
        }
    }
    for n1 in 0..=max_len {
        for n2 in 0..=max_len - n1 {
            for f in from[n1].iter().flatten() {
                for f2 in from[n2].iter().flatten() {
                    for g in out_of(&f.dst) {
                        for g2 in out_of(&f2.dst) {
                            r.tensor_pairs += 1;
                            let lhs = smc_compose(cat, &smc_tensor(g, g2), &smc_tensor(f, f2)).expect("composable");
                            let rhs = smc_tensor(&smc_compose(cat, g, f).expect("composable"), &smc_compose(cat, g2, f2).expect("composable"));
                            if lhs != rhs {
                                r.witness.get_or_insert(format!("interchange fails at {} ⊗ {}", show(f), show(f2)));
                            }
                        }
                    }
                }
            }
        }
    }
    r
}

/// Composition of bare symmetries over the one-object category against multiplication in `Σ_n`.
pub fn perm_groupoid_check(n: usize) -> bool {
    let cat = FinCat::point();
    let objs = vec![0; n];
    let hom = perm_groupoid_hom(n, n);
    hom.iter().all(|t| {
        hom.iter().all(|s| {
            let f = SmcMorphism::bare(&cat, &objs, s).expect("perm");
            let g = SmcMorphism::bare(&cat, &objs, t).expect("perm");
            smc_compose(&cat, &g, &f).map(|h| h.sigma) == Ok(perm::compose(t, s))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transpositions_on_one_object() {
        let cat = FinCat::point();
        let s = SmcMorphism::parse(&cat, "1,0,2").unwrap();
        let t = SmcMorphism::parse(&cat, "0,2,1").unwrap();
        let ts = smc_compose(&cat, &t, &s).unwrap();
        assert_eq!(ts.sigma, vec![2, 0, 1]);
        assert_eq!(ts.comps, vec![0, 0, 0]);
        assert_eq!(smc_compose(&cat, &s, &s).unwrap(), SmcMorphism::identity(&cat, &[0, 0, 0]));
    }

    #[test]
    fn tensor_of_identities() {
        let cat = FinCat::idempotent_arrow();
        let a = SmcMorphism::identity(&cat, &[0, 1]);
        let b = SmcMorphism::identity(&cat, &[1]);
        assert_eq!(smc_tensor(&a, &b), SmcMorphism::identity(&cat, &[0, 1, 1]));
        let f = SmcMorphism::parse(&cat, "1,0|u,id_B").unwrap();
        assert_eq!(smc_tensor(&f, &b).sigma, vec![1, 0, 2]);
        assert_eq!(smc_tensor(&b, &f).sigma, vec![0, 2, 1]);
    }

    #[test]
    fn typing() {
        let cat = FinCat::idempotent_arrow();
        let f = SmcMorphism::parse(&cat, "1,0|u,e").unwrap();
        // u : A → B lands in slot 1, e : A → A in slot 0
        assert_eq!((f.src.clone(), f.dst.clone()), (vec![0, 0], vec![0, 1]));
        let g = SmcMorphism::parse(&cat, "0,1|e,id_B").unwrap();
        assert!(smc_compose(&cat, &g, &f).is_ok());
        assert!(smc_compose(&cat, &f, &g).is_err());
        assert!(SmcMorphism::parse(&cat, "0,0|e,e").is_err());
        assert!(SmcMorphism::parse(&cat, "0,1").is_err());
        assert!(SmcMorphism::parse(&cat, "0|w").is_err());
    }

    #[test]
    fn inverses() {
        let cat = FinCat::cyclic(3).unwrap();
        let f = SmcMorphism::parse(&cat, "2,0,1|g1,g2,id_X").unwrap();
        let inv = smc_inverse(&cat, &f).unwrap();
        let id = SmcMorphism::identity(&cat, &[0, 0, 0]);
        assert_eq!(smc_compose(&cat, &f, &inv).unwrap(), id);
        assert_eq!(smc_compose(&cat, &inv, &f).unwrap(), id);
        let cat = FinCat::idempotent_arrow();
        assert!(smc_inverse(&cat, &SmcMorphism::parse(&cat, "0|e").unwrap()).is_none());
    }

    #[test]
    fn permutation_groupoid() {
        assert_eq!(perm_groupoid_hom(3, 3).len(), 6);
        assert!(perm_groupoid_hom(2, 3).is_empty());
        assert_eq!(perm_groupoid_hom(0, 0), vec![Vec::<usize>::new()]);
        assert!((0..=4).all(perm_groupoid_check));
    }

    #[test]
    fn exhaustive_laws() {
        for (cat, n) in [(FinCat::point(), 4), (FinCat::idempotent_arrow(), 2), (FinCat::cyclic(2).unwrap(), 3), (FinCat::discrete(2), 3)] {
            let r = check_compose_laws(&cat, n);
            assert!(r.passed(), "{:?}", r.witness);
            assert!(r.triples > 0 && r.tensor_pairs > 0);
        }
    }
}
