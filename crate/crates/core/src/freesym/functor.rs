use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::smc::{morphisms_from, smc_compose, smc_tensor, tuples, SmcMorphism};
use super::FinCat;
use crate::error::{Error, Result};
use crate::exactring::{rat, Field, Rational};
use crate::linalg::FieldMatrix;
use crate::perm;

/// `F : C → Mat_ℚ`: a dimension per object and a `dim(dst) × dim(src)` matrix per morphism.
#[derive(Clone, Debug)]
pub struct MatrixFunctor {
    pub dims: Vec<usize>,
    pub mats: Vec<FieldMatrix>,
}

/// `{"objects": {"A": 2}, "morphisms": {"e": [["1","0"],["0","0"]]}}`; identities may be omitted,
/// entries are integers or rational strings.
#[derive(Deserialize)]
struct FunctorLiteral {
    objects: BTreeMap<String, usize>,
    #[serde(default)]
    morphisms: BTreeMap<String, Vec<Vec<serde_json::Value>>>,
}

fn entry(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(rat).ok_or_else(|| Error::Parse(format!("non-integer number {n}; quote rationals"))),
        serde_json::Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}"))),
        other => Err(Error::Parse(format!("bad matrix entry {other}"))),
    }
}

impl MatrixFunctor {
    /// Checks shapes, `F(id) = I`, and `F(g ∘ f) = F(g) F(f)` on every composable pair.
    pub fn new(cat: &FinCat, dims: Vec<usize>, mats: Vec<FieldMatrix>) -> Result<Self> {
        if dims.len() != cat.num_objects() || mats.len() != cat.num_arrows() {
            return Err(Error::Invalid("functor must assign every object and morphism".into()));
        }
        for (f, m) in mats.iter().enumerate() {
            if m.rows != dims[cat.dst(f)] || m.cols != dims[cat.src(f)] {
                return Err(Error::Invalid(format!("F({}) must be {}×{}", cat.name(f), dims[cat.dst(f)], dims[cat.src(f)])));
            }
        }
        for x in 0..cat.num_objects() {
            if mats[cat.id(x)] != FieldMatrix::identity(&Field::Rationals, dims[x]) {
                return Err(Error::Invalid(format!("non-functorial: F({}) is not the identity", cat.name(cat.id(x)))));
            }
        }
        for g in 0..cat.num_arrows() {
            for f in 0..cat.num_arrows() {
                if let Some(gf) = cat.compose(g, f) {
                    if mats[g].mul(&mats[f]) != mats[gf] {
                        return Err(Error::Invalid(format!("non-functorial: F({} ∘ {}) ≠ F({}) F({})", cat.name(g), cat.name(f), cat.name(g), cat.name(f))));
                    }
                }
            }
        }
        Ok(MatrixFunctor { dims, mats })
    }

    pub fn from_json(cat: &FinCat, s: &str) -> Result<Self> {
        let lit: FunctorLiteral = serde_json::from_str(s).map_err(|e| Error::Parse(format!("functor literal: {e}")))?;
        let mut dims = vec![None; cat.num_objects()];
        for (name, &d) in &lit.objects {
            dims[cat.object_index(name)?] = Some(d);
        }
        let dims = dims
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| Error::Parse(format!("no dimension for object {:?}", cat.objects[i]))))
            .collect::<Result<Vec<_>>>()?;
        let mut mats: Vec<Option<FieldMatrix>> = vec![None; cat.num_arrows()];
        for (name, rows) in &lit.morphisms {
            let f = cat.arrow_index(name)?;
            let data = rows.iter().map(|r| r.iter().map(entry).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
            if data.iter().any(|r| r.len() != dims[cat.src(f)]) {
                return Err(Error::Parse(format!("F({name}) rows must have length {}", dims[cat.src(f)])));
            }
            mats[f] = Some(FieldMatrix::with_shape(&Field::Rationals, data.len(), dims[cat.src(f)], data));
        }
        let mats = mats
            .into_iter()
            .enumerate()
            .map(|(f, m)| match m {
                Some(m) => Ok(m),
                None if cat.is_identity(f) => Ok(FieldMatrix::identity(&Field::Rationals, dims[cat.src(f)])),
                None => Err(Error::Parse(format!("no matrix for {:?}", cat.name(f)))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(cat, dims, mats)
    }

    /// On [`FinCat::idempotent_arrow`]: `A ↦ ℚ²`, `B ↦ ℚ³`, `e ↦ diag(1, 0)`, `u ↦ [v | 0]` with `v = (1, 2, 3)`.
    pub fn idempotent_example(cat: &FinCat) -> Result<Self> {
        Self::from_json(cat, r#"{"objects":{"A":2,"B":3},"morphisms":{"e":[[1,0],[0,0]],"u":[[1,0],[2,0],[3,0]]}}"#)
    }

    /// Every object to `ℚ^d`, every morphism to the identity.
    pub fn constant(cat: &FinCat, d: usize) -> Result<Self> {
        let mats = (0..cat.num_arrows()).map(|_| FieldMatrix::identity(&Field::Rationals, d)).collect();
        Self::new(cat, vec![d; cat.num_objects()], mats)
    }
}

/// `A ⊗ B` with the first factor's index most significant.
pub fn kronecker(a: &FieldMatrix, b: &FieldMatrix) -> FieldMatrix {
    let mut out = FieldMatrix::zero(&Field::Rationals, a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            if a.data[i][j] == rat(0) {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.data[i * b.rows + k][j * b.cols + l] = &a.data[i][j] * &b.data[k][l];
                }
            }
        }
    }
    out
}

/// The symmetry `V₁ ⊗ … ⊗ V_n → W₁ ⊗ … ⊗ W_n`, `W_{σ(i)} = Vᵢ`, sending `v₁ ⊗ … ⊗ v_n` to the tensor
/// with `vᵢ` in slot `σ(i)`.
pub fn permutation_matrix(dims: &[usize], sigma: &[usize]) -> FieldMatrix {
    let n = dims.len();
    let mut out_dims = vec![0; n];
    for i in 0..n {
        out_dims[sigma[i]] = dims[i];
    }
    let size: usize = dims.iter().product();
    let mut m = FieldMatrix::zero(&Field::Rationals, size, size);
    let inv = perm::inverse(sigma);
    let mut a = vec![0usize; n];
    for col in 0..size {
        let mut rest = col;
        for i in (0..n).rev() {
            a[i] = rest % dims[i];
            rest /= dims[i];
        }
        let row = (0..n).fold(0, |acc, j| acc * out_dims[j] + a[inv[j]]);
        m.data[row][col] = rat(1);
    }
    m
}

/// Strong symmetric monoidal extension `F̄ : S(C) → Mat_ℚ`.
pub struct Extension<'a> {
    pub cat: &'a FinCat,
    pub functor: &'a MatrixFunctor,
}

pub fn extend_functor<'a>(cat: &'a FinCat, functor: &'a MatrixFunctor) -> Extension<'a> {
    Extension { cat, functor }
}

impl Extension<'_> {
    /// `dim F(X₁) ⊗ … ⊗ F(X_n)`.
    pub fn on_objects(&self, objs: &[usize]) -> usize {
        objs.iter().map(|&x| self.functor.dims[x]).product()
    }

    /// `P_σ ∘ (F(f₁) ⊗ … ⊗ F(f_n))`.
    pub fn on_morphism(&self, f: &SmcMorphism) -> FieldMatrix {
        let block = f.comps.iter().fold(FieldMatrix::identity(&Field::Rationals, 1), |acc, &c| kronecker(&acc, &self.functor.mats[c]));
        let images: Vec<usize> = f.comps.iter().map(|&c| self.functor.dims[self.cat.dst(c)]).collect();
        permutation_matrix(&images, &f.sigma).mul(&block)
    }

    /// Product of the images of `s_{w₁} ∘ … ∘ s_{w_k}` starting at `objs`, one generator at a time.
    pub fn word_image(&self, objs: &[usize], word: &[usize]) -> FieldMatrix {
        let n = objs.len();
        let mut cur = objs.to_vec();
        let mut m = FieldMatrix::identity(&Field::Rationals, self.on_objects(objs));
        for &i in word.iter().rev() {
            let s = SmcMorphism::bare(self.cat, &cur, &perm::adjacent(n, i)).expect("transposition");
            m = self.on_morphism(&s).mul(&m);
            cur = s.dst;
        }
        m
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxeterReport {
    pub max_len: usize,
    pub relations: usize,
    pub words: usize,
    pub witness: Option<String>,
}

impl CoxeterReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// On every object tuple of length `≤ max_len`: `s_i² = 1`, braid and far-commutation relations among the
/// images of adjacent transpositions, and `F̄(σ, id)` equal to the product along a reduced word for `σ`.
pub fn coxeter_check(ext: &Extension, max_len: usize) -> CoxeterReport {
    let mut r = CoxeterReport { max_len, relations: 0, words: 0, witness: None };
    for n in 0..=max_len {
        let mut rels: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for i in 0..n.saturating_sub(1) {
            rels.push((vec![i, i], vec![]));
            if i + 2 < n {
                rels.push((vec![i, i + 1, i], vec![i + 1, i, i + 1]));
            }
            for j in i + 2..n.saturating_sub(1) {
                rels.push((vec![i, j], vec![j, i]));
            }
        }
        for objs in tuples(ext.cat, n) {
            for (u, v) in &rels {
                r.relations += 1;
                if ext.word_image(&objs, u) != ext.word_image(&objs, v) {
                    r.witness.get_or_insert(format!("relation {u:?} = {v:?} fails at {objs:?}"));
                }
            }
            for sigma in perm::all(n) {
                r.words += 1;
                let direct = ext.on_morphism(&SmcMorphism::bare(ext.cat, &objs, &sigma).expect("perm"));
                if direct != ext.word_image(&objs, &perm::coxeter_word(&sigma)) {
                    r.witness.get_or_insert(format!("F̄({sigma:?}) differs from its word at {objs:?}"));
                }
            }
        }
    }
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub seed: u64,
    pub pairs: usize,
    pub identities: bool,
    pub functorial: bool,
    pub monoidal: bool,
    pub witness: Option<String>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.identities && self.functorial && self.monoidal
    }
}

fn random_from(cat: &FinCat, src: &[usize], rng: &mut ChaCha8Rng) -> SmcMorphism {
    let mut sigma = perm::identity(src.len());
    for i in (1..sigma.len()).rev() {
        sigma.swap(i, rng.gen_range(0..=i));
    }
    let comps = src
        .iter()
        .map(|&x| {
            let out = cat.from_object(x);
            out[rng.gen_range(0..out.len())]
        })
        .collect();
    SmcMorphism::new(cat, sigma, comps).expect("well-typed by construction")
}

/// `F̄(g ∘ f) = F̄(g) F̄(f)` and `F̄(f ⊗ g) = F̄(f) ⊗ F̄(g)` on `pairs` random composable pairs of length
/// `≤ max_len`, plus `F̄(id) = I` on every tuple of length `≤ max_len`.
pub fn extension_check(ext: &Extension, seed: u64, pairs: usize, max_len: usize) -> ExtensionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = ExtensionReport { seed, pairs, identities: true, functorial: true, monoidal: true, witness: None };
    let cat = ext.cat;
    for n in 0..=max_len {
        for objs in tuples(cat, n) {
            if ext.on_morphism(&SmcMorphism::identity(cat, &objs)) != FieldMatrix::identity(&Field::Rationals, ext.on_objects(&objs)) {
                r.identities = false;
                r.witness.get_or_insert(format!("F̄(id) ≠ I at {objs:?}"));
            }
        }
    }
    for _ in 0..pairs {
        let n = rng.gen_range(0..=max_len);
        let src: Vec<usize> = (0..n).map(|_| rng.gen_range(0..cat.num_objects())).collect();
        let f = random_from(cat, &src, &mut rng);
        let g = random_from(cat, &f.dst, &mut rng);
        let gf = smc_compose(cat, &g, &f).expect("composable");
        if ext.on_morphism(&gf) != ext.on_morphism(&g).mul(&ext.on_morphism(&f)) {
            r.functorial = false;
            r.witness.get_or_insert(format!("F̄(g ∘ f) ≠ F̄(g) F̄(f) for f = {}, g = {}", f.view(cat), g.view(cat)));
        }
        if ext.on_morphism(&smc_tensor(&f, &g)) != kronecker(&ext.on_morphism(&f), &ext.on_morphism(&g)) {
            r.monoidal = false;
            r.witness.get_or_insert(format!("F̄(f ⊗ g) ≠ F̄(f) ⊗ F̄(g) for f = {}, g = {}", f.view(cat), g.view(cat)));
        }
    }
    r
}

/// Exhaustive variant of the functoriality check over all composable pairs of length `≤ max_len`.
pub fn extension_check_exhaustive(ext: &Extension, max_len: usize) -> bool {
    let cat = ext.cat;
    (0..=max_len).all(|n| {
        tuples(cat, n).iter().all(|objs| {
            morphisms_from(cat, objs).iter().all(|f| {
                morphisms_from(cat, &f.dst).iter().all(|g| {
                    ext.on_morphism(&smc_compose(cat, g, f).expect("composable")) == ext.on_morphism(g).mul(&ext.on_morphism(f))
                })
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> FieldMatrix {
        FieldMatrix::from_rows(&Field::Rationals, rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn transposition_is_swap() {
        let cat = FinCat::point();
        let f = MatrixFunctor::constant(&cat, 2).unwrap();
        let ext = extend_functor(&cat, &f);
        let swap = ext.on_morphism(&SmcMorphism::parse(&cat, "1,0").unwrap());
        assert_eq!(swap, m(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]));
        let id = ext.on_morphism(&SmcMorphism::identity(&cat, &[0, 0, 0]));
        assert_eq!(id, FieldMatrix::identity(&Field::Rationals, 8));
    }

    #[test]
    fn symmetry_between_different_dims() {
        let cat = FinCat::idempotent_arrow();
        let f = MatrixFunctor::idempotent_example(&cat).unwrap();
        let ext = extend_functor(&cat, &f);
        // ℚ² ⊗ ℚ³ → ℚ³ ⊗ ℚ², e_a ⊗ e_b ↦ e_b ⊗ e_a
        let s = ext.on_morphism(&SmcMorphism::parse(&cat, "1,0|id_A,id_B").unwrap());
        for a in 0..2 {
            for b in 0..3 {
                assert_eq!(s.data[b * 2 + a][a * 3 + b], rat(1));
            }
        }
        assert_eq!(s.mul(&s.transpose()), FieldMatrix::identity(&Field::Rationals, 6));
    }

    #[test]
    fn kronecker_shape() {
        let k = kronecker(&m(&[&[1, 2]]), &m(&[&[0], &[3]]));
        assert_eq!(k, m(&[&[0, 0], &[3, 6]]));
    }

    #[test]
    fn rejects_non_functors() {
        let cat = FinCat::idempotent_arrow();
        let bad = r#"{"objects":{"A":2,"B":3},"morphisms":{"e":[[2,0],[0,2]],"u":[[1,0],[2,0],[3,0]]}}"#;
        assert!(MatrixFunctor::from_json(&cat, bad).unwrap_err().to_string().contains("non-functorial"));
        let bad = r#"{"objects":{"A":2,"B":3},"morphisms":{"e":[[1,0],[0,0]],"u":[[0,1],[0,2],[0,3]]}}"#;
        assert!(MatrixFunctor::from_json(&cat, bad).is_err());
        assert!(MatrixFunctor::from_json(&cat, r#"{"objects":{"A":2}}"#).is_err());
    }

    #[test]
    fn random_pairs_and_coxeter() {
        let cat = FinCat::idempotent_arrow();
        let f = MatrixFunctor::idempotent_example(&cat).unwrap();
        let ext = extend_functor(&cat, &f);
        let r = extension_check(&ext, 7, 50, 3);
        assert!(r.passed(), "{:?}", r.witness);
        let c = coxeter_check(&ext, 4);
        assert!(c.passed(), "{:?}", c.witness);
        assert!(extension_check_exhaustive(&ext, 2));
    }

    #[test]
    fn group_representation() {
        // C_3 acting on ℚ² by rotation of order three
        let cat = FinCat::cyclic(3).unwrap();
        let f = MatrixFunctor::from_json(&cat, r#"{"objects":{"X":2},"morphisms":{"g1":[[0,-1],[1,-1]],"g2":[[-1,1],[-1,0]]}}"#).unwrap();
        let ext = extend_functor(&cat, &f);
        assert!(extension_check(&ext, 1, 30, 3).passed());
        assert!(coxeter_check(&ext, 3).passed());
    }
}
