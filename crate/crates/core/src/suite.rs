//! Per-module property suites behind `check`: one 64-bit seed, deterministic JSON.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::derham::{derham_complex, euler_contraction_check, omega1_comparison, FpAlgebra};
use crate::error::{Error, Result};
use crate::exactring::{groebner_basis, jacobian, parse_ring, rat, ratio, reduce, Field, Polynomial, Rational, RingDescriptor};
use crate::fpmod::{Structure, line_classify, oid_decompose, residue_rank, symmetry, ModMorphism, ModulePresentation};
use crate::freesym::{check_compose_laws, coxeter_check as smc_coxeter, extend_functor, extension_check, perm_groupoid_check, FinCat, MatrixFunctor};
use crate::localize::{epi_check, reflection_universal_check, section_localize, tf_tensor, torsion_reflect, FgAbGroup, GradedQt, Summand};
use crate::monadkit::{check_monad_laws, free_tensor_iso, tensor_modules, verify_universal_exhaustive, FiniteAlgebra, Theory};
use crate::projgeom::{
    compare_with_kernel, koszul_complex, plucker_images, plucker_relations, plucker_roundtrip, rees_presentation, segre_images, segre_relations,
    segre_roundtrip, veronese_images, veronese_relations, veronese_roundtrip, LineQuotient, RankDQuotient,
};
use crate::quantale::{
    check_axioms, localize_half, spectrum, zariski_laws_check, FiniteQuantale, HalfSequence, IdealZ, LocalizeIsoReport,
};
use crate::sympow::oracle::{adjugate_inverse, leibniz_det};
use crate::sympow::{
    asym_power, bracket_identity_certificate, coequalizes, coxeter_check, cramer_inverse, ext_power_auto, hopf_check, sym_power,
    symmetry_lemma_check,
};
use crate::perm::binomial;

pub const SUITES: [&str; 9] = ["exactring", "fpmod", "sympow", "derham", "projgeom", "monadkit", "quantale", "localize", "freesym"];

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub name: String,
    pub passed: bool,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Case {
    fn new(name: &str, passed: bool, details: Value, witness: Option<String>) -> Self {
        let witness = if passed { witness } else { witness.or_else(|| Some("check failed".into())) };
        Case { name: name.into(), passed, details, witness }
    }

    fn from_result(name: &str, r: Result<(bool, Value, Option<String>)>) -> Self {
        match r {
            Ok((passed, details, witness)) => Case::new(name, passed, details, witness),
            Err(e) => Case::new(name, false, Value::Null, Some(e.to_string())),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub max_size: usize,
    pub passed: bool,
    pub cases: Vec<Case>,
}

/// Seed for one module's cases, shared between its own suite and `all`.
pub fn module_seed(seed: u64, module: &str) -> u64 {
    let k = SUITES.iter().position(|&m| m == module).unwrap_or(SUITES.len()) as u64 + 1;
    seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn run_suite(name: &str, seed: u64, max_size: usize) -> Result<SuiteReport> {
    let modules: Vec<&str> = match name {
        "all" => SUITES.to_vec(),
        m if SUITES.contains(&m) => vec![m],
        _ => return Err(Error::Invalid(format!("unknown suite {name:?}; expected one of {} or all", SUITES.join(", ")))),
    };
    let mut cases = Vec::new();
    for m in &modules {
        let mut rng = ChaCha8Rng::seed_from_u64(module_seed(seed, m));
        let module_cases = match *m {
            "exactring" => exactring_cases(&mut rng),
            "fpmod" => fpmod_cases(max_size),
            "sympow" => sympow_cases(&mut rng),
            "derham" => derham_cases(),
            "projgeom" => projgeom_cases(&mut rng),
            "monadkit" => monadkit_cases(max_size),
            "quantale" => quantale_cases(&mut rng),
            "localize" => localize_cases(&mut rng, max_size),
            "freesym" => freesym_cases(&mut rng),
            _ => unreachable!(),
        };
        for mut c in module_cases {
            if modules.len() > 1 {
                c.name = format!("{m}/{}", c.name);
            }
            cases.push(c);
        }
    }
    Ok(SuiteReport { suite: name.into(), seed, max_size, passed: cases.iter().all(|c| c.passed), cases })
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

fn nonzero_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..n).map(|_| small_rat(rng)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, f: &Field, nvars: usize, max_deg: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(&f, nvars);
    for _ in 0..terms {
        let mut m = Polynomial::constant(&f, nvars, small_rat(rng));
        for v in 0..nvars {
            m = m.mul(&Polynomial::var(&f, nvars, v).pow(rng.gen_range(0..=max_deg)));
        }
        p = p.add(&m);
    }
    p
}

fn exactring_cases(rng: &mut ChaCha8Rng) -> Vec<Case> {
    let mut out = Vec::new();
    let rings = ["QQ[x,y]/(x^2-y, y^2)", "QQ[x,y,z]/(x*y-z, x^2, z^2)", "QQ[x]/(x^3-x)", "ZZ/7[x,y]/(x^2, y^2-x)"];
    out.push(Case::from_result(
        "normal-form",
        (|| {
            let mut checked = 0;
            for lit in rings {
                let ring = parse_ring(lit)?;
                let q = ring.pq().ok_or_else(|| Error::Internal("expected a polynomial quotient".into()))?;
                for _ in 0..10 {
                    let p = random_poly(rng, &q.field, q.nvars(), 3, 4);
                    let r = random_poly(rng, &q.field, q.nvars(), 3, 3);
                    let np = q.normal_form(&p);
                    if q.normal_form(&np) != np {
                        return Ok((false, json!({ "ring": lit }), Some(format!("normal form not idempotent on {p}"))));
                    }
                    if q.normal_form(&p.mul(&r)) != q.normal_form(&np.mul(&q.normal_form(&r))) {
                        return Ok((false, json!({ "ring": lit }), Some(format!("reduction not multiplicative on {p}, {r}"))));
                    }
                    checked += 1;
                }
            }
            Ok((true, json!({ "rings": rings, "pairs": checked }), None))
        })(),
    ));
    out.push(Case::from_result(
        "groebner-generators-reduce",
        (|| {
            for k in 0..10 {
                let gens: Vec<Polynomial> = (0..2).map(|_| random_poly(rng, &Field::Rationals, 2, 2, 2)).collect();
                let gb = groebner_basis(&gens);
                if let Some(g) = gens.iter().find(|g| !reduce(g, &gb).is_zero()) {
                    return Ok((false, json!({ "sample": k }), Some(format!("{g} does not reduce to 0"))));
                }
            }
            Ok((true, json!({ "samples": 10 }), None))
        })(),
    ));
    out.push(Case::from_result(
        "jacobian-leibniz",
        (|| {
            let vars = vec!["x".to_string(), "y".to_string(), "z".to_string()];
            let names = ["x", "y", "z"];
            for _ in 0..20 {
                let (f, g) = (random_poly(rng, &Field::Rationals, 3, 3, 3), random_poly(rng, &Field::Rationals, 3, 3, 3));
                let j = jacobian(&[f.mul(&g), f.clone(), g.clone()], &vars, &names)?;
                for c in 0..3 {
                    if j[0][c] != f.mul(&j[2][c]).add(&g.mul(&j[1][c])) {
                        return Ok((false, Value::Null, Some(format!("Leibniz fails for {f}, {g} in {}", names[c]))));
                    }
                }
            }
            Ok((true, json!({ "samples": 20 }), None))
        })(),
    ));
    out
}

fn fpmod_corpus() -> Result<Vec<(String, ModulePresentation)>> {
    let eps = parse_ring("QQ[e]/(e^2)")?;
    let z15 = RingDescriptor::IntegersMod(15);
    Ok(vec![
        ("Z/2 + Z".into(), ModulePresentation::abelian(&[2, 0])),
        ("Z/4".into(), ModulePresentation::abelian(&[4])),
        ("Q^2".into(), ModulePresentation::free(&RingDescriptor::Rationals, 2)),
        ("5·Z/15".into(), ModulePresentation::cyclic(&z15, &z15.from_int(5))),
        ("Q[e]/(e^2)".into(), ModulePresentation::free(&eps, 1)),
    ])
}

fn fpmod_cases(max_size: usize) -> Vec<Case> {
    let mut out = Vec::new();
    out.push(Case::from_result(
        "symmetry-involution",
        (|| {
            let corpus = fpmod_corpus()?;
            let mut pairs = 0;
            for (a, m) in &corpus {
                for (b, n) in &corpus {
                    if !m.ring.same_ring(&n.ring) {
                        continue;
                    }
                    pairs += 1;
                    let s = symmetry(m, n)?;
                    let back = symmetry(n, m)?.compose(&s)?;
                    if !back.equals(&ModMorphism::identity(&s.source))? {
                        return Ok((false, Value::Null, Some(format!("S∘S ≠ id on {a} ⊗ {b}"))));
                    }
                }
            }
            Ok((true, json!({ "pairs": pairs }), None))
        })(),
    ));
    out.push(Case::from_result(
        "rank-uniqueness",
        (|| {
            let rings = ["QQ", "ZZ", "ZZ/6", "QQ[x]/(x^2)"];
            for lit in rings {
                let r = parse_ring(lit)?;
                let ranks = (0..=3).map(|n| residue_rank(&ModulePresentation::free(&r, n))).collect::<Result<Vec<_>>>()?;
                if ranks != vec![0, 1, 2, 3] {
                    return Ok((false, json!({ "ring": lit }), Some(format!("residue ranks {ranks:?}"))));
                }
            }
            Ok((true, json!({ "rings": rings, "max_rank": 3 }), None))
        })(),
    ));
    out.push(Case::from_result(
        "signature-multiplicative",
        (|| {
            let q = RingDescriptor::Rationals;
            let eps = parse_ring("QQ[e]/(e^2)")?;
            let z15 = RingDescriptor::IntegersMod(15);
            let lines = [ModulePresentation::free(&q, 1), ModulePresentation::free(&eps, 1), ModulePresentation::free(&z15, 1)];
            for l in &lines {
                let s = line_classify(l)?.signature.ok_or_else(|| Error::Internal("unit has no signature".into()))?;
                let ll = l.tensor(l)?;
                let s2 = line_classify(&ll)?.signature.ok_or_else(|| Error::Internal("L⊗L has no signature".into()))?;
                if s2 != l.ring.mul(&s, &s) {
                    return Ok((false, Value::Null, Some(format!("signature of L⊗L over {} is not the square", l.ring))));
                }
            }
            Ok((true, json!({ "lines": lines.len() }), None))
        })(),
    ));
    let bound = 30.max(max_size);
    out.push(Case::from_result(
        "oid-annihilators",
        (|| {
            for n in 2..=bound as u64 {
                let r = oid_decompose(n)?;
                if !r.matches_crt {
                    return Ok((false, Value::Null, Some(format!("maximal o.i.d. of Z/{n} does not match CRT"))));
                }
                if let Some(d) = r.decompositions.iter().find(|d| d.summand_orders.iter().product::<u64>() != n) {
                    return Ok((false, Value::Null, Some(format!("summand orders {:?} of Z/{n} do not multiply to {n}", d.summand_orders))));
                }
            }
            Ok((true, json!({ "max_n": bound }), None))
        })(),
    ));
    out.push(Case::from_result(
        "dualizable-base-change",
        (|| {
            let eps = parse_ring("QQ[e]/(e^2)")?;
            for k in 0..=2 {
                let a = line_classify(&ModulePresentation::free(&RingDescriptor::Rationals, k))?.dualizable;
                let b = line_classify(&ModulePresentation::free(&eps, k))?.dualizable;
                if a != b || !a {
                    return Ok((false, Value::Null, Some(format!("rank {k}: dualizable {a} over QQ, {b} over QQ[e]/(e^2)"))));
                }
            }
            Ok((true, json!({ "max_rank": 2 }), None))
        })(),
    ));
    out
}

fn q_free(n: usize) -> ModulePresentation {
    ModulePresentation::free(&RingDescriptor::Rationals, n)
}

fn random_square(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<Rational>> {
    (0..d).map(|_| (0..d).map(|_| small_rat(rng)).collect()).collect()
}

fn as_morphism(a: &[Vec<Rational>]) -> Result<ModMorphism> {
    let r = RingDescriptor::Rationals;
    let d = a.len();
    let m = a.iter().map(|row| row.iter().map(|x| r.from_rational(x)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    ModMorphism::new(&q_free(d), &q_free(d), m)
}

fn sympow_cases(rng: &mut ChaCha8Rng) -> Vec<Case> {
    let mut out = Vec::new();
    out.push(Case::from_result(
        "power-dimensions",
        (|| {
            for m in 1..=5 {
                for n in 0..=6 {
                    let e = ext_power_auto(&q_free(m), n)?.module.dim()?;
                    if e != binomial(m, n) {
                        return Ok((false, Value::Null, Some(format!("dim Λ^{n}(Q^{m}) = {e}"))));
                    }
                    if m.pow(n as u32) <= 1024 {
                        let s = sym_power(&q_free(m), n)?.module.dim()?;
                        if s != binomial(m + n - 1, n) {
                            return Ok((false, Value::Null, Some(format!("dim Sym^{n}(Q^{m}) = {s}"))));
                        }
                    }
                }
            }
            Ok((true, json!({ "max_m": 5, "max_n": 6 }), None))
        })(),
    ));
    out.push(Case::from_result(
        "quotients-coequalize",
        (|| {
            let ok = [sym_power(&q_free(2), 3)?, sym_power(&q_free(3), 2)?, ext_power_auto(&q_free(3), 2)?]
                .iter()
                .map(coequalizes)
                .collect::<Result<Vec<_>>>()?;
            Ok((ok.iter().all(|&x| x), json!({ "powers": ok.len() }), None))
        })(),
    ));
    out.push(Case::from_result(
        "coxeter",
        (|| {
            let r = coxeter_check(&q_free(2), 3)?;
            Ok((r.passed(), json!({ "degree": 3, "dim": 2 }), None))
        })(),
    ));
    out.push(Case::from_result(
        "hopf",
        (|| {
            let r = hopf_check(&q_free(3), 3)?;
            Ok((r.passed(), serde_json::to_value(&r).unwrap_or(Value::Null), None))
        })(),
    ));
    out.push(Case::from_result(
        "symmetry-lemma",
        (|| {
            for d in 1..=3 {
                let r = symmetry_lemma_check(&q_free(d), d)?;
                if !(r.hypothesis_holds && r.symmetric) {
                    return Ok((false, Value::Null, Some(format!("d = {d}: {r:?}"))));
                }
            }
            Ok((true, json!({ "max_d": 3 }), None))
        })(),
    ));
    out.push(Case::from_result(
        "asym-over-integers",
        (|| {
            let z = ModulePresentation::free(&RingDescriptor::Integers, 1);
            let mut seen = Vec::new();
            for n in 2..=4 {
                let m = asym_power(&z, n)?.module;
                let s = m.describe();
                seen.push(s.clone());
                if m.structure()? != Structure::Factors(vec![2.into()]) {
                    return Ok((false, json!({ "structures": seen }), Some(format!("ASym^{n}(Z) = {s}"))));
                }
            }
            Ok((true, json!({ "structures": seen }), None))
        })(),
    ));
    out.push(Case::from_result(
        "determinant",
        (|| {
            let r = RingDescriptor::Rationals;
            for d in 1..=5 {
                let ld = ext_power_auto(&q_free(d), d)?;
                if ld.module.dim()? != 1 {
                    return Ok((false, Value::Null, Some(format!("dim Λ^{d}(Q^{d}) ≠ 1"))));
                }
                for _ in 0..4 {
                    let a = random_square(rng, d);
                    let img = ld.induced(&ld, &as_morphism(&a)?)?;
                    if img.matrix[0][0] != r.from_rational(&leibniz_det(&a))? {
                        return Ok((false, Value::Null, Some(format!("Λ^{d} A ≠ det A for {a:?}"))));
                    }
                }
            }
            Ok((true, json!({ "max_d": 5, "samples_per_d": 4 }), None))
        })(),
    ));
    out.push(Case::from_result(
        "cramer-vs-adjugate",
        (|| {
            let r = RingDescriptor::Rationals;
            let mut done = 0;
            while done < 100 {
                let d = 2 + done % 2;
                let a = random_square(rng, d);
                let Some(adj) = adjugate_inverse(&a) else { continue };
                let g = cramer_inverse(&as_morphism(&a)?, d)?;
                let expect = adj.iter().map(|row| row.iter().map(|x| r.from_rational(x)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
                if g.matrix != expect {
                    return Ok((false, Value::Null, Some(format!("Cramer inverse differs from adj/det for {a:?}"))));
                }
                done += 1;
            }
            Ok((true, json!({ "samples": done }), None))
        })(),
    ));
    out.push(Case::from_result(
        "bracket-certificate",
        (|| {
            let c = bracket_identity_certificate()?;
            Ok((c.outcome.verified && c.published_combination_valid, json!({ "terms": c.published_terms, "method": c.outcome.method }), None))
        })(),
    ));
    out
}

pub const DERHAM_CORPUS: [&str; 12] = [
    "QQ[x]/(x^2)",
    "QQ[x]/(x^3)",
    "QQ[x]/(x^4)",
    "QQ[x]/(x^2-1)",
    "QQ[x]/(x^3-x)",
    "QQ[x,y]/(x^2,y^2)",
    "QQ[x,y]/(x^2,x*y,y^2)",
    "QQ[x,y]/(x^3,y^2)",
    "QQ[x,y]/(x^2-y^2,x*y)",
    "QQ[x,y]/(x^2,y^3,x*y^2)",
    "QQ[x,y,z]/(x^2,y^2,z^2,x*y,x*z,y*z)",
    "QQ[x,y,z]/(x^2,y^2,z^2)",
];

fn derham_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for lit in DERHAM_CORPUS {
        out.push(Case::from_result(
            &format!("complex {lit}"),
            (|| {
                let b = FpAlgebra::parse(lit)?;
                let c = derham_complex(&b, b.nvars() + 1)?;
                let h = c.cohomology();
                let cmp = omega1_comparison(&b)?;
                let ok = c.well_defined && c.d_squared_zero && c.leibniz && h.first().is_some_and(|&h0| h0 >= 1) && cmp.iso_certified && cmp.commutes_with_d;
                Ok((
                    ok,
                    json!({ "dims": c.dims(), "cohomology": h, "d_squared_zero": c.d_squared_zero, "leibniz": c.leibniz, "omega1_iso": cmp.iso_certified }),
                    None,
                ))
            })(),
        ));
    }
    for n in 0..=3 {
        out.push(Case::from_result(
            &format!("euler-contraction n={n}"),
            euler_contraction_check(n).map(|r| (r.passed(), serde_json::to_value(&r).unwrap_or(Value::Null), None)),
        ));
    }
    out
}

fn random_rank_d(rng: &mut ChaCha8Rng, d: usize, n: usize) -> RankDQuotient {
    loop {
        let rows = (0..d).map(|_| (0..n).map(|_| small_rat(rng)).collect()).collect();
        if let Ok(t) = RankDQuotient::new(rows) {
            return t;
        }
    }
}

fn projgeom_cases(rng: &mut ChaCha8Rng) -> Vec<Case> {
    let mut out = Vec::new();
    out.push(Case::from_result(
        "koszul",
        (|| {
            for n in 1..=5 {
                for _ in 0..20 {
                    let s = LineQuotient::new(nonzero_vec(rng, n))?;
                    let e = loop {
                        let e = nonzero_vec(rng, n);
                        if !s.apply(&e).is_zero() {
                            break e;
                        }
                    };
                    let k = koszul_complex(&s, n, Some(&e))?;
                    if !k.passed() {
                        return Ok((false, Value::Null, Some(format!("Koszul complex fails for s = {:?}", s.s))));
                    }
                }
            }
            Ok((true, json!({ "max_n": 5, "covectors_per_n": 20 }), None))
        })(),
    ));
    out.push(Case::from_result(
        "relation-completeness",
        (|| {
            let mut rows = Vec::new();
            for (name, set, images) in [
                ("plucker 4 2", plucker_relations(4, 2)?, plucker_images(4, 2)),
                ("plucker 3 2", plucker_relations(3, 2)?, plucker_images(3, 2)),
                ("segre 2 2", segre_relations(2, 2)?, segre_images(2, 2)),
                ("segre 1 3", segre_relations(1, 3)?, segre_images(1, 3)),
                ("veronese 2 2", veronese_relations(2, 2)?, veronese_images(2, 2)),
                ("veronese 2 3", veronese_relations(2, 3)?, veronese_images(2, 3)),
            ] {
                let c = compare_with_kernel(&set, &images);
                rows.push(json!({ "map": name, "kernel_dim": c.kernel_dim, "span_rank": c.span_rank }));
                if !c.equal {
                    return Ok((false, json!(rows), Some(format!("{name}: span {} vs kernel {}", c.span_rank, c.kernel_dim))));
                }
            }
            Ok((true, json!(rows), None))
        })(),
    ));
    out.push(Case::from_result(
        "round-trips",
        (|| {
            for _ in 0..50 {
                let t = random_rank_d(rng, 2, 4);
                if !plucker_roundtrip(&t)?.passed() {
                    return Ok((false, Value::Null, Some(format!("Plücker round trip fails for {:?}", t.t.data))));
                }
                let (s1, s2) = (LineQuotient::new(nonzero_vec(rng, 2))?, LineQuotient::new(nonzero_vec(rng, 3))?);
                if !segre_roundtrip(&s1, &s2)?.passed() {
                    return Ok((false, Value::Null, Some(format!("Segre round trip fails for {:?} ⊗ {:?}", s1.s, s2.s))));
                }
                let s = LineQuotient::new(nonzero_vec(rng, 3))?;
                if !veronese_roundtrip(&s, 2)?.passed() {
                    return Ok((false, Value::Null, Some(format!("Veronese round trip fails for {:?}", s.s))));
                }
            }
            Ok((true, json!({ "samples": 50 }), None))
        })(),
    ));
    out.push(Case::from_result("rees", rees_presentation(3).map(|r| (r.presented, json!({ "bound": 3, "relation": r.relation }), None))));
    out
}

fn monadkit_cases(max_size: usize) -> Vec<Case> {
    let mut out = Vec::new();
    let size = max_size.min(3);
    for th in Theory::builtins() {
        let name = th.name();
        out.push(Case::from_result(
            &format!("universal {name}"),
            verify_universal_exhaustive(&th, size).map(|r| {
                let w = r.failures.first().cloned();
                (r.failures.is_empty(), json!({ "max_size": size, "algebras": r.algebras, "triples": r.triples }), w)
            }),
        ));
        out.push(Case::from_result(
            &format!("free-tensor {name}"),
            (|| {
                for nx in 0..=size {
                    for ny in 0..=size {
                        let c = free_tensor_iso(&th, nx, ny)?;
                        if !c.passed() {
                            return Ok((false, Value::Null, Some(format!("F({nx}) ⊗ F({ny}) ≇ F({nx}×{ny}): {:?}", c.witness))));
                        }
                    }
                }
                Ok((true, json!({ "max_size": size }), None))
            })(),
        ));
        out.push(Case::from_result(
            &format!("monad-laws {name}"),
            check_monad_laws(&th, 2).map(|r| {
                let w = r.failures().first().map(|f| format!("{}: {:?}", f.law, f.witness));
                (r.passed, json!({ "checks": r.checks.len(), "skipped": r.skipped }), w)
            }),
        ));
    }
    out.push(Case::from_result(
        "smash",
        (|| {
            for p in 1..=4 {
                for q in 1..=4 {
                    let t = tensor_modules(&FiniteAlgebra::pointed(p)?, &FiniteAlgebra::pointed(q)?)?;
                    if t.size() != (p - 1) * (q - 1) + 1 {
                        return Ok((false, Value::Null, Some(format!("|{p} ∧ {q}| = {}", t.size()))));
                    }
                }
            }
            Ok((true, json!({ "max_size": 4 }), None))
        })(),
    ));
    out
}

fn random_half_sequence(rng: &mut ChaCha8Rng) -> Result<HalfSequence> {
    let len = rng.gen_range(1..=4);
    let start = rng.gen_range(-2..=2);
    let mut vals = vec![ratio(rng.gen_range(0..=16), 16)];
    for _ in 1..len {
        let next = vals.last().cloned().unwrap_or_else(Rational::zero);
        let cap = (next * rat(2)).min(rat(1));
        let k: i64 = rng.gen_range(0..=64);
        vals.push((cap * ratio(k, 64) * rat(64)).floor() / rat(64));
    }
    vals.reverse();
    HalfSequence::new(start, vals)
}

fn quantale_cases(rng: &mut ChaCha8Rng) -> Vec<Case> {
    let mut out = Vec::new();
    out.push(Case::from_result(
        "axioms-finite",
        (|| {
            let mut rows = Vec::new();
            for (name, q) in [
                ("lukasiewicz 4", FiniteQuantale::lukasiewicz(4)?),
                ("powerset 3", FiniteQuantale::powerset_frame(3)?),
                ("ideals mod 12", FiniteQuantale::ideals_mod(12)?),
            ] {
                let elems: Vec<usize> = (0..q.size()).collect();
                let r = check_axioms(&q, &elems);
                rows.push(json!({ "quantale": name, "triples": r.triples }));
                if !r.passed() {
                    return Ok((false, json!(rows), r.witness));
                }
            }
            Ok((true, json!(rows), None))
        })(),
    ));
    {
        let samples: Vec<u128> = (0..12).map(|_| rng.gen_range(0..=60)).collect();
        let r = check_axioms(&IdealZ, &samples);
        let passed = r.passed() && r.triples >= 100;
        out.push(Case::new("axioms-ideals-of-z", passed, json!({ "samples": samples, "triples": r.triples }), r.witness));
    }
    {
        let s = spectrum(100);
        out.push(Case::new(
            "spectrum",
            s.agree,
            json!({ "bound": 100, "primes": s.primes.iter().map(|p| p.to_string()).collect::<Vec<_>>() }),
            None,
        ));
    }
    {
        let samples: Vec<u128> = (0..30).map(|_| rng.gen_range(0..=60)).collect();
        let r = zariski_laws_check(&samples, 100);
        let failed = r.laws.iter().find(|l| ZARISKI_GATING.contains(&l.law.as_str()) && !l.holds);
        let laws: Vec<Value> = r.laws.iter().map(|l| json!({ "law": l.law, "cases": l.cases, "holds": l.holds, "witness": l.witness })).collect();
        out.push(Case::new(
            "zariski",
            failed.is_none(),
            json!({ "samples": samples, "max_prime": 100, "laws": laws }),
            failed.and_then(|l| l.witness.clone()),
        ));
    }
    out.push(Case::from_result(
        "localize-monotone-idempotent",
        (|| {
            for _ in 0..30 {
                let m = random_half_sequence(rng)?;
                let n = random_half_sequence(rng)?;
                let join = m.max(&n);
                let (rm, rj) = (localize_half(&m)?, localize_half(&join)?);
                if rm.value > rj.value {
                    return Ok((false, Value::Null, Some(format!("v({m:?}) > v(M ∨ N)"))));
                }
                if !rm.passed() {
                    return Ok((false, Value::Null, Some(format!("{m:?} is not localized to a fixed point"))));
                }
                let again = localize_half(&rm.fixed)?;
                if !again.fixed.same_as(&rm.fixed) || again.value != rm.value {
                    return Ok((false, Value::Null, Some(format!("second reflection moves {:?}", rm.fixed))));
                }
            }
            Ok((true, json!({ "samples": 30 }), None))
        })(),
    ));
    {
        let seed = rng.gen();
        out.push(Case::from_result(
            "localize-iso",
            LocalizeIsoReport::random(seed, 50).map(|r| (r.passed, json!({ "seed": seed, "pairs": r.samples.len(), "unit_ok": r.unit_ok }), None)),
        ));
    }
    out
}

/// Zariski laws that gate a pass; the intersection form of the product law is reported but refuted.
pub const ZARISKI_GATING: [&str; 3] = ["V(0) = Spec, V(1) = ∅", "V(IJ) = V(I) ∪ V(J)", "V(Σ I) = ∩ V(I)"];

/// Generators of `count` random ideals `(n)`, `0 ≤ n ≤ 60`.
pub fn random_ideals(seed: u64, count: usize) -> Vec<u128> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(0..=60)).collect()
}

fn random_group(rng: &mut ChaCha8Rng) -> FgAbGroup {
    let k = rng.gen_range(0..=3);
    let orders: Vec<u64> = (0..k).map(|_| [0, 2, 3, 4, 5, 6, 8, 9, 12][rng.gen_range(0..9)]).collect();
    FgAbGroup::from_cyclic(&orders)
}

fn localize_cases(rng: &mut ChaCha8Rng, max_size: usize) -> Vec<Case> {
    let mut out = Vec::new();
    out.push(Case::from_result(
        "torsion-reflection",
        (|| {
            for _ in 0..30 {
                let m = random_group(rng);
                let a = [2, 3, 6][rng.gen_range(0..3)];
                let r = torsion_reflect(&m, a)?;
                if !r.passed() || !r.result.mul_injective(a) {
                    return Ok((false, Value::Null, Some(format!("R({m}, a = {a}) = {}", r.result))));
                }
                if torsion_reflect(&r.result, a)?.result != r.result {
                    return Ok((false, Value::Null, Some(format!("reflection of {m} at {a} is not idempotent"))));
                }
            }
            Ok((true, json!({ "samples": 30 }), None))
        })(),
    ));
    let bound = 12.max(max_size as u64);
    out.push(Case::from_result(
        "universal-z12",
        (|| {
            let targets: Vec<FgAbGroup> = (1..=bound).flat_map(FgAbGroup::of_order).filter(|g| g.mul_injective(2)).collect();
            let r = reflection_universal_check(&FgAbGroup::from_cyclic(&[12]), 2, &targets)?;
            Ok((r.passed && r.reflection.result == FgAbGroup::from_cyclic(&[3]), json!({ "result": r.reflection.result.to_string(), "targets": targets.len() }), None))
        })(),
    ));
    out.push(Case::from_result(
        "tf-tensor",
        (|| {
            for _ in 0..20 {
                let (m, n) = (random_group(rng), random_group(rng));
                let r = tf_tensor(&m, &n);
                if !r.passed() || !r.result.torsion().is_empty() {
                    return Ok((false, Value::Null, Some(format!("{m} ⊗ {n} = {}", r.result))));
                }
                if tf_tensor(&FgAbGroup::free(1), &m).result != m.torsion_free_part() {
                    return Ok((false, Value::Null, Some(format!("Z ⊗ {m} is not the torsion-free part"))));
                }
            }
            Ok((true, json!({ "samples": 20 }), None))
        })(),
    ));
    out.push(Case::new("epi", [2, 3, 5].iter().all(|&a| epi_check(a, 2, 4)), json!({ "a": [2, 3, 5], "rank": 2 }), None));
    out.push(Case::from_result(
        "section-colimit",
        (|| {
            for _ in 0..20 {
                let k = rng.gen_range(1..=4);
                let summands: Vec<Summand> = (0..k)
                    .map(|_| {
                        let shift = rng.gen_range(0..=3);
                        if rng.gen_bool(0.5) { Summand::Free { shift } } else { Summand::Truncated { k: rng.gen_range(1..=3), shift } }
                    })
                    .collect();
                let free = summands.iter().filter(|s| matches!(s, Summand::Free { .. })).count();
                let r = section_localize(&GradedQt::from_summands(&summands, 8))?;
                if r.colimit_dim != free {
                    return Ok((false, Value::Null, Some(format!("{summands:?}: colimit {} vs {free} free summands", r.colimit_dim))));
                }
            }
            Ok((true, json!({ "samples": 20 }), None))
        })(),
    ));
    out
}

fn freesym_cases(rng: &mut ChaCha8Rng) -> Vec<Case> {
    let mut out = Vec::new();
    for (name, cat, len) in [("point", FinCat::point(), 4), ("idem", FinCat::idempotent_arrow(), 2), ("discrete:2", FinCat::discrete(2), 3)] {
        let r = check_compose_laws(&cat, len);
        out.push(Case::new(
            &format!("compose-laws {name}"),
            r.passed(),
            json!({ "max_len": len, "morphisms": r.morphisms, "triples": r.triples, "tensor_pairs": r.tensor_pairs }),
            r.witness,
        ));
    }
    out.push(Case::new("permutation-groupoid", (0..=4).all(perm_groupoid_check), json!({ "max_n": 4 }), None));
    out.push(Case::from_result(
        "extension idem",
        (|| {
            let cat = FinCat::idempotent_arrow();
            let f = MatrixFunctor::idempotent_example(&cat)?;
            let ext = extend_functor(&cat, &f);
            let seed = rng.gen();
            let r = extension_check(&ext, seed, 50, 3);
            let c = smc_coxeter(&ext, 3);
            Ok((r.passed() && c.passed(), json!({ "seed": seed, "pairs": r.pairs, "relations": c.relations, "words": c.words }), r.witness.or(c.witness)))
        })(),
    ));
    out.push(Case::from_result(
        "extension cyclic:3",
        (|| {
            let cat = FinCat::cyclic(3)?;
            let f = MatrixFunctor::from_json(&cat, r#"{"objects":{"X":2},"morphisms":{"g1":[[0,-1],[1,-1]],"g2":[[-1,1],[-1,0]]}}"#)?;
            let ext = extend_functor(&cat, &f);
            let seed = rng.gen();
            let r = extension_check(&ext, seed, 30, 3);
            let c = smc_coxeter(&ext, 3);
            Ok((r.passed() && c.passed(), json!({ "seed": seed, "pairs": r.pairs, "relations": c.relations }), r.witness.or(c.witness)))
        })(),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 1, 3).is_err());
    }

    #[test]
    fn small_suites_pass_and_repeat() {
        for s in ["freesym", "localize", "quantale"] {
            let a = run_suite(s, 42, 3).unwrap();
            assert!(a.passed, "{}", serde_json::to_string_pretty(&a).unwrap());
            let b = run_suite(s, 42, 3).unwrap();
            assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        }
    }
}
