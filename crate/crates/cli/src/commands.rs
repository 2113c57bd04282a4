use serde_json::{json, Value};
use tensorcat::derham::{derham_complex, FpAlgebra};
use tensorcat::exactring::{is_prime_u64, parse_ring, parse_ring_elem, rational_to_string, Rational, RingDescriptor};
use tensorcat::fpmod::{module_from_json, ModMorphism, ModulePresentation, Structure};
use tensorcat::freesym::{coxeter_check, extend_functor, extension_check, smc_compose, smc_inverse, smc_tensor, FinCat, MatrixFunctor, SmcMorphism};
use tensorcat::linalg::FieldMatrix;
use tensorcat::localize::{reflection_universal_check, section_localize, torsion_reflect, FgAbGroup, GradedQt, Summand};
use tensorcat::monadkit::{check_monad_laws, is_bihom, tensor_modules, FiniteAlgebra, Theory};
use tensorcat::projgeom::{
    compare_with_kernel, koszul_complex, plucker_images, plucker_relations, rees_presentation, segre_images, segre_relations, veronese_images,
    veronese_relations, LineQuotient, QuadricSet,
};
use tensorcat::quantale::{spectrum, zariski_laws_check, EndLaw, HalfSequence, LocalizeIsoReport};
use tensorcat::suite::{random_ideals, run_suite, ZARISKI_GATING};
use tensorcat::sympow::oracle::adjugate_inverse;
use tensorcat::sympow::{asym_power, bracket_identity_certificate, coequalizes, cramer_inverse, ext_power, locally_free_check, sym_power, tensor_power, ExtMode};
use tensorcat::{perm, Error, Result};

use crate::{ModuleArgs, Outcome};

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn module(args: &ModuleArgs) -> Result<ModulePresentation> {
    match &args.module {
        Some(lit) => {
            let v: Value = serde_json::from_str(lit).map_err(|e| Error::Parse(format!("module literal: {e}")))?;
            module_from_json(&v, None)
        }
        None => Ok(ModulePresentation::free(&parse_ring(&args.ring)?, args.rank)),
    }
}

fn structure_json(m: &ModulePresentation) -> Result<Value> {
    Ok(match m.structure()? {
        Structure::Dim(d) => json!({ "dim": d }),
        Structure::Factors(f) => json!({ "invariant_factors": f.iter().map(|x| x.to_string()).collect::<Vec<_>>() }),
    })
}

fn rationals(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|x| x.trim().parse::<Rational>().map_err(|_| Error::Parse(format!("bad rational {x:?}")))).collect()
}

fn matrix_strings(m: &FieldMatrix) -> Vec<Vec<String>> {
    m.data.iter().map(|row| row.iter().map(rational_to_string).collect()).collect()
}

pub fn sympow(args: &ModuleArgs, n: usize, kind: &str) -> Result<Outcome> {
    let m = module(args)?;
    let build = match kind {
        "tensor" => tensor_power,
        "sym" => sym_power,
        "asym" => asym_power,
        _ => return Err(Error::Parse(format!("unknown power kind {kind:?} (tensor | sym | asym)"))),
    };
    let mut table = Vec::new();
    let mut bad = Vec::new();
    for k in 0..=n {
        let p = build(&m, k)?;
        let coeq = if kind == "tensor" { None } else { Some(coequalizes(&p)?) };
        if coeq == Some(false) {
            bad.push(format!("degree {k}: quotient map does not coequalize the permutation action"));
        }
        table.push(json!({ "degree": k, "gens": p.module.gens, "structure": structure_json(&p.module)?, "describe": p.module.describe(), "coequalizes": coeq }));
    }
    let mut o = Outcome::new(bad.is_empty(), json!({ "kind": kind, "base": m.describe(), "table": table }));
    o.witnesses = bad;
    Ok(o.note(format!("{kind} powers of {} up to degree {n}", m.describe())))
}

pub fn extpow(args: &ModuleArgs, n: usize, mode: &str) -> Result<Outcome> {
    let m = module(args)?;
    let mode = match mode {
        "auto" => ExtMode::for_ring(&m.ring)?,
        "asym" => ExtMode::Asym,
        "alternating" => ExtMode::Alternating,
        _ => return Err(Error::Parse(format!("unknown mode {mode:?} (auto | asym | alternating)"))),
    };
    let free_over_field = args.module.is_none() && m.ring.pq().is_none() && m.ring.base_field().is_some();
    let mut table = Vec::new();
    let mut o = Outcome::new(true, Value::Null);
    for k in 0..=n {
        let p = ext_power(&m, k, mode)?;
        let s = structure_json(&p.module)?;
        if free_over_field {
            let expect = perm::binomial(args.rank, k);
            if s != json!({ "dim": expect }) {
                o.passed = false;
                o.witnesses.push(format!("dim Λ^{k} = {s} but C({}, {k}) = {expect}", args.rank));
            }
        }
        table.push(json!({ "degree": k, "gens": p.module.gens, "structure": s, "describe": p.module.describe() }));
    }
    o.payload = json!({ "mode": mode, "base": m.describe(), "table": table });
    Ok(o.note(format!("exterior powers of {} up to degree {n}", m.describe())))
}

pub fn locally_free(args: &ModuleArgs, d: usize) -> Result<Outcome> {
    let m = module(args)?;
    let r = locally_free_check(&m, d)?;
    let mut o = Outcome::new(r.is_locally_free_rank_d && r.duality_holds, to_value(&r));
    for (ok, what) in [
        (r.det_invertible, format!("Λ^{d} is not invertible")),
        (r.omega_zero, format!("ω : Λ^{} → V ⊗ Λ^{d} is nonzero", d + 1)),
        (r.duality_holds, "a duality triangle fails".to_string()),
    ] {
        if !ok {
            o.witnesses.push(what);
        }
    }
    Ok(o.note(format!("{} locally free of rank {d}: {}", m.describe(), r.is_locally_free_rank_d)))
}

pub fn cramer(matrix: &str, ring: &str) -> Result<Outcome> {
    let ring = parse_ring(ring)?;
    let rows: Vec<Vec<&str>> = matrix.split(';').map(|r| r.split(',').map(str::trim).collect()).collect();
    let d = rows.len();
    if rows.iter().any(|r| r.len() != d) {
        return Err(Error::Parse(format!("matrix must be square, got {d} rows of lengths {:?}", rows.iter().map(Vec::len).collect::<Vec<_>>())));
    }
    let entries = rows.iter().map(|r| r.iter().map(|x| parse_ring_elem(&ring, x)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    let free = ModulePresentation::free(&ring, d);
    let f = ModMorphism::new(&free, &free, entries)?;
    let g = match cramer_inverse(&f, d) {
        Ok(g) => g,
        Err(Error::NotInvertible(why)) => {
            return Ok(Outcome::new(false, json!({ "ring": ring.to_string(), "invertible": false })).witness(format!("not invertible: {why}")))
        }
        Err(e) => return Err(e),
    };
    let show = |m: &ModMorphism| m.matrix.iter().map(|r| r.iter().map(|x| ring.display(x)).collect::<Vec<_>>()).collect::<Vec<_>>();
    let two_sided = g.compose(&f)?.equals(&ModMorphism::identity(&free))? && f.compose(&g)?.equals(&ModMorphism::identity(&free))?;
    let mut o = Outcome::new(two_sided, Value::Null);
    if !two_sided {
        o.witnesses.push("Cramer inverse is not a two-sided inverse".into());
    }
    let mut adjugate_agrees = None;
    if matches!(ring, RingDescriptor::Rationals) {
        let a: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|x| x.parse()).collect::<std::result::Result<_, _>>()).collect::<std::result::Result<_, _>>().map_err(|_| Error::Parse("bad rational entry".into()))?;
        let adj = adjugate_inverse(&a).ok_or_else(|| Error::Internal("Cramer succeeded on a singular matrix".into()))?;
        let agrees = adj.iter().zip(&g.matrix).all(|(ar, gr)| ar.iter().zip(gr).all(|(x, y)| ring.from_rational(x).map(|x| &x == y).unwrap_or(false)));
        if !agrees {
            o.passed = false;
            o.witnesses.push("Cramer inverse differs from adj/det".into());
        }
        adjugate_agrees = Some(agrees);
    }
    o.payload = json!({ "ring": ring.to_string(), "invertible": true, "inverse": show(&g), "two_sided": two_sided, "adjugate_agrees": adjugate_agrees });
    Ok(o.note(format!("inverse: {:?}", show(&g))))
}

pub fn bracket_cert() -> Result<Outcome> {
    let c = bracket_identity_certificate()?;
    let ok = c.outcome.verified && c.published_combination_valid;
    let mut o = Outcome::new(ok, to_value(&c)).note(format!("{} via {} with {} terms", c.target, c.outcome.method, c.outcome.certificate.len()));
    if !c.outcome.verified {
        o.witnesses.push("certificate does not sum to the target".into());
    }
    if !c.published_combination_valid {
        o.witnesses.push("published 12-term combination does not sum to the target".into());
    }
    Ok(o)
}

pub fn derham(algebra: &str, pmax: usize) -> Result<Outcome> {
    let b = FpAlgebra::parse(algebra)?;
    let c = derham_complex(&b, pmax)?;
    let h = c.cohomology();
    let diffs: Vec<_> = c.complex.maps.iter().map(matrix_strings).collect();
    let mut o = Outcome::new(
        c.well_defined && c.d_squared_zero && c.leibniz,
        json!({
            "algebra": algebra, "pmax": pmax, "dims": c.dims(), "differentials": diffs, "cohomology": h,
            "well_defined": c.well_defined, "d_squared_zero": c.d_squared_zero, "leibniz": c.leibniz,
        }),
    );
    for (ok, w) in [(c.well_defined, "d does not respect the relations"), (c.d_squared_zero, "d ∘ d ≠ 0"), (c.leibniz, "graded Leibniz rule fails")] {
        if !ok {
            o.witnesses.push(w.into());
        }
    }
    Ok(o.note(format!("dims {:?}, cohomology {h:?}", c.dims())))
}

pub fn koszul(s: &str, e: Option<&str>, pmax: Option<usize>) -> Result<Outcome> {
    let s = LineQuotient::new(rationals(s)?)?;
    let e = e.map(rationals).transpose()?;
    let pmax = pmax.unwrap_or(s.dim());
    let k = koszul_complex(&s, pmax, e.as_deref())?;
    let mut o = Outcome::new(k.passed(), to_value(&k)).note(format!("dims {:?}, exact {}", k.dims, k.exact));
    if !k.d_squared_zero {
        o.witnesses.push("d ∘ d ≠ 0".into());
    }
    if !k.exact {
        o.witnesses.push("complex is not exact".into());
    }
    if k.contraction == Some(false) {
        o.witnesses.push("contraction identity fails".into());
    }
    Ok(o)
}

fn quadrics(set: QuadricSet, images: &[tensorcat::exactring::Polynomial]) -> Outcome {
    let c = compare_with_kernel(&set, images);
    let shown = set.display();
    let mut o = Outcome::new(
        c.equal && c.all_in_kernel,
        json!({ "coordinates": set.coords, "quadrics": shown, "count": set.len(), "kernel_dim": c.kernel_dim, "span_rank": c.span_rank, "complete": c.equal }),
    );
    if !c.all_in_kernel {
        o.witnesses.push("a relation does not vanish on the image".into());
    } else if !c.equal {
        o.witnesses.push(format!("relations span {} of the {}-dimensional quadratic kernel", c.span_rank, c.kernel_dim));
    }
    for q in &shown {
        o.summary.push(q.clone());
    }
    o
}

pub fn segre(n1: usize, n2: usize) -> Result<Outcome> {
    Ok(quadrics(segre_relations(n1, n2)?, &segre_images(n1, n2)))
}

pub fn veronese(n: usize, d: usize) -> Result<Outcome> {
    Ok(quadrics(veronese_relations(n, d)?, &veronese_images(n, d)))
}

pub fn plucker(n: usize, d: usize) -> Result<Outcome> {
    Ok(quadrics(plucker_relations(n, d)?, &plucker_images(n, d)))
}

pub fn rees(bound: usize) -> Result<Outcome> {
    let r = rees_presentation(bound)?;
    let o = Outcome::new(r.presented, to_value(&r));
    Ok(if r.presented { o } else { o.witness("relations do not present the Rees algebra up to the bound") })
}

fn algebra_arg(th: &Theory, s: &str) -> Result<(FiniteAlgebra, Option<usize>)> {
    if let Ok(n) = s.trim().parse::<usize>() {
        return Ok((FiniteAlgebra::free(th, n)?, Some(n)));
    }
    let a = FiniteAlgebra::from_json(s)?;
    if a.theory.name() != th.name() {
        return Err(Error::Invalid(format!("algebra is a {} algebra, expected {}", a.theory.name(), th.name())));
    }
    Ok((a, None))
}

pub fn monad_tensor(theory: &str, a: &str, b: &str) -> Result<Outcome> {
    let th = Theory::parse(theory)?;
    let (fa, na) = algebra_arg(&th, a)?;
    let (fb, nb) = algebra_arg(&th, b)?;
    let t = tensor_modules(&fa, &fb)?;
    let bihom = is_bihom(&t.tensor, &t.a, &t.b, &t.algebra)?;
    let expected = match (na, nb) {
        (Some(x), Some(y)) => th.free_size(x * y),
        _ => None,
    };
    let mut o = Outcome::new(bihom.is_bihom, Value::Null);
    if !bihom.is_bihom {
        o.witnesses.push(format!("universal map is not a bihomomorphism: {bihom:?}"));
    }
    if let Some(e) = expected {
        if e != t.size() {
            o.passed = false;
            o.witnesses.push(format!("|F(X) ⊗ F(Y)| = {} but |F(X × Y)| = {e}", t.size()));
        }
    }
    o.payload = json!({
        "theory": th.name(),
        "a": { "size": fa.carrier.len(), "carrier": fa.carrier },
        "b": { "size": fb.carrier.len(), "carrier": fb.carrier },
        "tensor": { "size": t.size(), "carrier": t.algebra.carrier, "relations": t.relations, "universal_map": t.tensor },
        "expected_free_size": expected,
        "bihom": bihom,
    });
    Ok(o.note(format!("|A ⊗ B| = {} for |A| = {}, |B| = {}", t.size(), fa.carrier.len(), fb.carrier.len())))
}

pub fn monad_laws(theory: &str, max_size: usize) -> Result<Outcome> {
    let th = Theory::parse(theory)?;
    let r = check_monad_laws(&th, max_size)?;
    let mut o = Outcome::new(r.passed, to_value(&r));
    for f in r.failures() {
        o.witnesses.push(format!("{}: {}", f.law, f.witness.clone().unwrap_or_default()));
    }
    Ok(o.note(format!("{} law checks on sets up to size {max_size}", r.checks.len())))
}

pub fn spec_z(bound: u128) -> Result<Outcome> {
    let r = spectrum(bound);
    let expect: Vec<u128> = std::iter::once(0).chain((2..=bound).filter(|&p| is_prime_u64(p as u64))).collect();
    let mut o = Outcome::new(r.agree && r.primes == expect, json!({ "bound": bound, "primes": r.primes, "agree": r.agree }));
    if !r.agree {
        o.witnesses.push("factorization and quantifier tests disagree".into());
    }
    if r.primes != expect {
        o.witnesses.push(format!("prime ideals {:?} differ from (0) and (p)", r.primes));
    }
    Ok(o.note(format!("{} prime ideals among (0)..({bound})", r.primes.len())))
}

pub fn zariski(seed: u64, count: usize, max_prime: u128) -> Result<Outcome> {
    let samples = random_ideals(seed, count);
    let r = zariski_laws_check(&samples, max_prime);
    let mut o = Outcome::new(true, Value::Null);
    let mut refuted = Vec::new();
    for l in &r.laws {
        if l.holds {
            continue;
        }
        if ZARISKI_GATING.contains(&l.law.as_str()) {
            o.passed = false;
            o.witnesses.push(format!("{}: {}", l.law, l.witness.clone().unwrap_or_default()));
        } else {
            refuted.push(json!({ "law": l.law, "witness": l.witness }));
            o.summary.push(format!("refuted: {} ({})", l.law, l.witness.clone().unwrap_or_default()));
        }
    }
    o.payload = json!({ "seed": seed, "samples": samples, "max_prime": max_prime, "laws": r.laws, "refuted": refuted });
    Ok(o)
}

pub fn localize_half(window: &str, head: &str, tail: &str) -> Result<Outcome> {
    let m = HalfSequence::parse_window(window, EndLaw::parse(head)?, EndLaw::parse(tail)?)?;
    let r = tensorcat::quantale::localize_half(&m)?;
    let mut o = Outcome::new(r.passed(), to_value(&r)).note(format!("value {:?}", r.value));
    if !r.passed() {
        o.witnesses.push(format!("fixed point {}, idempotent {}, converged at {:?}", r.fixed_point, r.idempotent, r.converged_at));
    }
    Ok(o)
}

pub fn localize_iso(seed: u64, count: usize) -> Result<Outcome> {
    let r = LocalizeIsoReport::random(seed, count)?;
    let o = Outcome::new(r.passed, to_value(&r));
    Ok(if r.passed { o } else { o.witness("product, sup or unit does not correspond under the value map") })
}

pub fn reflect_torsion(group: &str, a: u64, targets_up_to: Option<u64>) -> Result<Outcome> {
    if a == 0 {
        return Err(Error::Invalid("a must be nonzero".into()));
    }
    let m = FgAbGroup::parse(group)?;
    let r = torsion_reflect(&m, a)?;
    let mut o = Outcome::new(r.passed(), Value::Null).note(format!("R({m}) = {}", r.result));
    if !r.passed() {
        o.witnesses.push(format!("reflection of {m} at a = {a} is not a fixed idempotent result"));
    }
    let mut universal = Value::Null;
    if let Some(bound) = targets_up_to {
        let targets: Vec<FgAbGroup> = (1..=bound).flat_map(FgAbGroup::of_order).filter(|g| g.mul_injective(a)).collect();
        let u = reflection_universal_check(&m, a, &targets)?;
        if !u.passed {
            o.passed = false;
            o.witnesses.push("restriction along the unit is not a bijection for some target".into());
        }
        universal = to_value(&u);
    }
    o.payload = json!({ "reflection": to_value(&r), "result": r.result.to_string(), "universal": universal });
    Ok(o)
}

pub fn tf_tensor(m: &str, n: &str) -> Result<Outcome> {
    let (m, n) = (FgAbGroup::parse(m)?, FgAbGroup::parse(n)?);
    let r = tensorcat::localize::tf_tensor(&m, &n);
    let mut o = Outcome::new(r.passed(), to_value(&r)).note(format!("{m} ⊗ {n} = {}", r.result));
    if !r.passed() {
        o.witnesses.push(format!("unit {}, symmetric {}, associative {}", r.unit_law, r.symmetric, r.associative));
    }
    Ok(o)
}

pub fn section(summands: &str, top: usize) -> Result<Outcome> {
    let s: Vec<Summand> = summands.split(',').map(Summand::parse).collect::<Result<_>>()?;
    let free = s.iter().filter(|x| matches!(x, Summand::Free { .. })).count();
    let r = section_localize(&GradedQt::from_summands(&s, top))?;
    let o = Outcome::new(r.colimit_dim == free, json!({ "summands": s, "free_summands": free, "report": to_value(&r) }))
        .note(format!("colimit dimension {}", r.colimit_dim));
    Ok(if r.colimit_dim == free { o } else { o.witness(format!("colimit dimension {} but {free} free summands", r.colimit_dim)) })
}

pub fn freesym_compose(cat: &str, f: &str, g: &str, tensor: bool) -> Result<Outcome> {
    let cat = FinCat::parse(cat)?;
    let (f, g) = (SmcMorphism::parse(&cat, f)?, SmcMorphism::parse(&cat, g)?);
    let h = if tensor { smc_tensor(&f, &g) } else { smc_compose(&cat, &g, &f)? };
    let inv = smc_inverse(&cat, &h).map(|i| i.view(&cat));
    let view = h.view(&cat);
    Ok(Outcome::new(true, json!({ "operation": if tensor { "tensor" } else { "compose" }, "f": f.view(&cat), "g": g.view(&cat), "result": view, "inverse": inv }))
        .note(view.to_string()))
}

pub fn freesym_extend(cat: &str, functor: Option<&str>, morphism: &str, seed: u64, pairs: usize) -> Result<Outcome> {
    let cat = FinCat::parse(cat)?;
    let functor = match functor {
        Some(j) => MatrixFunctor::from_json(&cat, j)?,
        None => MatrixFunctor::idempotent_example(&cat)?,
    };
    let f = SmcMorphism::parse(&cat, morphism)?;
    let ext = extend_functor(&cat, &functor);
    let image = ext.on_morphism(&f);
    let r = extension_check(&ext, seed, pairs, 3);
    let c = coxeter_check(&ext, 3);
    let mut o = Outcome::new(
        r.passed() && c.passed(),
        json!({
            "morphism": f.view(&cat), "source_dim": ext.on_objects(&f.src), "target_dim": ext.on_objects(&f.dst),
            "matrix": matrix_strings(&image), "extension": r, "coxeter": c,
        }),
    );
    o.witnesses.extend(r.witness.clone());
    o.witnesses.extend(c.witness.clone());
    Ok(o.note(format!("image is {}×{}", image.rows, image.cols)))
}

pub fn check(suite: &str, seed: u64, max_size: usize) -> Result<Outcome> {
    let r = run_suite(suite, seed, max_size)?;
    let mut o = Outcome::new(r.passed, to_value(&r));
    for c in r.cases.iter().filter(|c| !c.passed) {
        o.witnesses.push(format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
    }
    let passed = r.cases.iter().filter(|c| c.passed).count();
    Ok(o.note(format!("suite {suite}, seed {seed}: {passed}/{} cases pass", r.cases.len())))
}
