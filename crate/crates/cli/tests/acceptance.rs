//! Acceptance suite: one PASS/FAIL line per criterion, timed.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tensorcat::derham::{derham_complex, euler_contraction_check, FpAlgebra};
use tensorcat::exactring::{is_prime_u64, parse_polynomial, ratio, Field, Rational, RingDescriptor};
use tensorcat::fpmod::{oid_decompose, EpsExtension, ModMorphism, ModulePresentation, Structure};
use tensorcat::linalg::FieldMatrix;
use tensorcat::localize::{classical_tensor, reflection_universal_check, FgAbGroup};
use tensorcat::monadkit::{free_tensor_iso, tensor_modules, verify_universal_exhaustive, FiniteAlgebra, Theory};
use tensorcat::projgeom::{koszul_complex, LineQuotient};
use tensorcat::quantale::{localize_half, spectrum, zariski_laws_check, HalfSequence, LocValue, LocalizeIsoReport};
use tensorcat::suite::{random_ideals, DERHAM_CORPUS};
use tensorcat::sympow::oracle::{adjugate_inverse, leibniz_det};
use tensorcat::sympow::{asym_power, bracket_identity_certificate, cramer_inverse, ext_power_auto};

const BIN: &str = env!("CARGO_BIN_EXE_tensorcat");
const SEED: u64 = 20240917;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into() }
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(BIN).arg("--json").args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn rnd(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

fn square(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<Rational>> {
    (0..d).map(|_| (0..d).map(|_| rnd(rng)).collect()).collect()
}

fn morphism(a: &[Vec<Rational>]) -> ModMorphism {
    let q = RingDescriptor::Rationals;
    let free = ModulePresentation::free(&q, a.len());
    let m = a.iter().map(|r| r.iter().map(|x| q.from_rational(x).unwrap()).collect()).collect();
    ModMorphism::new(&free, &free, m).unwrap()
}

/// Equal up to an overall sign, as polynomials in `vars`.
fn same_quadric(got: &str, want: &str, vars: &[String]) -> bool {
    let f = Field::Rationals;
    match (parse_polynomial(got, vars, &f), parse_polynomial(want, vars, &f)) {
        (Ok(g), Ok(w)) => g == w || g == w.neg(),
        _ => false,
    }
}

fn quadrics_of(stdout: &[u8]) -> Option<(Vec<String>, Vec<String>)> {
    let v: Value = serde_json::from_slice(stdout).ok()?;
    let strs = |k: &str| v["payload"][k].as_array().map(|a| a.iter().filter_map(|x| x.as_str().map(String::from)).collect());
    Some((strs("coordinates")?, strs("quadrics")?))
}

fn c1() -> Verdict {
    let (code, out) = run_cli(&["plucker", "--n", "4", "--d", "2"]);
    let Some((coords, qs)) = quadrics_of(&out) else { return verdict(false, "no JSON report") };
    let ok = code == 0 && qs.len() == 1 && same_quadric(&qs[0], "X12*X34 - X13*X24 + X14*X23", &coords);
    verdict(ok, format!("{qs:?}"))
}

fn c2() -> Verdict {
    let (code, out) = run_cli(&["segre", "--dims", "2", "2"]);
    let Some((coords, qs)) = quadrics_of(&out) else { return verdict(false, "no JSON report") };
    // x_ij is the flat coordinate x_{2i+j}
    let flat: Vec<String> = (0..4).map(|k| format!("x{k}")).collect();
    let renamed: Vec<String> = qs
        .iter()
        .map(|q| coords.iter().enumerate().fold(q.clone(), |acc, (k, c)| acc.replace(c.as_str(), &flat[k])))
        .collect();
    let ok = code == 0 && renamed.len() == 1 && same_quadric(&renamed[0], "x0*x3 - x1*x2", &flat);
    verdict(ok, format!("{qs:?}"))
}

fn c3() -> Verdict {
    let z = ModulePresentation::free(&RingDescriptor::Integers, 1);
    let mut seen = Vec::new();
    let mut ok = true;
    for n in 2..=4 {
        let m = asym_power(&z, n).unwrap().module;
        ok &= m.structure().unwrap() == Structure::Factors(vec![2.into()]);
        seen.push(m.describe());
    }
    verdict(ok, format!("ASym^2..4(Z) = {seen:?}"))
}

fn c4() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let q = RingDescriptor::Rationals;
    for d in 1..=5 {
        let free = ModulePresentation::free(&q, d);
        let ld = ext_power_auto(&free, d).unwrap();
        if ld.module.dim().unwrap() != 1 {
            return verdict(false, format!("dim Λ^{d}(Q^{d}) ≠ 1"));
        }
        // identity first: the wedge of the basis goes to 1
        let mut samples = vec![(0..d).map(|i| (0..d).map(|j| if i == j { ratio(1, 1) } else { Rational::zero() }).collect()).collect()];
        samples.extend((0..3).map(|_| square(&mut rng, d)));
        for a in samples {
            let img = ld.induced(&ld, &morphism(&a)).unwrap();
            if img.matrix[0][0] != q.from_rational(&leibniz_det(&a)).unwrap() {
                return verdict(false, format!("Λ^{d} A ≠ det A for {a:?}"));
            }
        }
    }
    verdict(true, "d = 1..5, 4 matrices each")
}

fn c5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let q = RingDescriptor::Rationals;
    let mut done = 0;
    while done < 100 {
        let d = 2 + done % 2;
        let a = square(&mut rng, d);
        let Some(adj) = adjugate_inverse(&a) else { continue };
        let g = cramer_inverse(&morphism(&a), d).unwrap();
        let want: Vec<Vec<_>> = adj.iter().map(|r| r.iter().map(|x| q.from_rational(x).unwrap()).collect()).collect();
        if g.matrix != want {
            return verdict(false, format!("mismatch on {a:?}"));
        }
        done += 1;
    }
    verdict(true, "100 matrices, 2×2 and 3×3")
}

/// `H^0`, `H^1` of `Q[x]/(x^k)` from `d(x^i) = i x^{i-1} dx` on the bases `1..x^{k-1}` and `dx..x^{k-2}dx`.
fn brute_cohomology(k: usize) -> (usize, usize) {
    let f = Field::Rationals;
    let mut d = FieldMatrix::zero(&f, k - 1, k);
    for i in 1..k {
        d.data[i - 1][i] = ratio(i as i64, 1);
    }
    let r = d.rank();
    (k - r, (k - 1) - r)
}

fn c6() -> Verdict {
    let mut ok = DERHAM_CORPUS.len() >= 10;
    for lit in DERHAM_CORPUS {
        let b = FpAlgebra::parse(lit).unwrap();
        ok &= b.nvars() <= 3;
        let c = derham_complex(&b, b.nvars() + 1).unwrap();
        if !(c.d_squared_zero && c.leibniz && c.well_defined) {
            return verdict(false, format!("{lit}: d² = 0 {}, Leibniz {}", c.d_squared_zero, c.leibniz));
        }
    }
    for k in 2..=4 {
        let c = derham_complex(&FpAlgebra::parse(&format!("QQ[x]/(x^{k})")).unwrap(), 2).unwrap();
        let h = c.cohomology();
        let (h0, h1) = brute_cohomology(k);
        if h[0] != h0 || h[1] != h1 || (k == 2 && (h0, h1) != (1, 0)) {
            return verdict(false, format!("Q[x]/(x^{k}): H = {h:?}, oracle ({h0}, {h1})"));
        }
    }
    verdict(ok, format!("{} algebras; H(Q[x]/(x^2)) = (1, 0)", DERHAM_CORPUS.len()))
}

fn c7() -> Verdict {
    for n in 0..=3 {
        let r = euler_contraction_check(n).unwrap();
        if !r.passed() {
            return verdict(false, format!("n = {n}: {r:?}"));
        }
    }
    verdict(true, "n = 0..3")
}

fn nonzero(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..n).map(|_| rnd(rng)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn c8() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for n in 1..=5 {
        for _ in 0..20 {
            let s = LineQuotient::new(nonzero(&mut rng, n)).unwrap();
            let e = loop {
                let e = nonzero(&mut rng, n);
                if !s.apply(&e).is_zero() {
                    break e;
                }
            };
            let k = koszul_complex(&s, n, Some(&e)).unwrap();
            if !(k.passed() && k.contraction == Some(true)) {
                return verdict(false, format!("s = {:?}", s.s));
            }
        }
    }
    verdict(true, "n = 1..5, 20 covectors each")
}

fn c9() -> Verdict {
    let c = bracket_identity_certificate().unwrap();
    verdict(c.published_combination_valid && c.published_terms == 12 && c.outcome.verified, format!("{} terms, {}", c.published_terms, c.target))
}

fn c10() -> Verdict {
    for th in Theory::builtins() {
        let r = verify_universal_exhaustive(&th, 3).unwrap();
        if !r.failures.is_empty() {
            return verdict(false, format!("{}: {}", th.name(), r.failures[0]));
        }
        for nx in 0..=3 {
            for ny in 0..=3 {
                if !free_tensor_iso(&th, nx, ny).unwrap().passed() {
                    return verdict(false, format!("{}: F({nx}) ⊗ F({ny})", th.name()));
                }
            }
        }
    }
    for p in 1..=4 {
        for q in 1..=4 {
            let t = tensor_modules(&FiniteAlgebra::pointed(p).unwrap(), &FiniteAlgebra::pointed(q).unwrap()).unwrap();
            if t.size() != (p - 1) * (q - 1) + 1 {
                return verdict(false, format!("|{p} ∧ {q}| = {}", t.size()));
            }
        }
    }
    let t = tensor_modules(&FiniteAlgebra::cyclic_module(6, 2).unwrap(), &FiniteAlgebra::cyclic_module(6, 3).unwrap()).unwrap();
    let classical = classical_tensor(&FgAbGroup::from_cyclic(&[2]), &FgAbGroup::from_cyclic(&[3]));
    verdict(t.size() == 1 && classical.is_trivial(), "5 theories; smash up to 4; Z/2 ⊗ Z/3 = 0")
}

fn c11() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    for _ in 0..30 {
        let start = rng.gen_range(-2..=2);
        let len = rng.gen_range(1..=4);
        let mut vals = vec![ratio(rng.gen_range(0..=8), 8)];
        for _ in 1..len {
            let prev = vals.last().unwrap().clone();
            let cap = (prev * ratio(2, 1)).min(ratio(1, 1));
            vals.push(cap * ratio(rng.gen_range(0..=4), 4));
        }
        vals.reverse();
        let m = HalfSequence::new(start, vals).unwrap();
        let r = localize_half(&m).unwrap();
        for n in -6..=6 {
            let want = match &r.value {
                LocValue::Finite(v) => (v * tensorcat::quantale::pow2(-n)).min(ratio(1, 1)),
                LocValue::Infinite => ratio(1, 1),
            };
            if r.fixed.at(n) != want {
                return verdict(false, format!("{m:?}: t_{n} = {} ≠ {want}", r.fixed.at(n)));
            }
        }
    }
    let iso = LocalizeIsoReport::random(SEED, 50).unwrap();
    verdict(iso.passed, "30 fixed sequences; 50 dyadic pairs")
}

/// The literal intersection form of the product law is false in general: the witness is reported.
fn c12() -> Verdict {
    let s = spectrum(100);
    let expect: Vec<u128> = std::iter::once(0).chain((2..=100).filter(|&p| is_prime_u64(p as u64))).collect();
    let samples = random_ideals(SEED, 30);
    let z = zariski_laws_check(&samples, 100);
    let sum = z.law("V(Σ I) = ∩ V(I)").is_some_and(|l| l.holds);
    let union = z.law("V(IJ) = V(I) ∪ V(J)").is_some_and(|l| l.holds);
    let inter = z.law("V(IJ) = V(I) ∩ V(J)").expect("law is checked");
    let primes_ok = s.agree && s.primes == expect;
    assert!(primes_ok && sum && union, "spectrum or the true laws fail");
    assert!(!inter.holds && inter.witness.is_some(), "the intersection form has a counterexample");
    verdict(
        primes_ok && sum && inter.holds,
        format!(
            "primes agree; V(ΣI) = ∩V(I) holds; V(IJ) = V(I) ∩ V(J) refuted: {} (V(IJ) = V(I) ∪ V(J) holds)",
            inter.witness.clone().unwrap_or_default()
        ),
    )
}

fn c13() -> Verdict {
    for n in 2..=60u64 {
        if !oid_decompose(n).unwrap().matches_crt {
            return verdict(false, format!("Z/{n}"));
        }
    }
    verdict(true, "n = 2..60")
}

fn c14() -> Verdict {
    let targets: Vec<FgAbGroup> = (1..=12).flat_map(FgAbGroup::of_order).filter(|g| g.mul_injective(2)).collect();
    let r = reflection_universal_check(&FgAbGroup::from_cyclic(&[12]), 2, &targets).unwrap();
    let ok = r.passed && r.reflection.result == FgAbGroup::from_cyclic(&[3]);
    verdict(ok, format!("R(Z/12) = {}, {} targets", r.reflection.result, targets.len()))
}

fn c15() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 15);
    for _ in 0..10 {
        let p = nonzero(&mut rng, 2);
        let c = loop {
            let c = rnd(&mut rng);
            if !c.is_zero() {
                break c;
            }
        };
        let i = [-(&c * &p[1]), &c * &p[0]];
        let ext = EpsExtension::new([p[0].clone(), p[1].clone()], i).unwrap();
        let r = ext.check().unwrap();
        if !r.passed() {
            return verdict(false, format!("p = {p:?}: {r:?}"));
        }
    }
    verdict(true, "10 extensions over Q[e]/(e^2)")
}

fn c16() -> Verdict {
    let seed = SEED.to_string();
    let t = Instant::now();
    let (c1, a) = run_cli(&["check", "--suite", "all", "--seed", &seed]);
    let one = t.elapsed();
    let (c2, b) = run_cli(&["check", "--suite", "all", "--seed", &seed]);
    verdict(c1 == 0 && c2 == 0 && a == b && one < Duration::from_secs(300), format!("{} bytes, identical {}, one run {one:.2?}", a.len(), a == b))
}

fn main() {
    let criteria: [(fn() -> Verdict, u64); 16] = [
        (c1, 1),
        (c2, 1),
        (c3, 1),
        (c4, 5),
        (c5, 10),
        (c6, 30),
        (c7, 10),
        (c8, 10),
        (c9, 1),
        (c10, 60),
        (c11, 5),
        (c12, 5),
        (c13, 5),
        (c14, 10),
        (c15, 10),
        (c16, 600),
    ];
    let mut failed = Vec::new();
    for (k, (f, limit)) in criteria.iter().enumerate() {
        let n = k + 1;
        let t = Instant::now();
        let v = f();
        let dt = t.elapsed();
        let in_time = dt < Duration::from_secs(*limit);
        let ok = v.passed && in_time;
        println!("criterion {n}: {} ({}; {dt:.2?}, limit {limit} s)", if ok { "PASS" } else { "FAIL" }, v.detail);
        if !ok {
            failed.push(n);
        }
    }
    // 12 is refuted by a counterexample, asserted inside c12
    if failed != [12] {
        eprintln!("unexpected failures: {failed:?}");
        std::process::exit(1);
    }
}
