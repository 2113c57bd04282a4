use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tensorcat::derham::{derham_complex, FpAlgebra};
use tensorcat::exactring::{groebner_basis, parse_polynomial, Field};
use tensorcat::fpmod::ModulePresentation;
use tensorcat::monadkit::{tensor_modules, FiniteAlgebra, Theory};
use tensorcat::projgeom::plucker_relations;
use tensorcat::sympow::{bracket_identity_certificate, ext_power_auto, sym_power};

fn exactring(c: &mut Criterion) {
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let gens: Vec<_> = ["x^2*y - z", "x*y^2 - x", "z^2 - y"].iter().map(|s| parse_polynomial(s, &vars, &Field::Rationals).unwrap()).collect();
    c.bench_function("groebner 3 vars", |b| b.iter(|| groebner_basis(black_box(&gens))));
}

fn sympow(c: &mut Criterion) {
    let v = ModulePresentation::free(&tensorcat::exactring::RingDescriptor::Rationals, 4);
    c.bench_function("ext^2 Q^4", |b| b.iter(|| ext_power_auto(black_box(&v), 2).unwrap()));
    c.bench_function("sym^3 Q^4", |b| b.iter(|| sym_power(black_box(&v), 3).unwrap()));
    c.bench_function("bracket certificate", |b| b.iter(|| bracket_identity_certificate().unwrap()));
}

fn derham(c: &mut Criterion) {
    let alg = FpAlgebra::parse("QQ[x,y]/(x^3, y^2)").unwrap();
    c.bench_function("de rham QQ[x,y]/(x^3,y^2)", |b| b.iter(|| derham_complex(black_box(&alg), 3).unwrap()));
}

fn projgeom(c: &mut Criterion) {
    c.bench_function("plucker 5 2", |b| b.iter(|| plucker_relations(black_box(5), 2).unwrap()));
}

fn monadkit(c: &mut Criterion) {
    let th = Theory::SupLattice;
    let a = FiniteAlgebra::free(&th, 2).unwrap();
    c.bench_function("supl F(2) ⊗ F(2)", |b| b.iter(|| tensor_modules(black_box(&a), &a).unwrap()));
}

criterion_group!(kernels, exactring, sympow, derham, projgeom, monadkit);
criterion_main!(kernels);
