use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use tensorcat::derham::{derham_complex, omega1_comparison, FpAlgebra};
use tensorcat::exactring::{groebner_basis, jacobian, parse_ring, ratio, reduce, Field, Monomial, Polynomial, Rational, RingDescriptor};
use tensorcat::fpmod::{oid_decompose, residue_rank, symmetry, ModMorphism, ModulePresentation};
use tensorcat::freesym::{smc_compose, FinCat, SmcMorphism};
use tensorcat::localize::{tf_tensor, torsion_reflect, FgAbGroup};
use tensorcat::monadkit::{tensor_modules, FiniteAlgebra};
use tensorcat::perm;
use tensorcat::projgeom::{koszul_complex, plucker_roundtrip, segre_roundtrip, veronese_roundtrip, LineQuotient, RankDQuotient};
use tensorcat::quantale::{is_prime, is_prime_brute, localize_half, HalfSequence, IdealZ, Quantale};
use tensorcat::sympow::oracle::adjugate_inverse;
use tensorcat::sympow::{coequalizes, cramer_inverse, ext_power_auto, sym_power};

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_vec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rat(), n).prop_filter("nonzero", |v| v.iter().any(|x| !x.is_zero()))
}

fn poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((rat(), prop::collection::vec(0u32..=3, nvars)), 0..=4).prop_map(move |terms| {
        let f = Field::Rationals;
        terms.into_iter().fold(Polynomial::zero(&f, nvars), |acc, (c, e)| acc.add(&Polynomial::term(&f, Monomial(e), c)))
    })
}

fn square(d: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(rat(), d), d)
}

fn q_free(n: usize) -> ModulePresentation {
    ModulePresentation::free(&RingDescriptor::Rationals, n)
}

fn group() -> impl Strategy<Value = FgAbGroup> {
    prop::collection::vec(prop::sample::select(vec![0u64, 2, 3, 4, 5, 6, 8, 9, 12, 18]), 0..=3).prop_map(|o| FgAbGroup::from_cyclic(&o))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_idempotent_and_multiplicative(p in poly(2), q in poly(2)) {
        let ring = parse_ring("QQ[x,y]/(x^2-y, y^2)").unwrap();
        let pq = ring.pq().unwrap();
        let np = pq.normal_form(&p);
        prop_assert_eq!(pq.normal_form(&np), np.clone());
        prop_assert_eq!(pq.normal_form(&p.mul(&q)), pq.normal_form(&np.mul(&pq.normal_form(&q))));
    }

    #[test]
    fn generators_reduce_to_zero(g in prop::collection::vec(poly(2), 1..=3)) {
        let gb = groebner_basis(&g);
        for p in &g {
            prop_assert!(reduce(p, &gb).is_zero());
        }
    }

    #[test]
    fn jacobian_leibniz(f in poly(2), g in poly(2)) {
        let vars = vec!["x".to_string(), "y".to_string()];
        let j = jacobian(&[f.mul(&g), f.clone(), g.clone()], &vars, &["x", "y"]).unwrap();
        for c in 0..2 {
            prop_assert_eq!(&j[0][c], &f.mul(&j[2][c]).add(&g.mul(&j[1][c])));
        }
    }

    #[test]
    fn symmetry_is_involution(a in prop::collection::vec(0i64..=6, 1..=2), b in prop::collection::vec(0i64..=6, 1..=2)) {
        let (m, n) = (ModulePresentation::abelian(&a), ModulePresentation::abelian(&b));
        let s = symmetry(&m, &n).unwrap();
        let back = symmetry(&n, &m).unwrap().compose(&s).unwrap();
        prop_assert!(back.equals(&ModMorphism::identity(&s.source)).unwrap());
    }

    #[test]
    fn residue_rank_recovers_rank(k in 0usize..=4, lit in prop::sample::select(vec!["QQ", "ZZ", "ZZ/6", "QQ[x]/(x^2)", "ZZ/4"])) {
        let r = parse_ring(lit).unwrap();
        prop_assert_eq!(residue_rank(&ModulePresentation::free(&r, k)).unwrap(), k);
    }

    #[test]
    fn oid_annihilators_multiply_to_n(n in 2u64..=200) {
        let r = oid_decompose(n).unwrap();
        prop_assert!(r.matches_crt);
        for d in &r.decompositions {
            prop_assert_eq!(d.summand_orders.iter().product::<u64>(), n);
        }
    }

    #[test]
    fn power_dimensions(m in 1usize..=4, n in 0usize..=4) {
        prop_assert_eq!(ext_power_auto(&q_free(m), n).unwrap().module.dim().unwrap(), perm::binomial(m, n));
        let s = sym_power(&q_free(m), n).unwrap();
        prop_assert_eq!(s.module.dim().unwrap(), perm::binomial(m + n - 1, n));
        if n <= 3 {
            prop_assert!(coequalizes(&s).unwrap());
        }
    }

    #[test]
    fn cramer_matches_adjugate(a in prop_oneof![square(2), square(3)]) {
        let q = RingDescriptor::Rationals;
        let d = a.len();
        let m = a.iter().map(|r| r.iter().map(|x| q.from_rational(x).unwrap()).collect()).collect();
        let f = ModMorphism::new(&q_free(d), &q_free(d), m).unwrap();
        match adjugate_inverse(&a) {
            Some(adj) => {
                let g = cramer_inverse(&f, d).unwrap();
                let want: Vec<Vec<_>> = adj.iter().map(|r| r.iter().map(|x| q.from_rational(x).unwrap()).collect()).collect();
                prop_assert_eq!(g.matrix, want);
            }
            None => prop_assert!(cramer_inverse(&f, d).is_err()),
        }
    }

    #[test]
    fn derham_on_monomial_algebras(a in 1u32..=3, b in 1u32..=3, mixed in any::<bool>()) {
        let lit = if mixed { format!("QQ[x,y]/(x^{a}, y^{b}, x*y)") } else { format!("QQ[x,y]/(x^{a}, y^{b})") };
        let alg = FpAlgebra::parse(&lit).unwrap();
        let c = derham_complex(&alg, 3).unwrap();
        prop_assert!(c.well_defined && c.d_squared_zero && c.leibniz);
        prop_assert!(c.cohomology()[0] >= 1);
        let cmp = omega1_comparison(&alg).unwrap();
        prop_assert!(cmp.iso_certified && cmp.commutes_with_d);
    }

    #[test]
    fn koszul_exact(s in (1usize..=5).prop_flat_map(nonzero_vec)) {
        let n = s.len();
        let k = koszul_complex(&LineQuotient::new(s).unwrap(), n, None).unwrap();
        prop_assert!(k.d_squared_zero && k.exact);
    }

    #[test]
    fn plucker_round_trip(rows in prop::collection::vec(prop::collection::vec(rat(), 4), 2)) {
        if let Ok(t) = RankDQuotient::new(rows) {
            prop_assert!(plucker_roundtrip(&t).unwrap().passed());
        }
    }

    #[test]
    fn segre_veronese_round_trips(s1 in nonzero_vec(2), s2 in nonzero_vec(3), d in 2usize..=3) {
        let (s1, s2) = (LineQuotient::new(s1).unwrap(), LineQuotient::new(s2).unwrap());
        prop_assert!(segre_roundtrip(&s1, &s2).unwrap().passed());
        prop_assert!(veronese_roundtrip(&s2, d).unwrap().passed());
    }

    #[test]
    fn cyclic_module_tensor_is_gcd(a in prop::sample::select(vec![1usize, 2, 3, 4, 6, 12]), b in prop::sample::select(vec![1usize, 2, 3, 4, 6, 12])) {
        let t = tensor_modules(&FiniteAlgebra::cyclic_module(12, a).unwrap(), &FiniteAlgebra::cyclic_module(12, b).unwrap()).unwrap();
        prop_assert_eq!(t.size(), a.gcd(&b));
    }

    #[test]
    fn residual_adjunction(a in 0u128..=40, b in 0u128..=40) {
        let q = IdealZ;
        let r = q.residual(&b, &a);
        for z in 0..=60u128 {
            prop_assert_eq!(q.le(&q.mul(&z, &a), &b), q.le(&z, &r));
        }
    }

    #[test]
    fn quantale_laws_on_ideals(a in 0u128..=50, b in 0u128..=50, c in 0u128..=50) {
        let q = IdealZ;
        prop_assert_eq!(q.mul(&a, &q.sup(&b, &c)), q.sup(&q.mul(&a, &b), &q.mul(&a, &c)));
        prop_assert_eq!(q.mul(&a, &q.unit()), a);
        prop_assert_eq!(q.mul(&a, &b), q.mul(&b, &a));
    }

    #[test]
    fn prime_test_matches_brute(n in 0u128..=150) {
        prop_assert_eq!(is_prime(n), is_prime_brute(n, n.max(2)).is_ok());
    }

    #[test]
    fn localization_monotone_idempotent(
        start in -2i64..=2,
        xs in prop::collection::vec(0i64..=8, 1..=4),
        ys in prop::collection::vec(0i64..=8, 1..=4),
    ) {
        // t_n ≤ 2·t_{n+1}: build windows backwards from the last value
        let seq = |xs: &[i64]| {
            let mut v = vec![ratio(xs[0], 8)];
            for &x in &xs[1..] {
                let cap = (v.last().unwrap() * ratio(2, 1)).min(ratio(1, 1));
                v.push(cap * ratio(x, 8));
            }
            v.reverse();
            HalfSequence::new(start, v).unwrap()
        };
        let (m, n) = (seq(&xs), seq(&ys));
        let rm = localize_half(&m).unwrap();
        let rj = localize_half(&m.max(&n)).unwrap();
        prop_assert!(rm.passed());
        prop_assert!(rm.value <= rj.value);
        let again = localize_half(&rm.fixed).unwrap();
        prop_assert!(again.fixed.same_as(&rm.fixed));
    }

    #[test]
    fn torsion_reflection_idempotent(m in group(), a in prop::sample::select(vec![2u64, 3, 6])) {
        let r = torsion_reflect(&m, a).unwrap();
        prop_assert!(r.passed());
        prop_assert!(r.result.mul_injective(a));
        prop_assert_eq!(torsion_reflect(&r.result, a).unwrap().result, r.result);
    }

    #[test]
    fn tf_tensor_torsion_free(m in group(), n in group()) {
        let r = tf_tensor(&m, &n);
        prop_assert!(r.passed());
        prop_assert!(r.result.torsion().is_empty());
        prop_assert_eq!(tf_tensor(&FgAbGroup::free(1), &m).result, m.torsion_free_part());
    }

    #[test]
    fn smc_compose_associative(seed in prop::collection::vec(0usize..64, 3), n in 1usize..=3) {
        let cat = FinCat::idempotent_arrow();
        let pick = |src: &[usize], k: usize| {
            let all = tensorcat::freesym::morphisms_from(&cat, src);
            all[k % all.len()].clone()
        };
        let objs: Vec<usize> = (0..n).map(|i| seed[i % 3] % 2).collect();
        let f = pick(&objs, seed[0]);
        let g = pick(&f.dst, seed[1]);
        let h = pick(&g.dst, seed[2]);
        let left = smc_compose(&cat, &smc_compose(&cat, &h, &g).unwrap(), &f).unwrap();
        let right = smc_compose(&cat, &h, &smc_compose(&cat, &g, &f).unwrap()).unwrap();
        prop_assert_eq!(left.view(&cat), right.view(&cat));
        let id = SmcMorphism::identity(&cat, &f.dst);
        prop_assert_eq!(smc_compose(&cat, &id, &f).unwrap().view(&cat), f.view(&cat));
    }

    #[test]
    fn groupoid_composition_is_group_product(n in 1usize..=5, i in 0usize..120, j in 0usize..120) {
        let cat = FinCat::point();
        let all = perm::all(n);
        let (s, t) = (&all[i % all.len()], &all[j % all.len()]);
        let objs = vec![0; n];
        let f = SmcMorphism::bare(&cat, &objs, s).unwrap();
        let g = SmcMorphism::bare(&cat, &objs, t).unwrap();
        prop_assert_eq!(smc_compose(&cat, &g, &f).unwrap().sigma, perm::compose(t, s));
    }
}
