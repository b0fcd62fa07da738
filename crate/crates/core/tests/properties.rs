mod common;

use std::sync::Arc;

use gpd_core::linalg::{Backend, Matrix, PrimeField, Subspace};
use gpd_core::modules::{
    bd_presentation, canonical_presentation, check_module_equivalence, pushforward_module, FreeModule,
};
use gpd_core::persistence::{check_functoriality, Cofiltration, Filtration};
use gpd_core::poset::{int_of_galois, GaloisConnection, IntervalPoset};
use gpd_core::random::{
    random_family, random_galois, random_galois_from, random_int_function, random_module, random_poset,
    simplex_skeleton, trial_rng,
};
use gpd_core::simplicial::{barycentric_subdivision, chain_complex, compact_cochain_complex};
use gpd_core::{check_rota, SetKind, SimplexSet, SimplicialComplex};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = PrimeField> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)].prop_map(|p| PrimeField::new(p).unwrap())
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (field(), 0..=max, 0..=max).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(prop::collection::vec(-20i64..20, c), r).prop_map(move |rows| Matrix::from_rows(f, &rows, c).unwrap())
    })
}

fn gf2_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(0i64..2, c), r).prop_map(move |rows| Matrix::from_rows(PrimeField::gf2(), &rows, c).unwrap())
    })
}

fn skeleton() -> Arc<SimplicialComplex> {
    Arc::new(simplex_skeleton(5, 2))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn mobius_inversion_roundtrips(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let p = Arc::new(random_poset(&mut rng, 8));
        let m = random_int_function(&mut rng, Arc::clone(&p), -100, 100);
        prop_assert_eq!(m.mobius_inversion().mobius_sum(), m.clone());
        prop_assert_eq!(m.mobius_sum().mobius_inversion(), m.clone());
        let sums = common::naive_down_sums(|a, b| p.leq(a, b), m.mobius_inversion().values());
        prop_assert_eq!(sums.as_slice(), m.values());
    }

    #[test]
    fn mobius_inversion_is_linear(seed in any::<u64>(), k in -5i64..5) {
        let mut rng = trial_rng(seed, 0);
        let p = Arc::new(random_poset(&mut rng, 7));
        let m = random_int_function(&mut rng, Arc::clone(&p), -30, 30);
        let n = random_int_function(&mut rng, p, -30, 30);
        let lhs = m.scale(k).add(&n).mobius_inversion();
        let rhs = m.mobius_inversion().scale(k).add(&n.mobius_inversion());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rota_holds(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let c = random_galois(&mut rng, 6);
        let m = random_int_function(&mut rng, Arc::clone(c.source()), -9, 9);
        let r = check_rota(&c, &m);
        prop_assert!(r.passed, "{:?}", r.counterexample);
    }

    #[test]
    fn interval_construction_is_functorial(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let c = random_galois(&mut rng, 5);
        let (ip, iq, ic) = int_of_galois(&c);
        prop_assert_eq!(ic.source().len(), ip.len());
        prop_assert_eq!(ic.target().len(), iq.len());
        for i in 0..ip.len() {
            let (a, b) = ip.interval(i);
            let (x, y) = iq.interval(ic.lower()[i]);
            prop_assert_eq!((x, y), (c.lower()[a], c.lower()[b]));
        }
        let id = GaloisConnection::identity(Arc::clone(c.source()));
        let (_, _, iid) = int_of_galois(&id);
        prop_assert!(iid.lower().iter().enumerate().all(|(i, &j)| i == j));
        let next = random_galois_from(&mut rng, c.target(), 4);
        let composite = c.then(&next).unwrap();
        let (_, _, icomp) = int_of_galois(&composite);
        let (_, _, inext) = int_of_galois(&next);
        for i in 0..ip.len() {
            prop_assert_eq!(icomp.lower()[i], inext.lower()[ic.lower()[i]]);
        }
    }

    #[test]
    fn rank_of_transpose(m in matrix(7)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_has_complementary_dimension(m in matrix(7)) {
        let k = m.kernel_basis();
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        prop_assert!(m.mul(k.basis()).is_zero());
    }

    #[test]
    fn rank_matches_oracle(m in matrix(7)) {
        let p = i64::from(m.field().characteristic());
        let cols: Vec<Vec<i64>> = (0..m.cols()).map(|c| m.column(c).iter().map(|&x| i64::from(x)).collect()).collect();
        prop_assert_eq!(m.rank(), common::rank_of_columns(&cols, m.rows(), p));
    }

    #[test]
    fn packed_and_dense_elimination_agree(m in gf2_matrix(70)) {
        let dense = m.row_echelon_with(Backend::Dense);
        let packed = m.row_echelon_with(Backend::PackedGf2);
        prop_assert_eq!(dense.pivots, packed.pivots);
        prop_assert_eq!(dense.reduced, packed.reduced);
    }

    #[test]
    fn gf2_intersection_matches_enumeration(a in gf2_matrix(6), b_cols in 0usize..5, seed in any::<u64>()) {
        use rand::Rng;
        let n = a.rows();
        let mut rng = trial_rng(seed, 0);
        let bcols: Vec<Vec<u32>> = (0..b_cols).map(|_| (0..n).map(|_| rng.gen_range(0..2)).collect()).collect();
        let b = Matrix::from_columns(PrimeField::gf2(), n, &bcols);
        let (u, w) = (Subspace::span(&a), Subspace::span(&b));
        let in_span = |basis: &Subspace, v: u32| {
            let mut col = vec![0u32; n];
            for (i, x) in col.iter_mut().enumerate() {
                *x = (v >> i) & 1;
            }
            basis.contains(&col)
        };
        // enumerate 𝔽₂ⁿ by bitmask; `contains` is cross-checked by the rank oracle elsewhere
        let span_u: Vec<u32> = (0..1u32 << n).filter(|&v| {
            let cols: Vec<Vec<i64>> = (0..a.cols()).map(|c| a.column(c).iter().map(|&x| i64::from(x)).collect()).collect();
            let mut with_v = cols.clone();
            with_v.push((0..n).map(|i| i64::from((v >> i) & 1)).collect());
            common::rank_of_columns(&with_v, n, 2) == common::rank_of_columns(&cols, n, 2)
        }).collect();
        let common_count = span_u.iter().filter(|&&v| in_span(&w, v)).count();
        prop_assert_eq!(1usize << u.intersection_dim(&w).unwrap(), common_count);
    }

    #[test]
    fn boundaries_square_to_zero(seed in any::<u64>(), p in prop_oneof![Just(2u64), Just(3)]) {
        let mut rng = trial_rng(seed, 0);
        let k = skeleton();
        let poset = Arc::new(random_poset(&mut rng, 3));
        let field = PrimeField::new(p).unwrap();
        let f: Filtration = random_family(&mut rng, Arc::clone(&poset), Arc::clone(&k));
        let g: Cofiltration = random_family(&mut rng, poset, Arc::clone(&k));
        for a in 0..f.index().len() {
            prop_assert!(chain_complex(f.set(a), field).unwrap().squares_to_zero());
            prop_assert!(compact_cochain_complex(g.set(a), field).unwrap().squares_to_zero());
        }
    }

    #[test]
    fn complement_swaps_closure(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = trial_rng(seed, 0);
        let k = skeleton();
        let members: Vec<bool> = (0..k.len()).map(|_| rng.gen_bool(0.5)).collect();
        let as_sub = SimplexSet::new(Arc::clone(&k), members.clone(), SetKind::Sub).is_ok();
        let complement: Vec<bool> = members.iter().map(|m| !m).collect();
        let as_sup = SimplexSet::new(Arc::clone(&k), complement, SetKind::Sup).is_ok();
        prop_assert_eq!(as_sub, as_sup);
        let closed = SimplexSet::closure(Arc::clone(&k), (0..k.len()).filter(|&i| members[i]), SetKind::Sub);
        prop_assert!(closed.complement().kind() == SetKind::Sup);
    }

    #[test]
    fn functoriality_holds(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let k = skeleton();
        let p = Arc::new(random_poset(&mut rng, 4));
        let c = random_galois_from(&mut rng, &p, 4);
        let f: Filtration = random_family(&mut rng, Arc::clone(&p), Arc::clone(&k));
        let r = check_functoriality(&f, &c, PrimeField::gf2()).unwrap();
        prop_assert!(r.passed, "{:?}", r.witness);
        let g: Cofiltration = random_family(&mut rng, p, k);
        let r = check_functoriality(&g, &c, PrimeField::new(3).unwrap()).unwrap();
        prop_assert!(r.passed, "{:?}", r.witness);
    }

    #[test]
    fn presentation_diagram_matches_kernel(seed in any::<u64>(), p in prop_oneof![Just(2u64), Just(3)]) {
        let mut rng = trial_rng(seed, 0);
        let poset = Arc::new(random_poset(&mut rng, 5));
        let m = random_module(&mut rng, Arc::clone(&poset), PrimeField::new(p).unwrap(), 3);
        let ip = IntervalPoset::new(poset);
        let via_pres = bd_presentation(&canonical_presentation(&m)).mobius_inversion();
        prop_assert_eq!(ip.off_diagonal_difference(&via_pres, &m.diagram()), None);
    }

    #[test]
    fn kernels_grow_along_targets(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let poset = Arc::new(random_poset(&mut rng, 5));
        let m = random_module(&mut rng, Arc::clone(&poset), PrimeField::new(3).unwrap(), 3);
        let ip = IntervalPoset::new(Arc::clone(&poset));
        let ker = m.kernel_function();
        for i in 0..ip.len() {
            for j in 0..ip.len() {
                let ((a, b), (c, d)) = (ip.interval(i), ip.interval(j));
                if a == c && poset.leq(b, d) {
                    prop_assert!(ker.get(i) <= ker.get(j));
                }
            }
        }
    }

    #[test]
    fn free_modules_have_no_kernel(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = trial_rng(seed, 0);
        let poset = Arc::new(random_poset(&mut rng, 5));
        let births: Vec<usize> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..poset.len())).collect();
        let free = FreeModule::new(poset, births).to_module(PrimeField::gf2());
        prop_assert!(free.kernel_function().values().iter().all(|&v| v == 0));
    }

    #[test]
    fn module_pushforward_matches_diagram_pushforward(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let poset = Arc::new(random_poset(&mut rng, 4));
        let m = random_module(&mut rng, Arc::clone(&poset), PrimeField::new(3).unwrap(), 3);
        let c = random_galois_from(&mut rng, &poset, 4);
        let r = check_module_equivalence(&m, &c).unwrap();
        prop_assert!(r.passed, "{:?}", r);
        let n = pushforward_module(&m, &c).unwrap();
        prop_assert_eq!(n.index().len(), c.target().len());
    }

    #[test]
    fn subdivision_preserves_euler_and_betti(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = trial_rng(seed, 0);
        let k = skeleton();
        let seeds: Vec<usize> = (0..rng.gen_range(1..5)).map(|_| rng.gen_range(0..k.len())).collect();
        let sub = SimplexSet::closure(Arc::clone(&k), seeds, SetKind::Sub);
        let names: Vec<Vec<String>> = sub.iter().map(|i| k.simplex_names(i)).collect();
        let vertices: Vec<String> = names.iter().filter(|s| s.len() == 1).map(|s| s[0].clone()).collect();
        let small = Arc::new(SimplicialComplex::new(&vertices, &names).unwrap());
        let sd = Arc::new(barycentric_subdivision(&small));
        prop_assert_eq!(sd.euler_characteristic(), small.euler_characteristic());
        let betti = |x: &Arc<SimplicialComplex>| {
            let cc = chain_complex(&SimplexSet::full(Arc::clone(x), SetKind::Sub), PrimeField::gf2()).unwrap();
            (0..=2).map(|d| cc.betti(d)).collect::<Vec<_>>()
        };
        prop_assert_eq!(betti(&sd), betti(&small));
    }
}
