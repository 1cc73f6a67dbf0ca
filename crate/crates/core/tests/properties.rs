mod common;

use common::oracle::{self, Mat};
use descent_ss::cech_brauer::{
    cech_cohomology, cech_level, cocycle_from_gluing, torsion_lift, AbPresheaf, Gluing, OneHypercover, SecondCohomology,
    TwistedTower,
};
use descent_ss::complexes::{pages_agree, skeletal_filtration, truncation_filtration};
use descent_ss::cosimplicial::{circle_cochains, cobar, CosimplicialAbGroup, FiniteGroup, GroupModule};
use descent_ss::exact_couple::{reindex_tilde, reindex_tilde_inverse, untilde_coords, tilde_coords, ExactCouple};
use descent_ss::generate::{random_cosimplicial_chain_complex, sign_module};
use descent_ss::linalg::{congruence_kernel, smith_normal_form};
use descent_ss::ss_compare::holim_ss;
use descent_ss::{FgAbGroup, Int, IntMatrix, Invariants, Lattice, Matrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn int_matrix(m: &Mat, cols: usize) -> IntMatrix {
    Matrix::from_vec(m.len(), cols, m.iter().flatten().map(|&v| Int::from(v)).collect())
}

fn small_matrix(rows: usize, cols: usize, bound: i128) -> impl Strategy<Value = Mat> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows)
}

fn invariants(torsion: Vec<i128>, rank: usize) -> Invariants {
    Invariants { torsion: torsion.into_iter().map(Int::from).collect(), rank }
}

fn ints(v: &[i128]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_diagonal_matches_reference((r, c, m) in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| (Just(r), Just(c), small_matrix(r, c, 20)))) {
        let (d, l, rt) = smith_normal_form(&int_matrix(&m, c));
        prop_assert_eq!(l.mul(&int_matrix(&m, c)).mul(&rt), d.clone());
        let diag: Vec<i128> = (0..r.min(c)).map(|i| i128::try_from(&d[(i, i)]).unwrap()).filter(|&x| x != 0).collect();
        prop_assert_eq!(diag, oracle::smith_diagonal(&m, c));
    }

    #[test]
    fn group_invariants_match_reference((r, c, m) in (1usize..=4, 0usize..=4).prop_flat_map(|(r, c)| (Just(r), Just(c), small_matrix(r, c, 12)))) {
        let g = FgAbGroup::new(int_matrix(&m, c));
        let diag = oracle::smith_diagonal(&m, c);
        let torsion: Vec<i128> = diag.iter().copied().filter(|&d| d > 1).collect();
        prop_assert_eq!(g.invariants(), invariants(torsion, r - diag.len()));
    }

    #[test]
    fn congruence_kernel_is_a_preimage(
        (n, rows) in (1usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec((prop::collection::vec(-6i128..=6, n), 0i128..=6), 1..=3)))
    ) {
        let constraints = rows.iter().map(|(row, e)| (row.iter().enumerate().map(|(i, &x)| (i, Int::from(x))).collect::<Vec<_>>(), Int::from(*e)));
        let fast = congruence_kernel(n, constraints);
        let f = int_matrix(&rows.iter().map(|(row, _)| row.clone()).collect(), n);
        let moduli: Vec<Int> = rows.iter().map(|(_, e)| Int::from(*e)).collect();
        let target = Lattice::from_diagonal(&moduli);
        prop_assert_eq!(&fast, &target.preimage_by_kernel(&f));
        prop_assert_eq!(&fast, &target.preimage(&f));
    }

    #[test]
    fn diagonal_lattice_operations(a in prop::collection::vec(0i128..=12, 3), b in prop::collection::vec(0i128..=12, 3), v in prop::collection::vec(-30i128..=30, 3)) {
        let (la, lb) = (Lattice::from_diagonal(&ints(&a)), Lattice::from_diagonal(&ints(&b)));
        let general = |l: &Lattice| Lattice::from_vectors(3, &l.basis_vectors());
        let sum = la.sum(&lb);
        let mut both = la.basis_vectors();
        both.extend(lb.basis_vectors());
        prop_assert_eq!(&sum, &Lattice::from_vectors(3, &both));
        let x = ints(&v);
        prop_assert_eq!(la.intersection(&lb).contains(&x), la.contains(&x) && lb.contains(&x));
        prop_assert_eq!(general(&la).contains(&x), la.contains(&x));
        prop_assert!(sum.contains_lattice(&la) && sum.contains_lattice(&lb));
    }

    #[test]
    fn reindexing_round_trips(p in -6i64..=6, q in -6i64..=6) {
        let (s, t) = tilde_coords(p, q);
        prop_assert_eq!(untilde_coords(s, t), (p, q));
    }

    #[test]
    fn nerve_cech_is_group_cohomology(n in 1usize..=5, m in 1i128..=6) {
        let h = OneHypercover::group_nerve(&FiniteGroup::cyclic(n));
        let f = AbPresheaf::constant(h.site(), &FgAbGroup::cyclic(Int::from(m)));
        for s in 0..=2 {
            let got = cech_cohomology(&h, &f, s).unwrap().invariants();
            prop_assert_eq!(got, invariants(oracle::cyclic_group_cohomology_zm(n as i128, m, s), 0), "s = {}", s);
        }
        let z = AbPresheaf::constant(h.site(), &FgAbGroup::free(1));
        for s in 0..=2 {
            let (torsion, rank) = oracle::cyclic_group_cohomology_z(n as i128, s);
            prop_assert_eq!(cech_cohomology(&h, &z, s).unwrap().invariants(), invariants(torsion, rank));
        }
    }

    #[test]
    fn gluing_class_is_gauge_invariant(n in 2usize..=4, c in prop::collection::vec(-3i64..=3, 1..=20)) {
        let h = OneHypercover::group_nerve(&FiniteGroup::cyclic(n));
        let m = Int::from(n as i64);
        let f = AbPresheaf::constant(h.site(), &FgAbGroup::cyclic(m.clone()));
        let h2 = SecondCohomology::new(&h, &f).unwrap();
        let gens = h2.group().invariant_generators();
        let alpha = h2.representative(&gens[0]);
        let g = torsion_lift(&h, &m, &alpha).unwrap().expect("nerve classes lift");
        // shift θ by the image of an F-valued 1-cochain
        let k = g.inclusion.iter().find(|a| a.rows() == 1).map(|a| a[(0, 0)].clone()).unwrap();
        let dim = cech_level(&h, &f, 1).dim();
        let theta = g.theta.iter().enumerate().map(|(i, t)| t + &k * Int::from(c[i % c.len()])).collect();
        let shifted = Gluing::new(&f, g.ambient.clone(), g.inclusion.clone(), theta).unwrap();
        prop_assert_eq!(dim, g.theta.len());
        let a = cocycle_from_gluing(&h, &f, &g).unwrap();
        let b = cocycle_from_gluing(&h, &f, &shifted).unwrap();
        prop_assert_eq!(h2.class(&a), h2.class(&b));
        prop_assert_eq!(h2.class(&a), h2.class(&alpha));
    }

    #[test]
    fn d2_is_additive_in_the_rank(n in 2usize..=4, a in 1i64..=9, b in 1i64..=9) {
        let h = OneHypercover::group_nerve(&FiniteGroup::cyclic(n));
        let f = AbPresheaf::constant(h.site(), &FgAbGroup::cyclic(Int::from(n as i64)));
        let h2 = SecondCohomology::new(&h, &f).unwrap();
        let alpha = h2.representative(&h2.group().invariant_generators()[0]);
        let t = TwistedTower::with_second_cohomology(&h, &f, &alpha, h2.clone()).unwrap();
        let d = |k: i64| t.d2_on_rank(&Int::from(k)).unwrap();
        let sum: Vec<Int> = d(a).iter().zip(d(b)).map(|(x, y)| x + y).collect();
        let group = h2.group();
        let gens = group.invariant_generators();
        let ambient: Vec<Int> = (0..group.ambient_rank()).map(|i| gens.iter().zip(&sum).map(|(g, c)| &g[i] * c).sum()).collect();
        prop_assert_eq!(group.normal_form(&ambient), d(a + b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn couple_pages_equal_filtered_pages(seed in 0u64..1000) {
        let x = random_cosimplicial_chain_complex(&mut ChaCha8Rng::seed_from_u64(seed));
        let d = x.double_complex();
        for f in [skeletal_filtration(&d), truncation_filtration(&d)] {
            let couple = ExactCouple::from_filtration(&f);
            for r in 1..=4 {
                prop_assert_eq!(pages_agree(&couple.page(r), &f.page(r)), Ok(()), "r = {}", r);
            }
        }
    }

    #[test]
    fn next_page_is_homology_of_the_last(seed in 0u64..1000) {
        let x = random_cosimplicial_chain_complex(&mut ChaCha8Rng::seed_from_u64(seed));
        let pages = holim_ss(&x, 4);
        for w in pages.windows(2) {
            prop_assert!(w[0].check_d_squared().is_ok());
            for &(s, t) in w[0].terms.keys() {
                prop_assert_eq!(w[0].homology_at(s, t).invariants(), w[1].invariants(s, t), "r = {}, ({}, {})", w[0].r, s, t);
            }
        }
    }

    #[test]
    fn reindexed_pages_round_trip(seed in 0u64..1000) {
        let x = random_cosimplicial_chain_complex(&mut ChaCha8Rng::seed_from_u64(seed));
        let p = truncation_filtration(&x.double_complex()).page(2);
        prop_assert_eq!(pages_agree(&reindex_tilde_inverse(&reindex_tilde(&p)), &p), Ok(()));
    }
}

fn cosimplicial_corpus() -> Vec<(&'static str, CosimplicialAbGroup)> {
    vec![
        ("cobar Z/3 with Z", cobar(&GroupModule::trivial(FiniteGroup::cyclic(3), FgAbGroup::free(1)), 3).unwrap()),
        ("sign cobar", cobar(&sign_module(), 3).unwrap()),
        ("circle Z/4", circle_cochains(&FgAbGroup::cyclic(Int::from(4)), 4).unwrap()),
        ("constant Z/6", CosimplicialAbGroup::constant(FgAbGroup::cyclic(Int::from(6)), 3)),
    ]
}

#[test]
fn cosimplicial_identities_hold() {
    for (name, a) in cosimplicial_corpus() {
        assert!(a.check_identities().is_ok(), "{name}");
    }
}

#[test]
fn normalized_and_unnormalized_cochains_agree() {
    for (name, a) in cosimplicial_corpus() {
        let u = a.unnormalized_complex();
        let (n, _) = a.normalized_complex();
        for s in 0..a.truncation() as i64 {
            assert_eq!(u.cohomology(s).unwrap().invariants(), n.cohomology(s).unwrap().invariants(), "{name}, s = {s}");
        }
    }
}

#[test]
fn circle_cochains_compute_the_circle() {
    let a = circle_cochains(&FgAbGroup::free(1), 4).unwrap();
    assert_eq!(a.cohomotopy(0).unwrap().invariants(), invariants(vec![], 1));
    assert_eq!(a.cohomotopy(1).unwrap().invariants(), invariants(vec![], 1));
    assert!(a.cohomotopy(2).unwrap().is_trivial());
}

#[test]
fn sign_module_cohomology() {
    // H^s(Z/2; Z_-) = 0, Z/2, 0
    let a = cobar(&sign_module(), 3).unwrap();
    let want = [invariants(vec![], 0), invariants(vec![2], 0), invariants(vec![], 0)];
    for (s, w) in want.iter().enumerate() {
        assert_eq!(&a.cohomotopy(s).unwrap().invariants(), w, "s = {s}");
    }
}
