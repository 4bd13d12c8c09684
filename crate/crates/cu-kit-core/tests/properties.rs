//! Property tests for the order, arithmetic, and morphism invariants.

use proptest::prelude::*;

use cu_kit_core::extnat::ExtNat;
use cu_kit_core::instance::{CuInstance, ExtNatCu};
use cu_kit_core::laws::Sampler;
use cu_kit_core::limit::{thread_equiv, thread_leq, CuDiagram, Thread, Tri};
use cu_kit_core::matrix_map::MatrixCuMap;
use cu_kit_core::rational::ExtRational;
use cu_kit_core::samplers::NatSampler;
use cu_kit_core::vector::ExtNatVector;

fn extnat() -> impl Strategy<Value = ExtNat> {
    prop_oneof![
        4 => (0u128..500).prop_map(ExtNat::Fin),
        1 => Just(ExtNat::Inf),
    ]
}

fn rational() -> impl Strategy<Value = ExtRational> {
    prop_oneof![
        4 => (0i64..200, 1i64..24).prop_map(|(n, d)| ExtRational::from_ratio(n, d).unwrap()),
        1 => Just(ExtRational::Inf),
    ]
}

proptest! {
    #[test]
    fn extnat_is_an_ordered_semigroup(a in extnat(), b in extnat(), c in extnat()) {
        prop_assert_eq!(a.add(b), b.add(a));
        prop_assert_eq!(a.add(b).add(c), a.add(b.add(c)));
        prop_assert_eq!(ExtNat::Fin(0).add(a), a);
        prop_assert!(ExtNat::Fin(0).leq(a));
        prop_assert!(a.leq(a));
        if a.leq(b) && b.leq(a) {
            prop_assert_eq!(a, b);
        }
        if a.leq(b) && b.leq(c) {
            prop_assert!(a.leq(c));
        }
        // addition is monotone
        if a.leq(b) {
            prop_assert!(a.add(c).leq(b.add(c)));
        }
    }

    #[test]
    fn extnat_interplay(a in extnat(), b in extnat(), c in extnat()) {
        if a.leq(b) && b.way_below(c) {
            prop_assert!(a.way_below(c));
        }
        if a.way_below(b) && b.leq(c) {
            prop_assert!(a.leq(c));
        }
    }

    #[test]
    fn rational_order_and_addition(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(ExtRational::zero().leq(&a));
        if a.leq(&b) && b.leq(&a) {
            prop_assert_eq!(a.clone(), b.clone());
        }
        if a.way_below(&b) && b.leq(&c) {
            prop_assert!(a.leq(&c));
        }
    }

    #[test]
    fn way_below_claims_survive_sampled_sequences(
        x in extnat(),
        y in extnat(),
        seed in 0u64..500,
    ) {
        // Soundness probe: for any claimed x << y and any sampled certified
        // sequence with supremum at least y, some term dominates x.
        use rand_chacha::rand_core::SeedableRng;
        let inst = ExtNatCu;
        if inst.way_below(&x, &y) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..5 {
                let s = <NatSampler as Sampler<ExtNatCu>>::dominating_sequence(
                    &NatSampler, &mut rng, &y,
                );
                prop_assert_ne!(
                    <NatSampler as Sampler<ExtNatCu>>::eventually_dominates(&NatSampler, &s, &x),
                    Some(false),
                    "claim {} << {} refuted", x, y
                );
            }
        }
    }
}

fn small_matrix(out_dim: usize, in_dim: usize) -> impl Strategy<Value = MatrixCuMap> {
    proptest::collection::vec(
        proptest::collection::vec(0u128..5, in_dim..=in_dim),
        out_dim..=out_dim,
    )
    .prop_map(|rows| MatrixCuMap::from_rows(&rows).unwrap())
}

fn small_vector(dim: usize) -> impl Strategy<Value = ExtNatVector> {
    proptest::collection::vec(
        prop_oneof![4 => (0u128..30).prop_map(ExtNat::Fin), 1 => Just(ExtNat::Inf)],
        dim..=dim,
    )
    .prop_map(ExtNatVector::new)
}

proptest! {
    #[test]
    fn map_application_is_additive_and_monotone(
        m in small_matrix(3, 2),
        v in small_vector(2),
        w in small_vector(2),
    ) {
        let lhs = m.apply(&v.add(&w)).unwrap();
        let rhs = m.apply(&v).unwrap().add(&m.apply(&w).unwrap());
        prop_assert_eq!(lhs, rhs);
        let bigger = v.add(&w);
        prop_assert!(m.apply(&v).unwrap().leq(&m.apply(&bigger).unwrap()));
    }

    #[test]
    fn map_composition_matches_sequential_application(
        m1 in small_matrix(3, 2),
        m2 in small_matrix(2, 3),
        v in small_vector(2),
    ) {
        let composed = m2.compose(&m1).unwrap().apply(&v).unwrap();
        let sequential = m2.apply(&m1.apply(&v).unwrap()).unwrap();
        prop_assert_eq!(composed, sequential);
    }
}

fn fixtures() -> Vec<CuDiagram> {
    vec![
        CuDiagram::from_stationary_map(cu_kit_core::matrix_map::map_from(&[&[2]])),
        CuDiagram::from_stationary_map(cu_kit_core::matrix_map::map_from(&[&[1, 1], &[1, 0]])),
        CuDiagram::from_stationary_map(cu_kit_core::matrix_map::map_from(&[&[1, 0], &[1, 1]])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn threads_compare_reflexively_and_encode_roundtrips(
        fixture in 0usize..3,
        stage in 1u32..4,
        coords in proptest::collection::vec(
            prop_oneof![5 => (0u128..12).prop_map(ExtNat::Fin), 1 => Just(ExtNat::Inf)],
            2,
        ),
    ) {
        let d = &fixtures()[fixture];
        let dim = d.stage_dim(stage).unwrap();
        let seed = ExtNatVector::new(coords[..dim].to_vec());
        let t = Thread::image(d, stage, seed).unwrap();
        prop_assert_eq!(thread_leq(d, &t, &t, 30), Tri::Le);
        let parsed = Thread::parse(d, &t.encode()).unwrap();
        prop_assert_eq!(&parsed, &t);
        // shifting along the connecting map preserves the class
        let img = d.map_from(stage).unwrap().apply(t.explicit_entries().last().unwrap()).unwrap();
        let shifted = Thread::image(d, stage + 1, img).unwrap();
        prop_assert_eq!(thread_equiv(d, &t, &shifted, 30), Tri::Le);
    }
}
