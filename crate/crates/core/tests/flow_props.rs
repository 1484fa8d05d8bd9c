mod common;

use mbqc_core::flow::{
    basis_from_pair, cones, derive_processing, enumerate_relations, extremalize, matroid_bases_brute_force,
    matroid_bases_exchange, normal_form, reconstruct, temporal_relation, FlowError,
};
use mbqc_core::stabilizer::{complement_indices, indices, Qubit, QubitSet};
use mbqc_core::transforms::check_invariance;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig::with_cases(cases)
}

proptest! {
    #![proptest_config(config(120))]

    #[test]
    fn enumeration_matches_brute_force_count(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = common::rng(seed);
        let g = common::random_generator(&mut rng, n);
        let relations = enumerate_relations(&g);
        prop_assert_eq!(relations.len(), common::brute_force_basis_count(&g));
        let cols = common::packed_columns(&g);
        for p in &relations {
            prop_assert_eq!(p.igauge.len(), p.ocomp.len());
            let basis: Vec<u64> = basis_from_pair(&p.igauge, &p.ocomp, n).iter().map(|&c| cols[c]).collect();
            prop_assert_eq!(common::rank_of_columns(&basis), n);
        }
    }

    #[test]
    fn exchange_walk_matches_brute_force(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = common::rng(seed);
        let g = common::random_generator(&mut rng, n);
        let mut walk = matroid_bases_exchange(&g);
        let mut brute = matroid_bases_brute_force(&g);
        walk.sort();
        brute.sort();
        prop_assert_eq!(walk, brute);
    }

    #[test]
    fn reconstruction_round_trip(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = common::rng(seed);
        let g = common::random_generator(&mut rng, n);
        for p in enumerate_relations(&g) {
            let rebuilt = reconstruct(&p.t, &p.h, &p.z, &p.r).unwrap();
            prop_assert!(rebuilt.combined().same_row_space(&g.combined()));
        }
    }

    #[test]
    fn relations_independent_of_generator_choice(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = common::rng(seed);
        let g = common::random_generator(&mut rng, n);
        let other = g.with_rows(&common::random_invertible(&mut rng, n));
        for p in enumerate_relations(&g) {
            prop_assert_eq!(derive_processing(&other, &p.igauge, &p.ocomp).unwrap(), p);
        }
    }

    #[test]
    fn normal_form_blocks(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = common::rng(seed);
        let g = common::random_generator(&mut rng, n);
        for p in enumerate_relations(&g) {
            prop_assert!(p.is_normal_form());
            let nf = normal_form(&g, &p.igauge, &p.ocomp).unwrap();
            let ig = indices(&p.igauge);
            let oc_c = complement_indices(&p.ocomp, n);
            for (j, k) in nf.correction_ops.iter().enumerate() {
                prop_assert!(g.contains(k));
                for (jj, &a) in oc_c.iter().enumerate() {
                    prop_assert_eq!(k.v.get(a), j == jj);
                }
                prop_assert!(ig.iter().all(|&i| !k.w.get(i)));
                prop_assert_eq!(k.w.clone(), p.t.column(oc_c[j]));
            }
            for (c, k) in nf.gauge_ops.iter().enumerate() {
                prop_assert!(g.contains(k));
                for (cc, &i) in ig.iter().enumerate() {
                    prop_assert_eq!(k.w.get(i), c == cc);
                }
                prop_assert!(oc_c.iter().all(|&a| !k.v.get(a)));
                prop_assert_eq!(k.w.clone(), p.h.column(c));
            }
        }
    }

    #[test]
    fn enumerated_relations_are_gauge_invariant(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = common::rng(seed);
        let g = common::random_generator(&mut rng, n);
        for p in enumerate_relations(&g) {
            prop_assert!(check_invariance(&p, &g).all_pass());
        }
    }

    #[test]
    fn unbalanced_pairs_are_rejected(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = common::rng(seed);
        let g = common::random_generator(&mut rng, n);
        for p in enumerate_relations(&g) {
            let extra = (0..n).map(Qubit::from_index).find(|q| !p.igauge.contains(q));
            if let Some(q) = extra {
                let mut padded = p.igauge.clone();
                padded.insert(q);
                prop_assert!(derive_processing(&g, &padded, &p.ocomp).is_err());
            }
            if let Some(&q) = p.ocomp.iter().next() {
                let mut shrunk = p.ocomp.clone();
                shrunk.remove(&q);
                prop_assert!(derive_processing(&g, &p.igauge, &shrunk).is_err());
            }
        }
    }

    #[test]
    fn extremalize_recovers_influence(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = common::rng(seed);
        let g = common::random_generator(&mut rng, n);
        for p in enumerate_relations(&g) {
            let c = cones(&p.t);
            let q = extremalize(&g, &c.inputs, &c.outputs).unwrap();
            prop_assert_eq!(&q.t, &p.t);
            prop_assert!(q.igauge.is_subset(&c.inputs));
            prop_assert!(q.ocomp.is_subset(&c.outputs));
        }
    }

    #[test]
    fn linear_extension_respects_closure(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = common::rng(seed);
        let g = common::random_generator(&mut rng, n);
        for p in enumerate_relations(&g) {
            let rel = temporal_relation(&p.t);
            let reach = common::reachability(&p.t);
            for a in 0..n {
                for b in 0..n {
                    prop_assert_eq!(rel.precedes(Qubit::from_index(a), Qubit::from_index(b)), reach[a][b]);
                }
            }
            let acyclic = (0..n).all(|a| !reach[a][a]);
            prop_assert_eq!(rel.is_strict_partial_order, acyclic);
            match rel.linear_extension() {
                Some(order) => {
                    prop_assert!(acyclic);
                    prop_assert!(rel.is_consistent_order(&order));
                }
                None => prop_assert!(!acyclic),
            }
        }
    }
}

#[test]
fn invalid_sets_are_distinguished() {
    use mbqc_core::stabilizer::{qubits, GeneratorMatrix, MeasurementPlane};
    let g = GeneratorMatrix::from_letters(&["XZI", "ZXZ", "IZX"], &[MeasurementPlane::XY; 3]).unwrap();
    // σ_s columns at 1 and 3 coincide, so neither outcome can be corrected alone
    assert_eq!(
        derive_processing(&g, &qubits(&[1]), &qubits(&[2])),
        Err(FlowError::InvalidOutputSet)
    );
    let ghz = GeneratorMatrix::from_letters(&["ZIZ", "IZZ", "XXX"], &[MeasurementPlane::XY; 3]).unwrap();
    assert_eq!(
        derive_processing(&ghz, &qubits(&[1, 2]), &qubits(&[2, 3])),
        Err(FlowError::InvalidGaugeSet)
    );
    let empty: QubitSet = QubitSet::new();
    assert!(derive_processing(&g, &empty, &empty).is_err());
}
