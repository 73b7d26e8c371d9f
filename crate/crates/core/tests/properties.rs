//! Property tests for the library invariants that hold over randomized
//! inputs: format round-trips, group closure, orientation/extension duality,
//! count monotonicity, locality of updates and canonical-form invariance.

use proptest::prelude::*;

use sdslab::graph::{automorphisms, Graph, GraphKind};
use sdslab::limits::Limits;
use sdslab::orient::{enumerate_acyc, linear_extensions, orientation_of};
use sdslab::phase::build_phase_space;
use sdslab::sds::{
    index_to_state, Alphabet, FunctionSequence, MapTable, SymmetricKind, UpdateWord, VertexRule,
};
use sdslab::stability::{omega_union, transversal_words};
use sdslab::tutte;

/// Arbitrary simple graph: vertex count plus an edge-subset seed.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut edges = Vec::new();
        let mut bit = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                if seed >> (bit % 64) & 1 == 1 {
                    edges.push((i, j));
                }
                bit += 7; // stride the seed bits
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    })
}

fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(g in arb_graph(9)) {
        let rendered = g.render_edge_list();
        let back = Graph::parse_edge_list(&rendered).unwrap();
        prop_assert_eq!(g, back);
    }

    #[test]
    fn automorphisms_closed_under_composition(g in arb_graph(6), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let auts = automorphisms(&g, &Limits::default()).unwrap();
        prop_assert!(auts[0].is_identity());
        let a = i.get(&auts);
        let b = j.get(&auts);
        let composed = a.compose(b);
        prop_assert!(auts.contains(&composed));
        prop_assert!(auts.contains(&a.inverse()));
    }

    #[test]
    fn orientation_extension_duality(perm in arb_permutation(5), other in arb_permutation(5)) {
        // sigma yields the same orientation as pi iff sigma is one of pi's
        // linear extensions
        let g = Graph::generate(&GraphKind::Circ(5)).unwrap();
        let o_pi = orientation_of(&perm, &g).unwrap();
        let o_sigma = orientation_of(&other, &g).unwrap();
        let extensions = linear_extensions(&o_pi);
        prop_assert!(extensions.contains(&perm));
        prop_assert_eq!(o_pi == o_sigma, extensions.contains(&other));
    }

    #[test]
    fn enumerated_orientations_have_extensions(g in arb_graph(5)) {
        // orientation_of is surjective onto Acyc(Y)
        let lim = Limits::default();
        for o in enumerate_acyc(&g, &lim).unwrap() {
            let exts = linear_extensions(&o);
            prop_assert!(!exts.is_empty());
            let back = orientation_of(&exts[0], &g).unwrap();
            prop_assert_eq!(back, o);
        }
    }

    #[test]
    fn tutte_monotone_under_edge_deletion(g in arb_graph(7), pick in any::<prop::sample::Index>()) {
        prop_assume!(!g.edges().is_empty());
        let dropped = *pick.get(g.edges());
        let smaller: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&e| e != dropped)
            .collect();
        let z = Graph::from_edges(g.n(), &smaller).unwrap();
        prop_assert!(tutte::alpha(&z) <= tutte::alpha(&g));
        prop_assert!(tutte::kappa(&z) <= tutte::kappa(&g));
    }

    #[test]
    fn local_apply_touches_one_coordinate(idx in 0usize..32, v in 1usize..=5, rule in 0u8..=255) {
        let fs = FunctionSequence::eca(rule, 5).unwrap();
        let x = index_to_state(idx, 2, 5);
        let y = fs.local_apply(v, &x).unwrap();
        for u in 1..=5usize {
            if u != v {
                prop_assert_eq!(x[u - 1], y[u - 1]);
            }
        }
    }

    #[test]
    fn local_apply_locality_all_families(idx in 0usize..16, v in 1usize..=4) {
        let g = Graph::generate(&GraphKind::Circ(4)).unwrap();
        let x = index_to_state(idx, 2, 4);
        for kind in [
            SymmetricKind::Nor,
            SymmetricKind::Parity,
            SymmetricKind::Threshold(2),
        ] {
            let fs = FunctionSequence::uniform(
                g.clone(),
                VertexRule::Symmetric(kind),
                Alphabet::binary(),
            )
            .unwrap();
            let y = fs.local_apply(v, &x).unwrap();
            for u in 1..=4usize {
                if u != v {
                    prop_assert_eq!(x[u - 1], y[u - 1]);
                }
            }
        }
    }

    #[test]
    fn canonical_form_invariant_under_conjugation(entries in prop::collection::vec(0u32..16, 16), perm in Just((0..16usize).collect::<Vec<_>>()).prop_shuffle()) {
        // random endofunction on 16 states vs a random relabeling of it
        let table = MapTable { k: 2, n: 4, entries: entries.clone() };
        let mut conj_entries = vec![0u32; 16];
        for s in 0..16 {
            conj_entries[perm[s]] = perm[entries[s] as usize] as u32;
        }
        let conj = MapTable { k: 2, n: 4, entries: conj_entries };
        let a = build_phase_space(table).canonical_form();
        let b = build_phase_space(conj).canonical_form();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn phase_space_partition_invariants(entries in prop::collection::vec(0u32..27, 27)) {
        // out-degree one everywhere; periodic set = union of cycles; depths
        // drop by one along transient edges
        let space = build_phase_space(MapTable { k: 3, n: 3, entries });
        let cycle_total: usize = space.cycles().iter().map(|c| c.len()).sum();
        prop_assert_eq!(cycle_total, space.periodic().len());
        for s in 0..27usize {
            let image = space.table().apply(s);
            if space.is_periodic(s) {
                prop_assert!(space.is_periodic(image));
            } else {
                prop_assert_eq!(space.transient_depth(s), space.transient_depth(image) + 1);
            }
        }
    }

    #[test]
    fn omega_union_monotone(x in 0usize..16, split in 1usize..13) {
        let g = Graph::generate(&GraphKind::Circ(4)).unwrap();
        let fs = FunctionSequence::uniform(
            g.clone(),
            VertexRule::Symmetric(SymmetricKind::Nor),
            Alphabet::binary(),
        )
        .unwrap();
        let lim = Limits::default();
        let words = transversal_words(&g, &lim).unwrap();
        let sub = &words[..split];
        let a = omega_union(&fs, sub, x, &lim, 1).unwrap();
        let b = omega_union(&fs, &words, x, &lim, 1).unwrap();
        prop_assert!(a.iter().all(|s| b.binary_search(s).is_ok()));
    }

    #[test]
    fn update_word_parse_render_round_trip(letters in prop::collection::vec(1usize..=9, 1..12)) {
        let word = UpdateWord::new(letters).unwrap();
        let back = UpdateWord::parse(&word.render()).unwrap();
        prop_assert_eq!(word, back);
    }
}
