use proptest::prelude::*;

use ringspec::oracle::{chromatic_number, clique_number, exhaustive_alpha, max_independent_set, OracleOptions};
use ringspec::Graph;

fn graph(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if bits[k] {
                g.add_edge(a, b);
            }
            k += 1;
        }
    }
    g
}

fn arb_graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max)
        .prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph(n, &bits)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn alpha_matches_subset_enumeration(g in arb_graph(18)) {
        let opts = OracleOptions::default();
        let r = max_independent_set(&g, "g", &opts).unwrap();
        prop_assert_eq!(r.value, exhaustive_alpha(&g).unwrap());
        let w = clique_number(&g.complement(), "g", &opts).unwrap();
        prop_assert_eq!(w.value, r.value);
    }

    #[test]
    fn colouring_invariants(g in arb_graph(14)) {
        let opts = OracleOptions::default();
        let chi = chromatic_number(&g, "g", &opts).unwrap();
        let alpha = max_independent_set(&g, "g", &opts).unwrap().value;
        let omega = clique_number(&g, "g", &opts).unwrap().value;
        chi.validate(&g).unwrap();
        prop_assert!(omega <= chi.value);
        prop_assert!(chi.value * alpha >= g.vertex_count());
        prop_assert!(chi.value <= g.max_degree() + 1);
    }

    #[test]
    fn canonical_witness_does_not_change_values(g in arb_graph(12)) {
        let plain = OracleOptions::default();
        let canon = OracleOptions { canonical_witness: true, ..plain };
        let a = max_independent_set(&g, "g", &plain).unwrap();
        let b = max_independent_set(&g, "g", &canon).unwrap();
        prop_assert_eq!(a.value, b.value);
        b.validate(&g).unwrap();
        let c = chromatic_number(&g, "g", &plain).unwrap();
        let d = chromatic_number(&g, "g", &canon).unwrap();
        prop_assert_eq!(c.value, d.value);
        d.validate(&g).unwrap();
    }
}
