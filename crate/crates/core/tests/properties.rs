//! Property tests for the structural identities the library relies on.

use nearly_core::{
    alpha0_exact, alpha1_exact, alpha_k_oracle, emit_edge_list, emit_graph6, is_good_definitional,
    is_good_structural, parse_edge_list, parse_graph6, sample_h_member, validate_witness, Graph,
    VertexSet,
};
use proptest::prelude::*;

/// Random labeled graph of order up to `max_n`.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let cells = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), cells).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut cell = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[cell] {
                        edges.push((i, j));
                    }
                    cell += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn arb_subset(n: usize) -> impl Strategy<Value = VertexSet> {
    proptest::collection::vec(any::<bool>(), n).prop_map(move |bits| {
        VertexSet::from_indices(
            n,
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in arb_graph(24)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn complement_edge_counts((g, pick) in arb_graph(16).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), arb_subset(n))
    })) {
        let full = g.vertex_set();
        prop_assert_eq!(g.induced_edge_count(&full), g.size());
        let k = pick.len();
        prop_assert_eq!(
            g.complement().induced_edge_count(&pick),
            k * k.saturating_sub(1) / 2 - g.induced_edge_count(&pick)
        );
    }

    #[test]
    fn join_size_identity(g1 in arb_graph(10), g2 in arb_graph(10)) {
        let j = g1.join(&g2).unwrap();
        prop_assert_eq!(j.order(), g1.order() + g2.order());
        prop_assert_eq!(j.size(), g1.size() + g2.size() + g1.order() * g2.order());
    }

    #[test]
    fn delete_vertices_identities(g in arb_graph(16)) {
        let n = g.order();
        let (same, _) = g.delete_vertices(&VertexSet::empty(n));
        prop_assert_eq!(&same, &g);
        let (none, _) = g.delete_vertices(&VertexSet::full(n));
        prop_assert_eq!(none.order(), 0);
    }

    #[test]
    fn closed_neighborhoods_cover_edges(g in arb_graph(12)) {
        for (u, v) in g.edges() {
            prop_assert!(g.closed_neighborhood(v).unwrap().contains(u));
            prop_assert!(g.closed_neighborhood(u).unwrap().contains(v));
        }
    }

    #[test]
    fn graph6_round_trip(g in arb_graph(30)) {
        let record = emit_graph6(&g);
        let parsed = parse_graph6(record.as_bytes()).unwrap();
        prop_assert_eq!(&parsed, &g);
        prop_assert_eq!(emit_graph6(&parsed), record);
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(20)) {
        prop_assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn alpha1_bounds_and_bridging(g in arb_graph(10)) {
        let n = g.order();
        let r1 = alpha1_exact(&g);
        prop_assert!(r1.value <= n);
        prop_assert!(r1.value != 1, "a set inducing one edge has two vertices");
        if g.size() >= 1 {
            prop_assert!(r1.value >= 2);
        } else {
            prop_assert_eq!(r1.value, 0);
        }
        if r1.value >= 2 {
            // Dropping one endpoint of the induced edge leaves an
            // independent set.
            prop_assert!(alpha0_exact(&g).value >= r1.value - 1);
        }
        if let Some(w) = &r1.witness {
            prop_assert_eq!(w.len(), r1.value);
            prop_assert!(validate_witness(&g, &r1).unwrap());
        }
    }

    #[test]
    fn solvers_match_oracle_on_random_graphs(g in arb_graph(9)) {
        prop_assert_eq!(alpha0_exact(&g).value, alpha_k_oracle(&g, 0).unwrap().value);
        prop_assert_eq!(alpha1_exact(&g).value, alpha_k_oracle(&g, 1).unwrap().value);
    }

    #[test]
    fn recognizers_agree_on_random_graphs(g in arb_graph(9)) {
        prop_assert_eq!(
            is_good_definitional(&g).is_good,
            is_good_structural(&g).is_some()
        );
    }

    #[test]
    fn sampled_members_survive_join_and_extension(
        seed in any::<u64>(),
        budget in 1..=8usize,
        l in 1..=5usize,
    ) {
        let g = sample_h_member(budget, seed);
        prop_assert!(is_good_definitional(&g).is_good);
        let extended = g.join(&Graph::edgeless(l)).unwrap();
        prop_assert!(is_good_definitional(&extended).is_good);
        let doubled = g.join(&sample_h_member(budget, seed ^ 0xff)).unwrap();
        prop_assert!(is_good_definitional(&doubled).is_good);
    }
}
