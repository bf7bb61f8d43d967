mod common;

use contractlab::graph::{
    generate_planted_biclique, generate_random_bipartite, parse_graph, render_bipartite, render_graph, BipartiteGraph,
    Graph, ParseError, ParsedGraph,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

proptest! {
    #[test]
    fn general_graphs_round_trip(seed in any::<u64>(), n in 1usize..9, extra in 0usize..8) {
        let g = random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n, extra, &[int(1), frac(3, 7), int(12)]);
        let text = render_graph(&g);
        prop_assert_eq!(parse_graph(&text).unwrap(), ParsedGraph::General(g));
    }

    #[test]
    fn bipartite_graphs_round_trip(seed in any::<u64>(), l in 1usize..6, r in 1usize..6) {
        let b = random_bipartite(&mut ChaCha8Rng::seed_from_u64(seed), l, r, 0.5);
        let text = render_bipartite(&b);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(back.render(), text);
        prop_assert_eq!(back, ParsedGraph::Bipartite(b));
    }

    #[test]
    fn generators_are_seed_deterministic(seed in any::<u64>(), l in 1usize..6, r in 1usize..6) {
        let a = generate_random_bipartite(l, r, &frac(1, 3), seed).unwrap();
        let b = generate_random_bipartite(l, r, &frac(1, 3), seed).unwrap();
        prop_assert_eq!(render_bipartite(&a), render_bipartite(&b));
    }
}

#[test]
fn edge_lines_accept_rational_weights_and_comments() {
    let text = "# a triangle\ngraph 3 3\n0 1\n1 2 3/2\n\n0 2 2\n";
    let ParsedGraph::General(g) = parse_graph(text).unwrap() else { panic!("expected a general graph") };
    assert_eq!(g.edge_count(), 3);
    assert_eq!(g.edge(g.edge_between(1, 2).unwrap()).weight, frac(3, 2));
}

#[test]
fn malformed_inputs_are_rejected() {
    let cases = [
        ("", "missing header"),
        ("graph x 1\n", "malformed header"),
        ("graph 2 1\n0 5\n", "out of range"),
        ("graph 2 1\n0 1 0\n", "non-positive"),
        ("graph 2 1\n0 1 1.5\n", "malformed weight"),
        ("graph 2 2\n0 1\n1 0\n", "duplicate"),
        ("graph 2 1\n1 1\n", "self-loop"),
        ("graph 3 2\n0 1\n", "declares 2 edges"),
        ("bipartite 1 1 1\n0 1\n", "out of range"),
    ];
    for (text, needle) in cases {
        let err = parse_graph(text).unwrap_err();
        assert!(err.to_string().contains(needle), "{text:?}: {err}");
    }
    assert_eq!(parse_graph("").unwrap_err(), ParseError::MissingHeader);
}

#[test]
fn planted_generator_plants_what_it_reports() {
    let (b, plant) = generate_planted_biclique(6, 5, 3, 3, &int(0), 9).unwrap();
    assert!(plant.is_complete_in(&b));
    assert_eq!(b.edge_count(), 9);
    assert!(generate_planted_biclique(2, 2, 3, 1, &int(0), 0).is_err());
}

#[test]
fn bipartite_view_of_a_general_graph() {
    let (b, origin) = BipartiteGraph::from_graph(&Graph::cycle(4)).unwrap();
    assert_eq!((b.left_count(), b.right_count(), b.edge_count()), (2, 2, 4));
    let mut seen = origin.clone();
    seen.sort_unstable();
    assert_eq!(seen, vec![0, 1, 2, 3]);
    assert!(BipartiteGraph::from_graph(&Graph::cycle(3)).is_none());
}
