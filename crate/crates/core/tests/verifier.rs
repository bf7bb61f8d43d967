mod common;

use contractlab::contraction::{
    contract, is_contraction, is_weak_contraction, violation_witness, ContractionError, ContractionSet, Mode,
    Tolerance, Violation,
};
use contractlab::graph::{Distance, Graph, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn weights() -> Vec<Rational> {
    vec![int(1), int(2), frac(1, 2), frac(5, 3)]
}

fn graph_from(seed: u64, n: usize, extra: usize) -> Graph {
    random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n, extra, &weights())
}

fn tolerance_strategy() -> impl Strategy<Value = Tolerance> {
    (
        prop::sample::select(vec![(1, 1), (3, 2), (2, 1), (5, 1)]),
        prop::sample::select(vec![(0, 1), (1, 2), (1, 1), (2, 1)]),
    )
        .prop_map(|((ap, aq), (bp, bq))| Tolerance::new(frac(ap, aq), frac(bp, bq)).unwrap())
}

fn subset(g: &Graph, mask: u64) -> ContractionSet {
    ContractionSet::new((0..g.edge_count()).filter(|i| mask >> i & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn verdicts_match_naive_oracle(seed in any::<u64>(), n in 2usize..7, extra in 0usize..6, mask in any::<u64>(), t in tolerance_strategy()) {
        let g = graph_from(seed, n, extra);
        let c = subset(&g, mask);
        let bits: Vec<bool> = (0..g.edge_count()).map(|i| c.contains(i)).collect();
        let base = naive_distances(&g, &vec![false; g.edge_count()]);
        let (strong, weak) = naive_validity(&g, &base, &bits, t.alpha(), t.beta());
        prop_assert_eq!(is_contraction(&g, &c, &t).unwrap(), strong);
        prop_assert_eq!(is_weak_contraction(&g, &c, &t).unwrap(), weak);
    }

    #[test]
    fn contracted_distances_match_naive_oracle(seed in any::<u64>(), n in 2usize..7, extra in 0usize..6, mask in any::<u64>()) {
        let g = graph_from(seed, n, extra);
        let c = subset(&g, mask);
        let bits: Vec<bool> = (0..g.edge_count()).map(|i| c.contains(i)).collect();
        let naive = naive_distances(&g, &bits);
        let q = contract(&g, &c).unwrap();
        for (u, row) in naive.iter().enumerate() {
            for (v, d) in row.iter().enumerate() {
                prop_assert_eq!(q.distance(u, v).finite(), d.as_ref());
            }
        }
    }

    #[test]
    fn violation_witness_is_a_real_violation(seed in any::<u64>(), n in 2usize..7, extra in 0usize..6, mask in any::<u64>(), t in tolerance_strategy(), weak in any::<bool>()) {
        let g = graph_from(seed, n, extra);
        let c = subset(&g, mask);
        let mode = if weak { Mode::Weak } else { Mode::Strong };
        let bits: Vec<bool> = (0..g.edge_count()).map(|i| c.contains(i)).collect();
        let naive = naive_distances(&g, &bits);
        match violation_witness(&g, &c, &t, mode).unwrap() {
            None => {}
            Some(Violation::NotProperSubset) => prop_assert!(weak && c.len() == g.edge_count()),
            Some(Violation::Distance { u, v, original, contracted }) => {
                let base = naive_distances(&g, &vec![false; g.edge_count()]);
                prop_assert_eq!(Some(&original), base[u][v].as_ref());
                prop_assert_eq!(Some(&contracted), naive[u][v].as_ref());
                prop_assert!(contracted < t.lower_bound(&original));
                prop_assert!(!(weak && contracted == int(0)));
            }
        }
    }

    #[test]
    fn strong_validity_is_downward_closed(seed in any::<u64>(), n in 2usize..7, extra in 0usize..6, mask in any::<u64>(), drop in any::<u64>(), t in tolerance_strategy()) {
        let g = graph_from(seed, n, extra);
        let c = subset(&g, mask);
        let smaller = subset(&g, mask & drop);
        if is_contraction(&g, &c, &t).unwrap() {
            prop_assert!(is_contraction(&g, &smaller, &t).unwrap());
        }
    }

    #[test]
    fn scaling_weights_and_beta_together_changes_nothing(seed in any::<u64>(), n in 2usize..7, extra in 0usize..6, mask in any::<u64>(), k in prop::sample::select(vec![(1, 3), (2, 1), (7, 2)])) {
        let g = graph_from(seed, n, extra);
        let c = subset(&g, mask);
        let k = frac(k.0, k.1);
        let scaled = g.scaled_by(&k).unwrap();
        for (alpha, beta) in [(int(1), int(1)), (frac(3, 2), frac(1, 2)), (int(2), int(0))] {
            let t = Tolerance::new(alpha.clone(), beta.clone()).unwrap();
            let ts = Tolerance::new(alpha, beta * &k).unwrap();
            prop_assert_eq!(is_contraction(&g, &c, &t).unwrap(), is_contraction(&scaled, &c, &ts).unwrap());
            prop_assert_eq!(is_weak_contraction(&g, &c, &t).unwrap(), is_weak_contraction(&scaled, &c, &ts).unwrap());
        }
    }

    #[test]
    fn verdicts_survive_relabeling(seed in any::<u64>(), n in 2usize..7, extra in 0usize..6, mask in any::<u64>(), perm in Just(()).prop_perturb(|_, mut rng| { let mut p: Vec<usize> = (0..6).collect(); p.sort_by_key(|_| rng.next_u32()); p })) {
        let g = graph_from(seed, n, extra);
        let perm: Vec<usize> = perm.into_iter().filter(|&x| x < n).collect();
        let h = g.relabel(&perm).unwrap();
        let c = subset(&g, mask);
        // same edges under the new names
        let mapped = ContractionSet::new(c.ids().iter().map(|&id| {
            let e = g.edge(id);
            h.edge_between(perm[e.u], perm[e.v]).unwrap()
        }));
        let t = Tolerance::unit();
        prop_assert_eq!(is_contraction(&g, &c, &t).unwrap(), is_contraction(&h, &mapped, &t).unwrap());
        prop_assert_eq!(is_weak_contraction(&g, &c, &t).unwrap(), is_weak_contraction(&h, &mapped, &t).unwrap());
    }
}

#[test]
fn worked_examples() {
    let p3 = Graph::path(3);
    let t = Tolerance::unit();
    assert!(is_weak_contraction(&p3, &ContractionSet::new([0]), &t).unwrap());
    assert!(is_contraction(&p3, &ContractionSet::new([0]), &t).unwrap());
    assert_eq!(
        violation_witness(&p3, &ContractionSet::all(&p3), &t, Mode::Weak).unwrap(),
        Some(Violation::NotProperSubset)
    );
    // P3 with both edges contracted: endpoints at distance 2 merge to 0 < 2 - 1
    assert!(!is_contraction(&p3, &ContractionSet::all(&p3), &t).unwrap());

    let c4 = Graph::cycle(4);
    let opposite = ContractionSet::new([c4.edge_between(0, 1).unwrap(), c4.edge_between(2, 3).unwrap()]);
    assert!(is_weak_contraction(&c4, &opposite, &t).unwrap());
    assert!(is_contraction(&c4, &opposite, &t).unwrap());
    assert!(is_contraction(&c4, &ContractionSet::empty(), &Tolerance::new(int(1), int(0)).unwrap()).unwrap());
}

#[test]
fn disconnected_and_out_of_range_inputs_are_refused() {
    let g = Graph::unit(4, [(0, 1), (2, 3)]).unwrap();
    assert!(matches!(
        is_contraction(&g, &ContractionSet::empty(), &Tolerance::unit()),
        Err(ContractionError::Disconnected)
    ));
    let p = Graph::path(3);
    assert!(is_contraction(&p, &ContractionSet::new([5]), &Tolerance::unit()).is_err());
}

#[test]
fn unreachable_distance_is_not_finite() {
    assert_eq!(Distance::Unreachable.finite(), None);
}
