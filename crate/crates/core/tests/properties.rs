mod common;

use common::*;
use cyclecover::conditions::{check_ore, check_posa, check_posa_general, witness_is_sound};
use cyclecover::graph::{parse_cg, to_cg_string, ComponentId};
use cyclecover::matching::{
    contraction, is_stable, max_contraction, max_contraction_bruteforce, max_contraction_witness, max_two_matching,
};
use cyclecover::partition::{PartitionSearch, DEFAULT_CAP};
use cyclecover::rational::parse_rational;
use cyclecover::{Colour, ColouredGraph, ComponentMap, GraphBuilder, Rational, Subgraph};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = ColouredGraph> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u8..3, n * n.saturating_sub(1) / 2).prop_map(move |cells| {
            let mut b = GraphBuilder::new(n);
            let mut it = cells.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    match it.next().unwrap() {
                        1 => b.add_edge(u, v, Colour::Red).unwrap(),
                        2 => b.add_edge(u, v, Colour::Blue).unwrap(),
                        _ => {}
                    }
                }
            }
            b.build()
        })
    })
}

fn dense_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = ColouredGraph> {
    (min_n..=max_n, any::<u64>()).prop_map(|(n, seed)| gnp(n, q(9, 10), q(1, 2), seed))
}

fn graph_with_perm(max_n: usize) -> impl Strategy<Value = (ColouredGraph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn with_extra_edge(g: &ColouredGraph, a: usize, b: usize, c: Colour) -> Option<ColouredGraph> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let (u, v) = (a % n, b % n);
    if u == v || g.has_edge(u, v) {
        return None;
    }
    let mut bld = g.to_builder();
    bld.add_edge(u, v, c).unwrap();
    Some(bld.build())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relabelling_keeps_degree_sequence_and_component_sizes((g, perm) in graph_with_perm(12)) {
        let h = g.relabel(&perm);
        prop_assert_eq!(g.degree_sequence().values, h.degree_sequence().values);
        prop_assert_eq!(g.edge_count(), h.edge_count());
        let (mg, mh) = (ComponentMap::new(&g), ComponentMap::new(&h));
        for c in [Colour::Red, Colour::Blue] {
            let sg: Vec<usize> = mg.components(c).iter().map(|x| x.len()).collect();
            let sh: Vec<usize> = mh.components(c).iter().map(|x| x.len()).collect();
            prop_assert_eq!(sg, sh);
        }
        prop_assert_eq!(
            max_contraction(&Subgraph::from_graph(&g)),
            max_contraction(&Subgraph::from_graph(&h))
        );
    }

    #[test]
    fn cg_text_round_trips(g in graph(15)) {
        let text = to_cg_string(&g);
        let back = parse_cg(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(to_cg_string(&back), text);
    }

    #[test]
    fn components_partition_vertices(g in graph(16)) {
        let map = ComponentMap::new(&g);
        for c in [Colour::Red, Colour::Blue] {
            let mut seen = vec![0u8; g.n()];
            for comp in map.components(c) {
                prop_assert!(!comp.is_empty());
                for &v in &comp.vertices {
                    seen[v] += 1;
                    prop_assert_eq!(map.key_of(v, c), comp.key());
                }
            }
            prop_assert!(seen.iter().all(|&s| s == 1));
            for (u, v, col) in g.edges() {
                if col == c {
                    prop_assert_eq!(map.id_of(u, c), map.id_of(v, c));
                }
            }
        }
    }

    #[test]
    fn component_handles_round_trip(red in any::<bool>(), id in 0usize..1000) {
        let key = ComponentId { colour: if red { Colour::Red } else { Colour::Blue }, id };
        prop_assert_eq!(key.to_string().parse::<ComponentId>().unwrap(), key);
    }

    #[test]
    fn rationals_round_trip(a in -500i64..500, b in 1i64..500) {
        let r = Rational::new(a, b);
        prop_assert_eq!(parse_rational(&cyclecover::rational::to_string(&r)).unwrap(), r);
    }

    #[test]
    fn two_matching_size_is_order_minus_max_contraction(g in graph(12)) {
        let h = Subgraph::from_graph(&g);
        let w = max_two_matching(&h);
        prop_assert!(w.is_valid_for(&h));
        let brute = max_contraction_bruteforce(&h).unwrap();
        prop_assert_eq!(w.size() as i64, g.n() as i64 - brute.contraction);
        prop_assert_eq!(max_contraction(&h), brute.contraction);
    }

    #[test]
    fn contraction_witnesses_are_sound(g in graph(14)) {
        let h = Subgraph::from_graph(&g);
        for w in [max_contraction_witness(&h), max_contraction_bruteforce(&h).unwrap()] {
            prop_assert!(is_stable(&h, &w.set).unwrap());
            prop_assert_eq!(contraction(&h, &w.set).unwrap(), w.contraction);
        }
    }

    #[test]
    fn adding_an_edge_never_raises_max_contraction(
        g in graph(12), a in any::<usize>(), b in any::<usize>(), red in any::<bool>()
    ) {
        let c = if red { Colour::Red } else { Colour::Blue };
        if let Some(g2) = with_extra_edge(&g, a, b, c) {
            let before = max_contraction(&Subgraph::from_graph(&g));
            let after = max_contraction(&Subgraph::from_graph(&g2));
            prop_assert!(after <= before);
        }
    }

    #[test]
    fn posa_survives_edge_addition(g in dense_graph(8, 30), a in any::<usize>(), b in any::<usize>()) {
        if let Some(g2) = with_extra_edge(&g, a, b, Colour::Red) {
            for gamma in [q(0, 1), q(1, 20)] {
                if check_posa(&g, gamma).passed() {
                    prop_assert!(check_posa(&g2, gamma).passed());
                }
            }
            for (x, y) in [(q(0, 1), q(1, 2)), (q(1, 6), q(1, 2))] {
                if check_posa_general(&g, x, y, 0).passed() {
                    prop_assert!(check_posa_general(&g2, x, y, 0).passed());
                }
            }
        }
    }

    #[test]
    fn posa_weakens_as_gamma_shrinks(g in dense_graph(8, 30)) {
        let gammas = [q(1, 4), q(1, 10), q(1, 20), q(0, 1)];
        for w in gammas.windows(2) {
            if check_posa(&g, w[0]).passed() {
                prop_assert!(check_posa(&g, w[1]).passed());
            }
        }
    }

    #[test]
    fn condition_witnesses_are_sound(g in dense_graph(4, 30)) {
        for r in [check_posa(&g, q(0, 1)), check_ore(&g, q(0, 1)), check_posa_general(&g, q(1, 6), q(1, 2), 0)] {
            prop_assert!(witness_is_sound(&g, &r, None), "{:?}", r);
        }
    }

    #[test]
    fn partition_value_is_monotone(g in graph(9)) {
        let search = PartitionSearch::new(&g, DEFAULT_CAP).unwrap();
        let mut prev = 0;
        for k in 1..=3 {
            let (plain, p) = search.max_cover(k, false).unwrap();
            let (distinct, pd) = search.max_cover(k, true).unwrap();
            prop_assert!(plain >= prev);
            prop_assert!(distinct <= plain);
            prop_assert_eq!(partition_problems(&g, &p, k, false), None);
            prop_assert_eq!(partition_problems(&g, &pd, k, true), None);
            prop_assert!(plain <= g.n());
            prev = plain;
            for c in 0..=g.n() {
                prop_assert_eq!(search.find(k, false, c).unwrap().is_some(), c <= plain);
            }
        }
    }
}
