//! Property tests: representation round-trips and oracle agreement on
//! randomized graphs.

use proptest::prelude::*;

use centra::graph::{vertex_diameter_exact, Graph};
use centra::sampler::{exact_set_centrality, HyperEdge, Sample};

/// Independent vertex-diameter oracle: Floyd-Warshall all-pairs distances.
fn diameter_floyd_warshall(g: &Graph) -> usize {
    let n = g.n();
    const INF: u32 = u32::MAX / 4;
    let mut dist = vec![INF; n * n];
    for u in 0..n {
        dist[u * n + u] = 0;
        for &v in g.out_neighbors(u as u32) {
            dist[u * n + v as usize] = 1;
        }
    }
    for mid in 0..n {
        for a in 0..n {
            let base = dist[a * n + mid];
            if base >= INF {
                continue;
            }
            for b in 0..n {
                let through = base + dist[mid * n + b];
                if through < dist[a * n + b] {
                    dist[a * n + b] = through;
                }
            }
        }
    }
    let mut best = 0u32;
    for a in 0..n {
        for b in 0..n {
            if a != b && dist[a * n + b] < INF {
                best = best.max(dist[a * n + b]);
            }
        }
    }
    (best as usize).saturating_sub(1)
}

fn edge_list_strategy(max_nodes: u64, max_edges: usize) -> impl Strategy<Value = Vec<(u64, u64)>> {
    prop::collection::vec((0..max_nodes, 0..max_nodes), 1..max_edges)
        .prop_map(|pairs| {
            pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .collect::<Vec<_>>()
        })
        .prop_filter("needs at least one edge", |pairs| !pairs.is_empty())
}

proptest! {
    #[test]
    fn parse_serialize_parse_is_idempotent(
        pairs in edge_list_strategy(24, 60),
        directed in any::<bool>(),
    ) {
        let (g1, _) = Graph::from_pairs(&pairs, directed).unwrap();
        let s1 = g1.to_edge_list_string();
        let (g2, _) = Graph::parse_edge_list(&s1, directed).unwrap();
        let s2 = g2.to_edge_list_string();
        prop_assert_eq!(&s1, &s2);
        let (g3, _) = Graph::parse_edge_list(&s2, directed).unwrap();
        prop_assert_eq!(g2.labels(), g3.labels());
        prop_assert_eq!(g2.n(), g3.n());
        prop_assert_eq!(g2.edge_count(), g3.edge_count());
        for u in 0..g2.n() as u32 {
            prop_assert_eq!(g2.out_neighbors(u), g3.out_neighbors(u));
        }
    }

    #[test]
    fn vertex_diameter_matches_floyd_warshall(
        pairs in edge_list_strategy(64, 160),
        directed in any::<bool>(),
    ) {
        let (g, _) = Graph::from_pairs(&pairs, directed).unwrap();
        prop_assert_eq!(vertex_diameter_exact(&g), diameter_floyd_warshall(&g));
    }

    #[test]
    fn sample_cache_round_trips(
        raw in prop::collection::vec(
            prop::collection::vec(0u32..40, 0..6), 1..50
        ),
        seed in any::<u64>(),
    ) {
        let mut sample = Sample::new(seed);
        sample.extend_with_edges(raw.into_iter().map(HyperEdge::new));
        let mut buf = Vec::new();
        sample.write_binary(40, &mut buf).unwrap();
        let (back, n) = Sample::read_binary(&mut buf.as_slice()).unwrap();
        prop_assert_eq!(n, 40);
        prop_assert_eq!(back.edges(), sample.edges());
        prop_assert_eq!(back.seed(), sample.seed());
    }
}

/// Empirical means track the exact centrality within three standard errors
/// for random sets on small random graphs.
#[test]
fn empirical_centrality_tracks_exact_on_random_graphs() {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
    for round in 0..5 {
        let g = loop {
            if let Some(g) = centra::synthetic::gnp(10, 0.3, 100 + round, round % 2 == 0) {
                break g;
            }
        };
        let set: Vec<u32> = (0..g.n() as u32)
            .filter(|_| rng.random::<f64>() < 0.25)
            .collect();
        let exact = exact_set_centrality(&g, &set);
        let mut sample = Sample::new(round);
        sample.grow(&g, 100_000);
        let est = sample.empirical_centrality(&set);
        let se = (exact.max(1e-9) * (1.0 - exact) / 100_000.0).sqrt();
        assert!(
            (est - exact).abs() <= 3.0 * se + 1e-6,
            "round {round}: est {est}, exact {exact}, se {se}"
        );
    }
}
