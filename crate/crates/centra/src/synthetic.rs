//! Deterministic graph generators for tests, demos, and the bundled datasets.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn build(pairs: Vec<(u64, u64)>, directed: bool) -> Graph {
    Graph::from_pairs(&pairs, directed).expect("generator produced an empty graph").0
}

/// Path graph 0-1-...-(n-1).
pub fn path(n: usize) -> Graph {
    assert!(n >= 2);
    build((0..n as u64 - 1).map(|i| (i, i + 1)).collect(), false)
}

/// Cycle graph on `n` nodes.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    build((0..n as u64).map(|i| (i, (i + 1) % n as u64)).collect(), false)
}

/// Complete graph on `n` nodes.
pub fn complete(n: usize) -> Graph {
    assert!(n >= 2);
    let mut pairs = Vec::new();
    for i in 0..n as u64 {
        for j in i + 1..n as u64 {
            pairs.push((i, j));
        }
    }
    build(pairs, false)
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    assert!(leaves >= 1);
    build((1..=leaves as u64).map(|l| (0, l)).collect(), false)
}

/// `rows x cols` grid graph.
pub fn grid(rows: usize, cols: usize) -> Graph {
    assert!(rows * cols >= 2);
    let id = |r: usize, c: usize| (r * cols + c) as u64;
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                pairs.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    build(pairs, false)
}

/// Complete bipartite graph K_{a,b}.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    assert!(a >= 1 && b >= 1);
    let mut pairs = Vec::new();
    for i in 0..a as u64 {
        for j in 0..b as u64 {
            pairs.push((i, a as u64 + j));
        }
    }
    build(pairs, false)
}

/// Erdos-Renyi G(n, p). Nodes that end up isolated are dropped by the
/// edge-list representation, so the result may have fewer than `n` nodes.
pub fn gnp(n: usize, p: f64, seed: u64, directed: bool) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..n as u64 {
        for j in 0..n as u64 {
            if i == j || (!directed && j < i) {
                continue;
            }
            if rng.random::<f64>() < p {
                pairs.push((i, j));
            }
        }
    }
    Graph::from_pairs(&pairs, directed).ok().map(|(g, _)| g)
}

/// Watts-Strogatz small world: ring lattice of even degree `ring_deg` with
/// each forward edge rewired to a random target with probability `beta`.
pub fn watts_strogatz(n: usize, ring_deg: usize, beta: f64, seed: u64) -> Graph {
    assert!(n >= 4 && ring_deg >= 2 && ring_deg % 2 == 0 && ring_deg < n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..n as u64 {
        for step in 1..=(ring_deg / 2) as u64 {
            let j = (i + step) % n as u64;
            if rng.random::<f64>() < beta {
                let mut target = rng.random_range(0..n as u64);
                let mut guard = 0;
                while (target == i || target == j) && guard < 32 {
                    target = rng.random_range(0..n as u64);
                    guard += 1;
                }
                pairs.push((i, target));
            } else {
                pairs.push((i, j));
            }
        }
    }
    build(pairs, false)
}

/// Holme-Kim power-law cluster graph: preferential attachment with a
/// triad-closure step, giving a skewed degree profile together with the high
/// clustering and short distances of small worlds.
pub fn powerlaw_cluster(n: usize, attach: usize, p_triangle: f64, seed: u64) -> Graph {
    assert!(attach >= 1 && n > attach);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    // Repeated-endpoint list realizes preferential attachment by degree.
    let mut endpoints: Vec<u64> = Vec::new();
    for i in 0..=attach as u64 {
        for j in i + 1..=attach as u64 {
            pairs.push((i, j));
            endpoints.push(i);
            endpoints.push(j);
        }
    }
    for v in (attach + 1) as u64..n as u64 {
        let mut targets: Vec<u64> = Vec::with_capacity(attach);
        let mut last: Option<u64> = None;
        while targets.len() < attach {
            let close_triad = last.is_some() && rng.random::<f64>() < p_triangle;
            let candidate = if close_triad {
                // Neighbor of the previously attached node.
                let anchor = last.unwrap();
                let nbrs: Vec<u64> = pairs
                    .iter()
                    .filter_map(|&(a, b)| {
                        if a == anchor {
                            Some(b)
                        } else if b == anchor {
                            Some(a)
                        } else {
                            None
                        }
                    })
                    .collect();
                nbrs[rng.random_range(0..nbrs.len())]
            } else {
                endpoints[rng.random_range(0..endpoints.len())]
            };
            if candidate == v || targets.contains(&candidate) {
                continue;
            }
            targets.push(candidate);
            last = Some(candidate);
        }
        for &t in &targets {
            pairs.push((v, t));
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    build(pairs, false)
}

/// Caveman-style small world: `cliques` cliques of `clique_size` nodes
/// joined in a ring through dedicated gateway pairs, plus `shortcuts` random
/// inter-clique gateway edges. Shortest paths between cliques thread through
/// the small set of gateway nodes, so path participation is concentrated.
pub fn relaxed_caveman(cliques: usize, clique_size: usize, shortcuts: usize, seed: u64) -> Graph {
    assert!(cliques >= 3 && clique_size >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let node = |c: usize, i: usize| (c * clique_size + i) as u64;
    let mut pairs = Vec::new();
    for c in 0..cliques {
        for i in 0..clique_size {
            for j in i + 1..clique_size {
                pairs.push((node(c, i), node(c, j)));
            }
        }
    }
    for c in 0..cliques {
        pairs.push((node(c, 0), node((c + 1) % cliques, 1)));
    }
    for s in 0..shortcuts {
        let a = rng.random_range(0..cliques);
        let mut b = rng.random_range(0..cliques);
        while b == a {
            b = rng.random_range(0..cliques);
        }
        pairs.push((node(a, 2 + s % (clique_size - 2)), node(b, 2 + (s / 2) % (clique_size - 2))));
    }
    build(pairs, false)
}

/// Directed bow-tie small world: `sources` nodes that each point at `attach`
/// random hubs, a strongly connected hub core (complete digraph on `hubs`
/// nodes), and `sinks` nodes each fed by `attach` random hubs. Mirrors the
/// shape of directed social graphs: every reachable pair is at most three
/// hops apart and all internal nodes are hubs.
///
/// Node labels: hubs `0..hubs`, sources next, sinks last.
pub fn directed_bowtie(sources: usize, hubs: usize, sinks: usize, attach: usize, seed: u64) -> Graph {
    assert!(hubs >= 2 && attach >= 1 && attach <= hubs);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..hubs as u64 {
        for j in 0..hubs as u64 {
            if i != j {
                pairs.push((i, j));
            }
        }
    }
    let pick_hubs = |rng: &mut ChaCha8Rng| {
        let mut chosen: Vec<u64> = Vec::with_capacity(attach);
        while chosen.len() < attach {
            let h = rng.random_range(0..hubs as u64);
            if !chosen.contains(&h) {
                chosen.push(h);
            }
        }
        chosen
    };
    for s in 0..sources as u64 {
        let source = hubs as u64 + s;
        for h in pick_hubs(&mut rng) {
            pairs.push((source, h));
        }
    }
    for t in 0..sinks as u64 {
        let sink = (hubs + sources) as u64 + t;
        for h in pick_hubs(&mut rng) {
            pairs.push((h, sink));
        }
    }
    build(pairs, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vertex_diameter_exact;

    #[test]
    fn generators_have_expected_shape() {
        assert_eq!(path(5).edge_count(), 4);
        assert_eq!(cycle(6).edge_count(), 6);
        assert_eq!(complete(4).edge_count(), 6);
        assert_eq!(star(10).n(), 11);
        assert_eq!(grid(3, 3).n(), 9);
        assert_eq!(complete_bipartite(2, 3).edge_count(), 6);
    }

    #[test]
    fn watts_strogatz_is_deterministic() {
        let a = watts_strogatz(100, 6, 0.1, 3);
        let b = watts_strogatz(100, 6, 0.1, 3);
        assert_eq!(a.to_edge_list_string(), b.to_edge_list_string());
    }

    #[test]
    fn powerlaw_cluster_is_connected_enough() {
        let g = powerlaw_cluster(200, 3, 0.5, 1);
        assert_eq!(g.n(), 200);
        let dist = g.bfs_distances(0);
        assert!(dist.iter().all(|&d| d != u32::MAX));
    }

    #[test]
    fn caveman_has_small_diameter_with_shortcuts() {
        let g = relaxed_caveman(12, 10, 12, 5);
        assert_eq!(g.n(), 120);
        let b = vertex_diameter_exact(&g);
        assert!(b < 12, "vertex diameter {b} unexpectedly large");
    }

    #[test]
    fn bowtie_paths_run_through_hubs_only() {
        let g = directed_bowtie(50, 8, 50, 2, 9);
        assert_eq!(g.n(), 108);
        // Reachable pairs sit at most 3 hops apart.
        assert!(vertex_diameter_exact(&g) <= 2);
        // Sources have no in-edges, sinks no out-edges.
        let src = g.id_of(8).unwrap();
        assert!(g.in_neighbors(src).is_empty());
        let sink = g.id_of(58).unwrap();
        assert!(g.out_neighbors(sink).is_empty());
    }
}
