//! Hyper-edge sampling for set betweenness.
//!
//! A hyper-edge is the set of internal nodes of a shortest path between a
//! uniformly chosen node pair, with the path drawn uniformly among all
//! shortest paths for that pair. Unreachable and adjacent pairs yield the
//! empty hyper-edge; both still count towards `m`, keeping the estimator
//! unbiased.
//!
//! Path uniformity comes from counting shortest paths on the meeting frontier
//! of a balanced bidirectional BFS: the number of shortest paths through a
//! meeting vertex `w` is `forward_count(w) * backward_count(w)`; we sample
//! `w` proportional to that product and backtrack on each side choosing every
//! predecessor proportional to its own path count.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::collections::VecDeque;
use std::io::{Read, Write};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_rng, PURPOSE_HYPEREDGE};

/// A (possibly empty) set of node ids sampled from the hyper-edge space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HyperEdge {
    nodes: Vec<u32>,
}

impl HyperEdge {
    /// Builds a hyper-edge, sorting and deduplicating the node list.
    pub fn new(mut nodes: Vec<u32>) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        HyperEdge { nodes }
    }

    pub fn empty() -> Self {
        HyperEdge { nodes: Vec::new() }
    }

    pub fn nodes(&self) -> &[u32] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Indicator `f_S(h)`: does the hyper-edge intersect `set` (sorted or not)?
    pub fn intersects(&self, set: &[u32]) -> bool {
        set.iter().any(|u| self.nodes.binary_search(u).is_ok())
    }
}

/// Ordered multiset of hyper-edges with running statistics.
#[derive(Debug, Clone)]
pub struct Sample {
    edges: Vec<HyperEdge>,
    node_counts: HashMap<u32, u64>,
    b_h: usize,
    seed: u64,
}

impl Sample {
    pub fn new(seed: u64) -> Self {
        Sample {
            edges: Vec::new(),
            node_counts: HashMap::new(),
            b_h: 0,
            seed,
        }
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    /// Running maximum hyper-edge size (0 while all edges are empty).
    pub fn b_h(&self) -> usize {
        self.b_h
    }

    /// `c_u`: number of absorbed hyper-edges containing `u`.
    pub fn count(&self, u: u32) -> u64 {
        self.node_counts.get(&u).copied().unwrap_or(0)
    }

    pub fn node_counts(&self) -> &HashMap<u32, u64> {
        &self.node_counts
    }

    /// Grows the sample to `target_m` hyper-edges. Draws are keyed by the
    /// global sample index, so the resulting sequence is identical for any
    /// worker count and any batching of calls.
    pub fn grow(&mut self, g: &Graph, target_m: usize) {
        let start = self.edges.len();
        if target_m <= start {
            return;
        }
        let new_edges: Vec<HyperEdge> = (start..target_m)
            .into_par_iter()
            .map_init(
                || BidirWorkspace::new(g.n()),
                |ws, s| sample_hyperedge_with(g, self.seed, s as u64, ws),
            )
            .collect();
        for edge in new_edges {
            self.absorb(edge);
        }
    }

    /// Appends explicit hyper-edges; hand-built samples in tests and cached
    /// samples use this instead of the seeded stream.
    pub fn extend_with_edges<I: IntoIterator<Item = HyperEdge>>(&mut self, edges: I) {
        for edge in edges {
            self.absorb(edge);
        }
    }

    fn absorb(&mut self, edge: HyperEdge) {
        self.b_h = self.b_h.max(edge.len());
        for &u in edge.nodes() {
            *self.node_counts.entry(u).or_insert(0) += 1;
        }
        self.edges.push(edge);
    }

    /// Empirical centrality `C_H(S)`: fraction of hyper-edges hit by `set`.
    pub fn empirical_centrality(&self, set: &[u32]) -> f64 {
        if self.edges.is_empty() {
            return 0.0;
        }
        let hits = self.edges.iter().filter(|h| h.intersects(set)).count();
        hits as f64 / self.edges.len() as f64
    }

    /// Binary cache: little-endian header `(m, n, seed)` as u64, then per
    /// hyper-edge a u32 length prefix followed by u32 node ids. `n` is the
    /// node count of the graph the sample was drawn from.
    pub fn write_binary<W: Write>(&self, n: u64, w: &mut W) -> Result<()> {
        w.write_all(&(self.edges.len() as u64).to_le_bytes())?;
        w.write_all(&n.to_le_bytes())?;
        w.write_all(&self.seed.to_le_bytes())?;
        for edge in &self.edges {
            w.write_all(&(edge.len() as u32).to_le_bytes())?;
            for &u in edge.nodes() {
                w.write_all(&u.to_le_bytes())?;
            }
        }
        Ok(())
    }

    /// Reads a binary cache written by [`Sample::write_binary`].
    pub fn read_binary<R: Read>(r: &mut R) -> Result<(Sample, u64)> {
        let mut u64buf = [0u8; 8];
        let mut read_u64 = |r: &mut R| -> Result<u64> {
            r.read_exact(&mut u64buf)
                .map_err(|_| Error::MalformedCache("truncated header".into()))?;
            Ok(u64::from_le_bytes(u64buf))
        };
        let m = read_u64(r)?;
        let n = read_u64(r)?;
        let seed = read_u64(r)?;
        let mut sample = Sample::new(seed);
        let mut u32buf = [0u8; 4];
        for i in 0..m {
            r.read_exact(&mut u32buf)
                .map_err(|_| Error::MalformedCache(format!("truncated at edge {i}")))?;
            let len = u32::from_le_bytes(u32buf) as usize;
            let mut nodes = Vec::with_capacity(len);
            for _ in 0..len {
                r.read_exact(&mut u32buf)
                    .map_err(|_| Error::MalformedCache(format!("truncated at edge {i}")))?;
                let u = u32::from_le_bytes(u32buf);
                if u as u64 >= n {
                    return Err(Error::MalformedCache(format!(
                        "node id {u} out of range (n={n})"
                    )));
                }
                nodes.push(u);
            }
            sample.absorb(HyperEdge::new(nodes));
        }
        Ok((sample, n))
    }
}

// ============================================================================
// Balanced bidirectional BFS with path counting
// ============================================================================

/// Reusable per-thread search buffers; epoch stamps avoid O(n) clears.
struct BidirWorkspace {
    stamp_f: Vec<u32>,
    stamp_b: Vec<u32>,
    dist_f: Vec<u32>,
    dist_b: Vec<u32>,
    // Path counts as f64: exact for counts below 2^53 and safely saturating
    // instead of overflowing on graphs with astronomically many geodesics.
    cnt_f: Vec<f64>,
    cnt_b: Vec<f64>,
    epoch: u32,
}

impl BidirWorkspace {
    fn new(n: usize) -> Self {
        BidirWorkspace {
            stamp_f: vec![0; n],
            stamp_b: vec![0; n],
            dist_f: vec![0; n],
            dist_b: vec![0; n],
            cnt_f: vec![0.0; n],
            cnt_b: vec![0.0; n],
            epoch: 0,
        }
    }
}

/// Draws the hyper-edge with global index `sample_index` from the stream
/// keyed by `(seed, sample_index)`.
pub fn sample_hyperedge(g: &Graph, seed: u64, sample_index: u64) -> HyperEdge {
    let mut ws = BidirWorkspace::new(g.n());
    sample_hyperedge_with(g, seed, sample_index, &mut ws)
}

fn sample_hyperedge_with(
    g: &Graph,
    seed: u64,
    sample_index: u64,
    ws: &mut BidirWorkspace,
) -> HyperEdge {
    let mut rng = derive_rng(seed, PURPOSE_HYPEREDGE, sample_index);
    let n = g.n() as u64;
    if n < 2 {
        return HyperEdge::empty();
    }
    // Uniform ordered pair with u != v; for undirected graphs this induces the
    // uniform distribution over unordered pairs.
    let u = rng.random_range(0..n) as u32;
    let r = rng.random_range(0..n - 1) as u32;
    let v = if r >= u { r + 1 } else { r };
    match sample_shortest_path(g, u, v, &mut rng, ws) {
        Some(internal) => HyperEdge::new(internal),
        None => HyperEdge::empty(),
    }
}

/// Samples one shortest `u -> v` path uniformly among all shortest paths and
/// returns its internal nodes; `None` when `v` is unreachable from `u`.
fn sample_shortest_path(
    g: &Graph,
    u: u32,
    v: u32,
    rng: &mut ChaCha8Rng,
    ws: &mut BidirWorkspace,
) -> Option<Vec<u32>> {
    debug_assert_ne!(u, v);
    ws.epoch = ws.epoch.wrapping_add(1);
    if ws.epoch == 0 {
        // Wrapped: old stamps could alias the new epoch.
        ws.stamp_f.fill(0);
        ws.stamp_b.fill(0);
        ws.epoch = 1;
    }
    let epoch = ws.epoch;
    ws.stamp_f[u as usize] = epoch;
    ws.dist_f[u as usize] = 0;
    ws.cnt_f[u as usize] = 1.0;
    ws.stamp_b[v as usize] = epoch;
    ws.dist_b[v as usize] = 0;
    ws.cnt_b[v as usize] = 1.0;
    let mut frontier_f = vec![u];
    let mut frontier_b = vec![v];
    let mut meeting: Vec<u32> = Vec::new();
    while meeting.is_empty() {
        if frontier_f.is_empty() || frontier_b.is_empty() {
            return None;
        }
        // Balanced rule: expand the side with the smaller pending frontier.
        let forward = frontier_f.len() <= frontier_b.len();
        let (frontier, stamp, dist, cnt, other_stamp) = if forward {
            (&mut frontier_f, &mut ws.stamp_f, &mut ws.dist_f, &mut ws.cnt_f, &ws.stamp_b)
        } else {
            (&mut frontier_b, &mut ws.stamp_b, &mut ws.dist_b, &mut ws.cnt_b, &ws.stamp_f)
        };
        let mut next: Vec<u32> = Vec::new();
        for &x in frontier.iter() {
            let level = dist[x as usize];
            let neighbors = if forward {
                g.out_neighbors(x)
            } else {
                g.in_neighbors(x)
            };
            for &y in neighbors {
                if stamp[y as usize] == epoch {
                    if dist[y as usize] == level + 1 {
                        cnt[y as usize] += cnt[x as usize];
                    }
                } else {
                    stamp[y as usize] = epoch;
                    dist[y as usize] = level + 1;
                    cnt[y as usize] = cnt[x as usize];
                    next.push(y);
                }
            }
        }
        // The whole level is complete, so counts on it are final; the first
        // level where the two searches intersect carries every shortest path.
        meeting = next
            .iter()
            .copied()
            .filter(|&y| other_stamp[y as usize] == epoch)
            .collect();
        *frontier = next;
    }
    // sigma(u, v) = sum over meeting vertices of cnt_f * cnt_b.
    let total: f64 = meeting
        .iter()
        .map(|&w| ws.cnt_f[w as usize] * ws.cnt_b[w as usize])
        .sum();
    let w = weighted_pick(rng, total, meeting.iter().copied(), |w| {
        ws.cnt_f[w as usize] * ws.cnt_b[w as usize]
    });
    let mut internal = Vec::new();
    if w != u && w != v {
        internal.push(w);
    }
    // Walk back to u choosing predecessors proportional to forward counts.
    let mut cur = w;
    while ws.dist_f[cur as usize] > 0 {
        let level = ws.dist_f[cur as usize];
        let preds = g.in_neighbors(cur);
        let total: f64 = preds
            .iter()
            .filter(|&&p| ws.stamp_f[p as usize] == epoch && ws.dist_f[p as usize] + 1 == level)
            .map(|&p| ws.cnt_f[p as usize])
            .sum();
        let p = weighted_pick(
            rng,
            total,
            preds.iter().copied().filter(|&p| {
                ws.stamp_f[p as usize] == epoch && ws.dist_f[p as usize] + 1 == level
            }),
            |p| ws.cnt_f[p as usize],
        );
        if p != u {
            internal.push(p);
        }
        cur = p;
    }
    // Walk forward to v choosing successors proportional to backward counts.
    let mut cur = w;
    while ws.dist_b[cur as usize] > 0 {
        let level = ws.dist_b[cur as usize];
        let succs = g.out_neighbors(cur);
        let total: f64 = succs
            .iter()
            .filter(|&&y| ws.stamp_b[y as usize] == epoch && ws.dist_b[y as usize] + 1 == level)
            .map(|&y| ws.cnt_b[y as usize])
            .sum();
        let y = weighted_pick(
            rng,
            total,
            succs.iter().copied().filter(|&y| {
                ws.stamp_b[y as usize] == epoch && ws.dist_b[y as usize] + 1 == level
            }),
            |y| ws.cnt_b[y as usize],
        );
        if y != v {
            internal.push(y);
        }
        cur = y;
    }
    Some(internal)
}

fn weighted_pick<I>(rng: &mut ChaCha8Rng, total: f64, items: I, weight: impl Fn(u32) -> f64) -> u32
where
    I: IntoIterator<Item = u32>,
{
    debug_assert!(total > 0.0);
    let target = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last = None;
    for item in items {
        acc += weight(item);
        last = Some(item);
        if target < acc {
            return item;
        }
    }
    // Floating-point slack can leave target marginally above acc.
    last.expect("weighted_pick over empty iterator")
}

// ============================================================================
// Brute-force oracles (desk scale)
// ============================================================================

/// Exhaustive hyper-edge distribution: every ordered pair `u != v` carries
/// mass `1/(n(n-1))`, split uniformly over its shortest paths; unreachable
/// pairs send their mass to the empty hyper-edge. Probabilities sum to 1.
///
/// `path_ceiling` guards against combinatorial blow-up: enumeration aborts
/// once more than that many paths have been expanded.
pub fn enumerate_distribution(
    g: &Graph,
    path_ceiling: u64,
) -> Result<Vec<(HyperEdge, f64)>> {
    let n = g.n();
    if n < 2 {
        return Err(Error::invalid("need at least two nodes to form pairs"));
    }
    let pair_mass = 1.0 / (n as f64 * (n as f64 - 1.0));
    let mut dist_map: BTreeMap<HyperEdge, f64> = BTreeMap::new();
    let mut expanded = 0u64;
    for u in 0..n as u32 {
        let dist = g.bfs_distances(u);
        for v in 0..n as u32 {
            if u == v {
                continue;
            }
            if dist[v as usize] == u32::MAX {
                *dist_map.entry(HyperEdge::empty()).or_insert(0.0) += pair_mass;
                continue;
            }
            let paths = enumerate_paths(g, &dist, u, v, path_ceiling, &mut expanded)?;
            let per_path = pair_mass / paths.len() as f64;
            for path in paths {
                let internal: Vec<u32> =
                    path.iter().copied().filter(|&x| x != u && x != v).collect();
                *dist_map.entry(HyperEdge::new(internal)).or_insert(0.0) += per_path;
            }
        }
    }
    Ok(dist_map.into_iter().collect())
}

/// All shortest `u -> v` paths by DFS restricted to the u-v geodesic DAG
/// (nodes with `dist_u(x) + dist_to_v(x) == dist_u(v)`).
fn enumerate_paths(
    g: &Graph,
    dist: &[u32],
    u: u32,
    v: u32,
    ceiling: u64,
    expanded: &mut u64,
) -> Result<Vec<Vec<u32>>> {
    let mut rev = vec![u32::MAX; g.n()];
    let mut queue = VecDeque::new();
    rev[v as usize] = 0;
    queue.push_back(v);
    while let Some(x) = queue.pop_front() {
        for &p in g.in_neighbors(x) {
            if rev[p as usize] == u32::MAX {
                rev[p as usize] = rev[x as usize] + 1;
                queue.push_back(p);
            }
        }
    }
    let mut paths = Vec::new();
    let mut stack = vec![u];
    dfs_paths(g, dist, &rev, v, &mut stack, &mut paths, ceiling, expanded)?;
    Ok(paths)
}

fn dfs_paths(
    g: &Graph,
    dist: &[u32],
    rev: &[u32],
    v: u32,
    stack: &mut Vec<u32>,
    paths: &mut Vec<Vec<u32>>,
    ceiling: u64,
    expanded: &mut u64,
) -> Result<()> {
    let x = *stack.last().unwrap();
    if x == v {
        *expanded += 1;
        if *expanded > ceiling {
            return Err(Error::SizeGuard(format!(
                "more than {ceiling} shortest paths enumerated"
            )));
        }
        paths.push(stack.clone());
        return Ok(());
    }
    let budget = dist[v as usize];
    for &y in g.out_neighbors(x) {
        if dist[y as usize] == dist[x as usize] + 1
            && rev[y as usize] != u32::MAX
            && dist[y as usize] + rev[y as usize] == budget
        {
            stack.push(y);
            dfs_paths(g, dist, rev, v, stack, paths, ceiling, expanded)?;
            stack.pop();
        }
    }
    Ok(())
}

/// Exact set centrality `C(S)` under the pair-uniform shortest-path
/// distribution: the per-pair contribution is `1 - sigma_avoiding / sigma`,
/// where the avoiding count skips paths with an internal node in `S`
/// (endpoints exempt). Computed by a BFS-DAG dynamic program per source.
pub fn exact_set_centrality(g: &Graph, set: &[u32]) -> f64 {
    let n = g.n();
    if n < 2 {
        return 0.0;
    }
    let mut members = vec![false; n];
    for &s in set {
        members[s as usize] = true;
    }
    let mut total = 0.0;
    for u in 0..n as u32 {
        total += source_contribution(g, u, &members);
    }
    total / (n as f64 * (n as f64 - 1.0))
}

fn source_contribution(g: &Graph, u: u32, members: &[bool]) -> f64 {
    let dist = g.bfs_distances(u);
    let n = g.n();
    // BFS order by distance.
    let mut order: Vec<u32> = (0..n as u32).filter(|&x| dist[x as usize] != u32::MAX).collect();
    order.sort_unstable_by_key(|&x| dist[x as usize]);
    let mut sigma = vec![0.0f64; n];
    let mut avoid = vec![0.0f64; n];
    sigma[u as usize] = 1.0;
    avoid[u as usize] = 1.0;
    for &x in &order {
        // A node in S kills propagation through it, but may still terminate
        // a path as an endpoint.
        let propagate = x == u || !members[x as usize];
        for &y in g.out_neighbors(x) {
            if dist[y as usize] == dist[x as usize] + 1 {
                sigma[y as usize] += sigma[x as usize];
                if propagate {
                    avoid[y as usize] += avoid[x as usize];
                }
            }
        }
    }
    let mut acc = 0.0;
    for v in 0..n as u32 {
        if v == u || dist[v as usize] == u32::MAX {
            continue;
        }
        acc += 1.0 - avoid[v as usize] / sigma[v as usize];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic;

    fn draw_many(g: &Graph, seed: u64, m: usize) -> Sample {
        let mut sample = Sample::new(seed);
        sample.grow(g, m);
        sample
    }

    #[test]
    fn k2_always_empty() {
        let g = synthetic::path(2);
        let sample = draw_many(&g, 1, 200);
        assert!(sample.edges().iter().all(|h| h.is_empty()));
        assert_eq!(sample.b_h(), 0);
    }

    #[test]
    fn path_pair_ac_yields_center() {
        let g = synthetic::path(3);
        let sample = draw_many(&g, 2, 3000);
        let b = g.id_of(1).unwrap();
        // Non-empty hyper-edges are exactly {b}.
        let mut nonempty = 0;
        for h in sample.edges() {
            if !h.is_empty() {
                assert_eq!(h.nodes(), &[b]);
                nonempty += 1;
            }
        }
        // Unordered pair (a, c) is 1 of 3 pairs.
        let freq = nonempty as f64 / sample.m() as f64;
        assert!((freq - 1.0 / 3.0).abs() < 0.03, "freq {freq}");
    }

    #[test]
    fn four_cycle_splits_between_two_geodesics() {
        let g = synthetic::cycle(4);
        let sample = draw_many(&g, 3, 10_000);
        // Node b is internal iff the pair is the opposite pair {a, c} (1 of 6
        // unordered pairs) and the geodesic through b wins the coin flip:
        // frequency 1/12 per node.
        let mut counts = vec![0u64; 4];
        for h in sample.edges() {
            for &x in h.nodes() {
                counts[x as usize] += 1;
            }
        }
        for &c in &counts {
            let freq = c as f64 / sample.m() as f64;
            assert!((freq - 1.0 / 12.0).abs() < 0.015, "freq {freq}");
        }
    }

    #[test]
    fn disconnected_pairs_are_legal_empties() {
        let (g, _) = Graph::parse_edge_list("1 2\n3 4\n", false).unwrap();
        let sample = draw_many(&g, 4, 500);
        assert!(sample.edges().iter().any(|h| h.is_empty()));
    }

    #[test]
    fn directed_reachability_respected() {
        let (g, _) = Graph::parse_edge_list("1 2\n2 3\n", true).unwrap();
        let sample = draw_many(&g, 5, 4000);
        let mid = g.id_of(2).unwrap();
        let nonempty: Vec<_> = sample.edges().iter().filter(|h| !h.is_empty()).collect();
        assert!(!nonempty.is_empty());
        for h in &nonempty {
            assert_eq!(h.nodes(), &[mid]);
        }
        // Only the ordered pair (1, 3) of the 6 has an internal node.
        let freq = nonempty.len() as f64 / sample.m() as f64;
        assert!((freq - 1.0 / 6.0).abs() < 0.02, "freq {freq}");
    }

    #[test]
    fn grow_is_batch_invariant_and_thread_invariant() {
        let g = synthetic::grid(4, 4);
        let mut one_shot = Sample::new(9);
        one_shot.grow(&g, 300);
        let mut batched = Sample::new(9);
        batched.grow(&g, 17);
        batched.grow(&g, 150);
        batched.grow(&g, 300);
        assert_eq!(one_shot.edges(), batched.edges());
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let serial = pool.install(|| {
            let mut s = Sample::new(9);
            s.grow(&g, 300);
            s
        });
        assert_eq!(one_shot.edges(), serial.edges());
    }

    #[test]
    fn enumerate_distribution_path_graph() {
        let g = synthetic::path(3);
        let dist = enumerate_distribution(&g, 1_000_000).unwrap();
        let b = g.id_of(1).unwrap();
        assert_eq!(dist.len(), 2);
        let total: f64 = dist.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-12);
        for (h, p) in &dist {
            if h.is_empty() {
                assert!((p - 4.0 / 6.0).abs() < 1e-12);
            } else {
                assert_eq!(h.nodes(), &[b]);
                assert!((p - 2.0 / 6.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn enumerate_distribution_trivial_cases() {
        let k2 = synthetic::path(2);
        let dist = enumerate_distribution(&k2, 10).unwrap();
        assert_eq!(dist.len(), 1);
        assert!(dist[0].0.is_empty());
        assert!((dist[0].1 - 1.0).abs() < 1e-12);

        let (disc, _) = Graph::parse_edge_list("1 1\n2 2\n", false).unwrap();
        let dist = enumerate_distribution(&disc, 10).unwrap();
        assert_eq!(dist.len(), 1);
        assert!(dist[0].0.is_empty());
        assert!((dist[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn enumeration_ceiling_guard_trips() {
        // 2x8 grid has plenty of corner-to-corner geodesics.
        let g = synthetic::grid(2, 8);
        assert!(matches!(
            enumerate_distribution(&g, 3),
            Err(Error::SizeGuard(_))
        ));
    }

    #[test]
    fn exact_centrality_matches_hand_values() {
        let g = synthetic::path(3);
        let b = g.id_of(1).unwrap();
        assert!((exact_set_centrality(&g, &[b]) - 2.0 / 6.0).abs() < 1e-12);
        assert_eq!(exact_set_centrality(&g, &[]), 0.0);
        let k4 = synthetic::complete(4);
        for u in 0..4 {
            assert_eq!(exact_set_centrality(&k4, &[u]), 0.0);
        }
    }

    #[test]
    fn exact_centrality_agrees_with_enumeration() {
        for (g, seed) in [
            (synthetic::cycle(5), 11u64),
            (synthetic::grid(3, 3), 12u64),
            (synthetic::complete_bipartite(2, 3), 13u64),
        ] {
            let dist = enumerate_distribution(&g, 1_000_000).unwrap();
            let mut rng = derive_rng(seed, 0, 0);
            for _ in 0..5 {
                let a = rng.random_range(0..g.n() as u32);
                let b = rng.random_range(0..g.n() as u32);
                let set = if a == b { vec![a] } else { vec![a, b] };
                let from_enum: f64 = dist
                    .iter()
                    .filter(|(h, _)| h.intersects(&set))
                    .map(|(_, p)| p)
                    .sum();
                let direct = exact_set_centrality(&g, &set);
                assert!(
                    (from_enum - direct).abs() < 1e-10,
                    "set {set:?}: {from_enum} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn empirical_mean_tracks_exact_centrality() {
        let g = synthetic::grid(3, 3);
        let set = [g.id_of(4).unwrap()]; // grid center
        let exact = exact_set_centrality(&g, &set);
        let sample = draw_many(&g, 21, 100_000);
        let est = sample.empirical_centrality(&set);
        let se = (exact * (1.0 - exact) / sample.m() as f64).sqrt();
        assert!(
            (est - exact).abs() < 3.0 * se + 1e-9,
            "est {est} exact {exact} se {se}"
        );
    }

    #[test]
    fn binary_cache_round_trips() {
        let g = synthetic::grid(3, 4);
        let sample = draw_many(&g, 31, 400);
        let mut buf = Vec::new();
        sample.write_binary(g.n() as u64, &mut buf).unwrap();
        let (back, n) = Sample::read_binary(&mut buf.as_slice()).unwrap();
        assert_eq!(n, g.n() as u64);
        assert_eq!(back.seed(), sample.seed());
        assert_eq!(back.edges(), sample.edges());
        assert_eq!(back.b_h(), sample.b_h());
        assert_eq!(back.node_counts(), sample.node_counts());
    }

    #[test]
    fn binary_cache_rejects_garbage() {
        let mut buf = vec![1u8; 10];
        assert!(matches!(
            Sample::read_binary(&mut buf.as_slice()),
            Err(Error::MalformedCache(_))
        ));
        buf = Vec::new();
        buf.extend_from_slice(&1u64.to_le_bytes());
        buf.extend_from_slice(&2u64.to_le_bytes());
        buf.extend_from_slice(&0u64.to_le_bytes());
        buf.extend_from_slice(&1u32.to_le_bytes());
        buf.extend_from_slice(&9u32.to_le_bytes()); // id 9 out of range for n=2
        assert!(matches!(
            Sample::read_binary(&mut buf.as_slice()),
            Err(Error::MalformedCache(_))
        ));
    }

    #[test]
    fn node_count_invariant() {
        let g = synthetic::grid(4, 4);
        let sample = draw_many(&g, 7, 2000);
        let total_from_counts: u64 = sample.node_counts().values().sum();
        let total_from_edges: u64 = sample.edges().iter().map(|h| h.len() as u64).sum();
        assert_eq!(total_from_counts, total_from_edges);
        let max_len = sample.edges().iter().map(|h| h.len()).max().unwrap_or(0);
        assert_eq!(sample.b_h(), max_len);
    }
}
