//! Brute-force ground truth: exact optimum sets and exact supremum deviation
//! by exhaustive subset search.
//!
//! Enumeration is restricted to nodes with nonzero singleton centrality
//! (coverage is monotone, so nodes that lie on no shortest path can never
//! help) plus, for the supremum deviation, nodes present in the sample.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sampler::Sample;

pub const DEFAULT_SUBSET_CEILING: u64 = 1_000_000;

/// Exhaustively verified optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactOptimum {
    pub nodes: Vec<u32>,
    pub value: f64,
    pub evaluated_subsets: u64,
}

/// Per-source shortest-path DAG data, cached once per graph so repeated
/// subset evaluations only pay the avoiding dynamic program.
pub struct ExactOracle<'g> {
    g: &'g Graph,
    dags: Vec<SourceDag>,
}

struct SourceDag {
    dist: Vec<u32>,
    sigma: Vec<f64>,
    order: Vec<u32>,
}

impl<'g> ExactOracle<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.n();
        let mut dags = Vec::with_capacity(n);
        for u in 0..n as u32 {
            let dist = g.bfs_distances(u);
            let mut order: Vec<u32> =
                (0..n as u32).filter(|&x| dist[x as usize] != u32::MAX).collect();
            order.sort_unstable_by_key(|&x| dist[x as usize]);
            let mut sigma = vec![0.0f64; n];
            sigma[u as usize] = 1.0;
            for &x in &order {
                for &y in g.out_neighbors(x) {
                    if dist[y as usize] == dist[x as usize] + 1 {
                        sigma[y as usize] += sigma[x as usize];
                    }
                }
            }
            dags.push(SourceDag { dist, sigma, order });
        }
        ExactOracle { g, dags }
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    /// Exact `C(S)` via the avoiding dynamic program on each cached DAG.
    pub fn set_centrality(&self, set: &[u32]) -> f64 {
        let n = self.g.n();
        if n < 2 {
            return 0.0;
        }
        let mut member = vec![false; n];
        for &s in set {
            member[s as usize] = true;
        }
        let mut avoid = vec![0.0f64; n];
        let mut total = 0.0;
        for (u, dag) in self.dags.iter().enumerate() {
            let u = u as u32;
            for &x in &dag.order {
                avoid[x as usize] = 0.0;
            }
            avoid[u as usize] = 1.0;
            for &x in &dag.order {
                let propagate = x == u || !member[x as usize];
                if !propagate {
                    continue;
                }
                for &y in self.g.out_neighbors(x) {
                    if dag.dist[y as usize] == dag.dist[x as usize] + 1 {
                        avoid[y as usize] += avoid[x as usize];
                    }
                }
            }
            for &v in &dag.order {
                if v != u {
                    total += 1.0 - avoid[v as usize] / dag.sigma[v as usize];
                }
            }
        }
        total / (n as f64 * (n as f64 - 1.0))
    }

    /// Exact singleton centralities for every node, via path counts through
    /// each internal candidate: `sigma_u(w) * sigma_w(v) / sigma_u(v)` summed
    /// over pairs with `d(u,w) + d(w,v) = d(u,v)`.
    pub fn singleton_centralities(&self) -> Vec<f64> {
        let n = self.g.n();
        let mut scores = vec![0.0f64; n];
        if n < 2 {
            return scores;
        }
        for (u, du) in self.dags.iter().enumerate() {
            for &v in &du.order {
                if v as usize == u {
                    continue;
                }
                let duv = du.dist[v as usize];
                for &w in &du.order {
                    if w as usize == u || w == v {
                        continue;
                    }
                    let dw = &self.dags[w as usize];
                    if dw.dist[v as usize] == u32::MAX {
                        continue;
                    }
                    if du.dist[w as usize] + dw.dist[v as usize] == duv {
                        scores[w as usize] +=
                            du.sigma[w as usize] * dw.sigma[v as usize] / du.sigma[v as usize];
                    }
                }
            }
        }
        let pairs = n as f64 * (n as f64 - 1.0);
        for s in scores.iter_mut() {
            *s /= pairs;
        }
        scores
    }

    /// Nodes that can contribute to any set's centrality.
    pub fn candidate_nodes(&self) -> Vec<u32> {
        self.singleton_centralities()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0.0)
            .map(|(u, _)| u as u32)
            .collect()
    }
}

fn subset_count(candidates: usize, k: usize) -> u64 {
    let mut total = 0u64;
    let mut level = 1u64;
    for j in 1..=k.min(candidates) {
        level = level.saturating_mul((candidates - j + 1) as u64) / j as u64;
        total = total.saturating_add(level);
    }
    total
}

/// Exhaustive optimum over all subsets of size at most `k`, ties resolved by
/// lexicographic node order.
pub fn brute_force_optimum(g: &Graph, k: usize, ceiling: u64) -> Result<ExactOptimum> {
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let oracle = ExactOracle::new(g);
    let candidates = oracle.candidate_nodes();
    let count = subset_count(candidates.len(), k);
    if count > ceiling {
        return Err(Error::SizeGuard(format!(
            "{count} candidate subsets exceed the ceiling {ceiling}"
        )));
    }
    let mut best_nodes: Vec<u32> = Vec::new();
    let mut best_value = 0.0f64;
    let mut evaluated = 0u64;
    let mut prefix: Vec<u32> = Vec::new();
    // Depth-first prefix enumeration visits subsets in lexicographic order of
    // their sorted node lists, so first-strictly-greater keeps the
    // lexicographically smallest optimum.
    fn recurse(
        oracle: &ExactOracle,
        candidates: &[u32],
        from: usize,
        k: usize,
        prefix: &mut Vec<u32>,
        best_nodes: &mut Vec<u32>,
        best_value: &mut f64,
        evaluated: &mut u64,
    ) {
        for i in from..candidates.len() {
            prefix.push(candidates[i]);
            *evaluated += 1;
            let value = oracle.set_centrality(prefix);
            if value > *best_value {
                *best_value = value;
                *best_nodes = prefix.clone();
            }
            if prefix.len() < k {
                recurse(
                    oracle, candidates, i + 1, k, prefix, best_nodes, best_value, evaluated,
                );
            }
            prefix.pop();
        }
    }
    recurse(
        &oracle,
        &candidates,
        0,
        k,
        &mut prefix,
        &mut best_nodes,
        &mut best_value,
        &mut evaluated,
    );
    Ok(ExactOptimum {
        nodes: best_nodes,
        value: best_value,
        evaluated_subsets: evaluated,
    })
}

/// Exact supremum deviation `max_{|S| <= k} |C(S) - C_H(S)|` over the
/// enumerable subset family.
pub fn exact_supremum_deviation(
    g: &Graph,
    sample: &Sample,
    k: usize,
    ceiling: u64,
) -> Result<f64> {
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let oracle = ExactOracle::new(g);
    let mut candidates: BTreeSet<u32> = oracle.candidate_nodes().into_iter().collect();
    for edge in sample.edges() {
        candidates.extend(edge.nodes().iter().copied());
    }
    let candidates: Vec<u32> = candidates.into_iter().collect();
    let count = subset_count(candidates.len(), k);
    if count > ceiling {
        return Err(Error::SizeGuard(format!(
            "{count} candidate subsets exceed the ceiling {ceiling}"
        )));
    }
    // Per-candidate bitsets over the sample; prefix ORs share work along the
    // enumeration tree.
    let m = sample.m();
    let blocks = m.div_ceil(64).max(1);
    let mut bitsets: Vec<Vec<u64>> = vec![vec![0u64; blocks]; candidates.len()];
    for (s, edge) in sample.edges().iter().enumerate() {
        for &u in edge.nodes() {
            if let Ok(pos) = candidates.binary_search(&u) {
                bitsets[pos][s / 64] |= 1u64 << (s % 64);
            }
        }
    }
    let popcount = |bits: &[u64]| bits.iter().map(|b| b.count_ones() as u64).sum::<u64>();

    let mut best = 0.0f64; // S = empty: both sides zero.
    let mut prefix: Vec<u32> = Vec::new();
    struct Ctx<'a> {
        oracle: &'a ExactOracle<'a>,
        candidates: &'a [u32],
        bitsets: &'a [Vec<u64>],
        m: f64,
        k: usize,
    }
    fn recurse(
        ctx: &Ctx,
        from: usize,
        prefix: &mut Vec<u32>,
        acc: &[u64],
        best: &mut f64,
        popcount: &dyn Fn(&[u64]) -> u64,
    ) {
        for i in from..ctx.candidates.len() {
            prefix.push(ctx.candidates[i]);
            let mut union: Vec<u64> = acc.to_vec();
            for (blk, add) in union.iter_mut().zip(&ctx.bitsets[i]) {
                *blk |= add;
            }
            let c_hat = if ctx.m > 0.0 {
                popcount(&union) as f64 / ctx.m
            } else {
                0.0
            };
            let c_true = ctx.oracle.set_centrality(prefix);
            let dev = (c_true - c_hat).abs();
            if dev > *best {
                *best = dev;
            }
            if prefix.len() < ctx.k {
                recurse(ctx, i + 1, prefix, &union, best, popcount);
            }
            prefix.pop();
        }
    }
    let ctx = Ctx {
        oracle: &oracle,
        candidates: &candidates,
        bitsets: &bitsets,
        m: m as f64,
        k,
    };
    recurse(
        &ctx,
        0,
        &mut prefix,
        &vec![0u64; blocks],
        &mut best,
        &popcount,
    );
    Ok(best)
}
