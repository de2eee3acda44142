//! Greedy maximum coverage on a sample of hyper-edges.
//!
//! Classic `(1 - 1/e)` greedy: each pick takes the node covering the most
//! still-uncovered hyper-edges, ties broken by smallest node id, stopping
//! early when no node has positive marginal gain. Coverage counts are kept
//! exact with a lazy-decrement priority queue over an inverted index, so the
//! total work is linear in the sum of hyper-edge sizes plus queue overhead.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sampler::Sample;

/// Result of one `greedy_cover` invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyResult {
    /// Chosen node ids in pick order (at most `k`).
    pub nodes: Vec<u32>,
    /// Empirical coverage `C_H(S)` of the chosen set.
    pub coverage: f64,
    /// Newly covered hyper-edges per pick; non-increasing by submodularity.
    pub marginal_gains: Vec<u64>,
}

#[derive(PartialEq, Eq)]
struct Entry {
    gain: u64,
    node: u32,
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap on gain; among equal gains the smallest node id wins.
        self.gain
            .cmp(&other.gain)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Runs up to `k` greedy iterations over the sample. Deterministic function
/// of `(k, sample)`.
pub fn greedy_cover(k: usize, sample: &Sample) -> Result<GreedyResult> {
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let m = sample.m();
    if m < 1 {
        return Err(Error::invalid("sample must contain at least one hyper-edge"));
    }
    // Inverted index: node -> indices of hyper-edges containing it.
    let mut incidence: HashMap<u32, Vec<u32>> = HashMap::new();
    for (idx, edge) in sample.edges().iter().enumerate() {
        for &u in edge.nodes() {
            incidence.entry(u).or_default().push(idx as u32);
        }
    }
    let mut gains: HashMap<u32, u64> =
        incidence.iter().map(|(&u, list)| (u, list.len() as u64)).collect();
    let mut heap: BinaryHeap<Entry> = gains
        .iter()
        .map(|(&node, &gain)| Entry { gain, node })
        .collect();
    let mut covered = vec![false; m];
    let mut covered_count = 0u64;
    let mut nodes = Vec::new();
    let mut marginal_gains = Vec::new();
    while nodes.len() < k {
        let best = loop {
            match heap.pop() {
                None => break None,
                Some(entry) => {
                    let current = gains[&entry.node];
                    if current == entry.gain {
                        break Some(entry);
                    }
                    // Stale priority: re-queue with the exact current gain.
                    if current > 0 {
                        heap.push(Entry {
                            gain: current,
                            node: entry.node,
                        });
                    }
                }
            }
        };
        let Some(best) = best else { break };
        if best.gain == 0 {
            break;
        }
        nodes.push(best.node);
        marginal_gains.push(best.gain);
        covered_count += best.gain;
        gains.insert(best.node, 0);
        for &idx in &incidence[&best.node] {
            if covered[idx as usize] {
                continue;
            }
            covered[idx as usize] = true;
            for &w in sample.edges()[idx as usize].nodes() {
                if w != best.node {
                    *gains.get_mut(&w).unwrap() -= 1;
                }
            }
        }
    }
    Ok(GreedyResult {
        nodes,
        coverage: covered_count as f64 / m as f64,
        marginal_gains,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::HyperEdge;

    fn sample_from(edges: &[&[u32]]) -> Sample {
        let mut s = Sample::new(0);
        s.extend_with_edges(edges.iter().map(|e| HyperEdge::new(e.to_vec())));
        s
    }

    #[test]
    fn picks_lowest_id_on_ties() {
        let s = sample_from(&[&[1, 2], &[2, 3], &[3], &[4]]);
        let r = greedy_cover(1, &s).unwrap();
        assert_eq!(r.nodes, vec![2]);
        assert_eq!(r.coverage, 0.5);
        assert_eq!(r.marginal_gains, vec![2]);
    }

    #[test]
    fn two_picks_match_brute_force() {
        let s = sample_from(&[&[1, 2], &[2, 3], &[3], &[4]]);
        let r = greedy_cover(2, &s).unwrap();
        assert_eq!(r.nodes, vec![2, 3]);
        assert_eq!(r.coverage, 0.75);
        assert_eq!(r.marginal_gains, vec![2, 1]);
    }

    #[test]
    fn nothing_coverable_returns_empty() {
        let s = sample_from(&[&[], &[]]);
        for k in 1..4 {
            let r = greedy_cover(k, &s).unwrap();
            assert!(r.nodes.is_empty());
            assert_eq!(r.coverage, 0.0);
            assert!(r.marginal_gains.is_empty());
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let s = sample_from(&[&[1]]);
        assert!(greedy_cover(0, &s).is_err());
        let empty = Sample::new(0);
        assert!(greedy_cover(1, &empty).is_err());
    }

    #[test]
    fn early_stop_keeps_set_small() {
        let s = sample_from(&[&[1], &[1], &[2]]);
        let r = greedy_cover(5, &s).unwrap();
        assert_eq!(r.nodes, vec![1, 2]);
        assert!((r.coverage - 1.0).abs() < 1e-12);
    }

    #[test]
    fn marginal_gains_non_increasing_and_sum_to_coverage() {
        let s = sample_from(&[&[1, 2], &[1], &[2, 3], &[3, 4], &[4], &[5]]);
        let r = greedy_cover(4, &s).unwrap();
        for w in r.marginal_gains.windows(2) {
            assert!(w[0] >= w[1]);
        }
        let total: u64 = r.marginal_gains.iter().sum();
        assert!((r.coverage * s.m() as f64 - total as f64).abs() < 1e-9);
    }

    #[test]
    fn appending_empty_edge_rescales_coverage() {
        let s1 = sample_from(&[&[1, 2], &[2], &[3]]);
        let r1 = greedy_cover(2, &s1).unwrap();
        let s2 = sample_from(&[&[1, 2], &[2], &[3], &[]]);
        let r2 = greedy_cover(2, &s2).unwrap();
        assert_eq!(r1.nodes, r2.nodes);
        let rescaled = r1.coverage * s1.m() as f64 / s2.m() as f64;
        assert!((r2.coverage - rescaled).abs() < 1e-12);
    }
}
