//! Incremental state for the approximate Monte Carlo empirical Rademacher
//! average (AMCERA), plus exhaustive oracles for the ERA.
//!
//! The AMCERA replaces the NP-hard supremum over set indicators by a linear
//! relaxation over per-node signed sums:
//!
//! ```text
//! AMCERA = (1/t) sum_j sup_{|S| <= k} (1/m) sum_{u in S} s_j^u ,
//! s_j^u  = sum_s sigma_js f_u(h_s)
//! ```
//!
//! so each inner supremum is the sum of the at most `k` largest positive
//! signed sums (the empty set keeps it nonnegative). Signed sums are kept as
//! integers and divided by `m` only at query time, so incremental extension
//! is exact: absorbing the same sample in any batch split yields bit-identical
//! state, because the sign of column `s`, trial `j` derives from
//! `(seed, s, j)` and never from call order.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::io::Write;

use crate::error::{Error, Result};
use crate::rng::rademacher_signs;
use crate::sampler::HyperEdge;

/// Per-trial, per-node signed sums realizing the AMCERA incrementally.
#[derive(Debug, Clone, PartialEq)]
pub struct RademacherState {
    t: usize,
    m: usize,
    seed: u64,
    b_h: usize,
    nodes: HashMap<u32, NodeSums>,
}

#[derive(Debug, Clone, PartialEq)]
struct NodeSums {
    count: u64,
    sums: Vec<i64>,
}

/// One evaluation of the ERA upper bound: `total = amcera + slack` holds with
/// probability at least `1 - delta` over the sign matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EraBound {
    pub amcera: f64,
    pub wimpy: f64,
    pub slack: f64,
    pub total: f64,
}

impl RademacherState {
    pub fn new(t: usize, seed: u64) -> Result<Self> {
        if t < 1 {
            return Err(Error::invalid("t must be at least 1"));
        }
        Ok(RademacherState {
            t,
            m: 0,
            seed,
            b_h: 0,
            nodes: HashMap::new(),
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn b_h(&self) -> usize {
        self.b_h
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `c_u` for `u`, zero if the node never appeared.
    pub fn count(&self, u: u32) -> u64 {
        self.nodes.get(&u).map(|ns| ns.count).unwrap_or(0)
    }

    /// `s_j^u`, zero if the node never appeared.
    pub fn signed_sum(&self, u: u32, trial: usize) -> i64 {
        self.nodes.get(&u).map(|ns| ns.sums[trial]).unwrap_or(0)
    }

    /// Nodes that appeared in at least one hyper-edge.
    pub fn seen_nodes(&self) -> impl Iterator<Item = u32> + '_ {
        self.nodes.keys().copied()
    }

    /// Absorbs a batch whose first hyper-edge has global index `start_index`,
    /// which must equal the number of samples absorbed so far.
    pub fn extend(&mut self, batch: &[HyperEdge], start_index: usize) -> Result<()> {
        if start_index != self.m {
            return Err(Error::StateMismatch(format!(
                "batch starts at {start_index} but {} samples were absorbed",
                self.m
            )));
        }
        for (offset, edge) in batch.iter().enumerate() {
            self.b_h = self.b_h.max(edge.len());
            if edge.is_empty() {
                continue;
            }
            // Signs for this column; unused columns of empty edges never
            // influence any signed sum, so they need not be drawn at all.
            let signs = rademacher_signs(self.seed, (start_index + offset) as u64, self.t);
            for &u in edge.nodes() {
                let entry = self.nodes.entry(u).or_insert_with(|| NodeSums {
                    count: 0,
                    sums: vec![0; self.t],
                });
                entry.count += 1;
                for (sum, &sig) in entry.sums.iter_mut().zip(&signs) {
                    *sum += sig as i64;
                }
            }
        }
        self.m += batch.len();
        Ok(())
    }

    /// Integer numerator of trial `j`'s supremum: the sum of the at most `k`
    /// largest positive signed sums.
    pub fn trial_suprema(&self, k: usize) -> Vec<i64> {
        assert!(k >= 1, "k must be at least 1");
        let mut out = vec![0i64; self.t];
        for (j, slot) in out.iter_mut().enumerate() {
            // Min-heap of size <= k over the positive sums.
            let mut heap = std::collections::BinaryHeap::with_capacity(k + 1);
            for ns in self.nodes.values() {
                let v = ns.sums[j];
                if v > 0 {
                    heap.push(std::cmp::Reverse(v));
                    if heap.len() > k {
                        heap.pop();
                    }
                }
            }
            *slot = heap.into_iter().map(|r| r.0).sum();
        }
        out
    }

    /// The AMCERA `(1/t) sum_j sup / m`.
    pub fn amcera(&self, k: usize) -> f64 {
        assert!(self.m >= 1, "amcera needs at least one sample");
        let num: i64 = self.trial_suprema(k).iter().sum();
        num as f64 / (self.t as f64 * self.m as f64)
    }

    /// Approximate wimpy variance `(b_H / m) * sum of the k largest c_u`
    /// (indicator functions give `f_u^2 = f_u`).
    pub fn wimpy_variance(&self, k: usize) -> f64 {
        assert!(self.m >= 1, "wimpy variance needs at least one sample");
        assert!(k >= 1, "k must be at least 1");
        let mut heap = std::collections::BinaryHeap::with_capacity(k + 1);
        for ns in self.nodes.values() {
            heap.push(std::cmp::Reverse(ns.count));
            if heap.len() > k {
                heap.pop();
            }
        }
        let top: u64 = heap.into_iter().map(|r| r.0).sum();
        self.b_h as f64 / self.m as f64 * top as f64
    }

    /// Probabilistic ERA upper bound: `amcera + sqrt(4 w ln(1/delta) / (t m))`.
    pub fn era_upper_bound(&self, k: usize, delta: f64) -> Result<EraBound> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::invalid(format!("delta must be in (0,1), got {delta}")));
        }
        let amcera = self.amcera(k);
        let wimpy = self.wimpy_variance(k);
        let slack =
            (4.0 * wimpy * (1.0 / delta).ln() / (self.t as f64 * self.m as f64)).sqrt();
        Ok(EraBound {
            amcera,
            wimpy,
            slack,
            total: amcera + slack,
        })
    }

    /// Debug dump of the signed-sum table as CSV `(node, trial, sum)`.
    pub fn dump_signed_sums_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "node,trial,sum")?;
        let mut ids: Vec<u32> = self.nodes.keys().copied().collect();
        ids.sort_unstable();
        for u in ids {
            let ns = &self.nodes[&u];
            for (j, s) in ns.sums.iter().enumerate() {
                writeln!(w, "{u},{j},{s}")?;
            }
        }
        Ok(())
    }
}

// ============================================================================
// Exhaustive oracles (t = 1 suffices for expectations over signs)
// ============================================================================

const ORACLE_MAX_M: usize = 16;
const ORACLE_MAX_NODES: usize = 12;

struct MaskedSample {
    hit: Vec<u32>, // per distinct node, bitmask over sample indices
    m: usize,
}

fn mask_sample(edges: &[HyperEdge]) -> Result<MaskedSample> {
    let m = edges.len();
    if m == 0 || m > ORACLE_MAX_M {
        return Err(Error::SizeGuard(format!(
            "exhaustive sign enumeration supports 1..={ORACLE_MAX_M} samples, got {m}"
        )));
    }
    let distinct: BTreeSet<u32> = edges.iter().flat_map(|h| h.nodes().iter().copied()).collect();
    if distinct.len() > ORACLE_MAX_NODES {
        return Err(Error::SizeGuard(format!(
            "exhaustive subset supremum supports <= {ORACLE_MAX_NODES} distinct nodes, got {}",
            distinct.len()
        )));
    }
    let index: HashMap<u32, usize> =
        distinct.iter().copied().enumerate().map(|(i, u)| (u, i)).collect();
    let mut hit = vec![0u32; distinct.len()];
    for (s, edge) in edges.iter().enumerate() {
        for u in edge.nodes() {
            hit[index[u]] |= 1 << s;
        }
    }
    Ok(MaskedSample { hit, m })
}

/// Exact ERA by full enumeration of all `2^m` sign vectors and all node
/// subsets of size at most `k` (plus the empty set).
pub fn exact_era(edges: &[HyperEdge], k: usize) -> Result<f64> {
    let ms = mask_sample(edges)?;
    let p = ms.hit.len();
    // OR-mask of samples hit, for every subset of distinct nodes with |S| <= k.
    let mut subset_masks: Vec<u32> = Vec::new();
    for subset in 0u32..(1 << p) {
        if (subset.count_ones() as usize) <= k {
            let mut or = 0u32;
            let mut rest = subset;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                or |= ms.hit[i];
                rest &= rest - 1;
            }
            subset_masks.push(or);
        }
    }
    let mut total: i64 = 0;
    for sigma in 0u32..(1 << ms.m) {
        let mut best: i32 = 0; // empty set
        for &or in &subset_masks {
            // sum_s sigma_s f_S(h_s) = 2 |hits & plus| - |hits|
            let value = 2 * (or & sigma).count_ones() as i32 - or.count_ones() as i32;
            best = best.max(value);
        }
        total += best as i64;
    }
    Ok(total as f64 / ((1u64 << ms.m) as f64 * ms.m as f64))
}

/// Exact expectation of the AMCERA over the signs: the inner objective is the
/// linear sum of per-node signed sums instead of the set indicator.
pub fn exact_expected_amcera(edges: &[HyperEdge], k: usize) -> Result<f64> {
    let ms = mask_sample(edges)?;
    let mut total: i64 = 0;
    for sigma in 0u32..(1 << ms.m) {
        total += amcera_numerator_for_signs(&ms.hit, sigma, k) as i64;
    }
    Ok(total as f64 / ((1u64 << ms.m) as f64 * ms.m as f64))
}

fn amcera_numerator_for_signs(hit: &[u32], sigma: u32, k: usize) -> i32 {
    let mut sums: Vec<i32> = hit
        .iter()
        .map(|&h| 2 * (h & sigma).count_ones() as i32 - h.count_ones() as i32)
        .filter(|&v| v > 0)
        .collect();
    sums.sort_unstable_by(|a, b| b.cmp(a));
    sums.iter().take(k).sum()
}
