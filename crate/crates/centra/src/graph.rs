//! Unweighted graph storage and exact structural statistics.
//!
//! Graphs are loaded from whitespace-separated edge lists, deduplicated, and
//! stored in CSR form with dense internal ids assigned in first-appearance
//! order. Directed graphs also keep the reverse adjacency, which the backward
//! half of the bidirectional BFS needs. A `Graph` is immutable after
//! construction and safe to share across threads.

use std::collections::HashMap;
use std::collections::HashSet;
use std::collections::VecDeque;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Compact adjacency representation of a directed or undirected unweighted graph.
#[derive(Debug, Clone)]
pub struct Graph {
    directed: bool,
    out_offsets: Vec<usize>,
    out_targets: Vec<u32>,
    // Reverse adjacency; empty for undirected graphs (out doubles as in).
    in_offsets: Vec<usize>,
    in_targets: Vec<u32>,
    labels: Vec<u64>,
    label_index: HashMap<u64, u32>,
    edge_count: usize,
}

/// What `parse_edge_list` dropped while loading.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseReport {
    pub dropped_self_loops: usize,
    pub dropped_duplicates: usize,
    pub comment_lines: usize,
}

/// Structural statistics reported by the CLI and used by the VC bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub edge_count: usize,
    /// `None` when not computed (large graph without a user-supplied bound).
    pub vertex_diameter: Option<usize>,
}

impl Graph {
    /// Parses a whitespace-separated edge list. Lines starting with `#` or `%`
    /// are comments; blank lines are skipped. Duplicate edges and self-loops
    /// are dropped silently and counted in the report.
    pub fn parse_edge_list(text: &str, directed: bool) -> Result<(Graph, ParseReport)> {
        let mut pairs = Vec::new();
        let mut comment_lines = 0usize;
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
                comment_lines += 1;
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "expected exactly two whitespace-separated tokens".into(),
                    })
                }
            };
            let parse_id = |tok: &str| -> Result<u64> {
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("not a non-negative integer: {tok:?}"),
                })
            };
            pairs.push((parse_id(a)?, parse_id(b)?));
        }
        let (graph, mut report) = Graph::from_pairs(&pairs, directed)?;
        report.comment_lines = comment_lines;
        Ok((graph, report))
    }

    /// Reads and parses an edge-list file.
    pub fn parse_edge_list_path(path: &Path, directed: bool) -> Result<(Graph, ParseReport)> {
        let text = std::fs::read_to_string(path)?;
        Graph::parse_edge_list(&text, directed)
    }

    /// Builds a graph from raw label pairs, assigning dense ids in
    /// first-appearance order. Self-loops and duplicates are dropped (nodes
    /// seen only on dropped lines are still interned, hence may be isolated).
    pub fn from_pairs(pairs: &[(u64, u64)], directed: bool) -> Result<(Graph, ParseReport)> {
        let mut labels: Vec<u64> = Vec::new();
        let mut label_index: HashMap<u64, u32> = HashMap::new();
        let intern = |label: u64, labels: &mut Vec<u64>, index: &mut HashMap<u64, u32>| {
            *index.entry(label).or_insert_with(|| {
                labels.push(label);
                (labels.len() - 1) as u32
            })
        };
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(pairs.len());
        let mut report = ParseReport::default();
        for &(la, lb) in pairs {
            let a = intern(la, &mut labels, &mut label_index);
            let b = intern(lb, &mut labels, &mut label_index);
            if a == b {
                report.dropped_self_loops += 1;
                continue;
            }
            let key = if directed || a < b { (a, b) } else { (b, a) };
            if !seen.insert(key) {
                report.dropped_duplicates += 1;
                continue;
            }
            edges.push(key);
        }
        if labels.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let n = labels.len();
        let build_csr = |arcs: &[(u32, u32)]| -> (Vec<usize>, Vec<u32>) {
            let mut offsets = vec![0usize; n + 1];
            for &(s, _) in arcs {
                offsets[s as usize + 1] += 1;
            }
            for i in 1..=n {
                offsets[i] += offsets[i - 1];
            }
            let mut targets = vec![0u32; arcs.len()];
            let mut cursor = offsets.clone();
            for &(s, d) in arcs {
                targets[cursor[s as usize]] = d;
                cursor[s as usize] += 1;
            }
            for w in 0..n {
                targets[offsets[w]..offsets[w + 1]].sort_unstable();
            }
            (offsets, targets)
        };
        let (out_offsets, out_targets, in_offsets, in_targets) = if directed {
            let (oo, ot) = build_csr(&edges);
            let reversed: Vec<(u32, u32)> = edges.iter().map(|&(a, b)| (b, a)).collect();
            let (io, it) = build_csr(&reversed);
            (oo, ot, io, it)
        } else {
            let mut arcs = Vec::with_capacity(edges.len() * 2);
            for &(a, b) in &edges {
                arcs.push((a, b));
                arcs.push((b, a));
            }
            let (oo, ot) = build_csr(&arcs);
            (oo, ot, Vec::new(), Vec::new())
        };
        Ok((
            Graph {
                directed,
                out_offsets,
                out_targets,
                in_offsets,
                in_targets,
                labels,
                label_index,
                edge_count: edges.len(),
            },
            report,
        ))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    /// Number of deduplicated edges (undirected edges counted once).
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn out_neighbors(&self, u: u32) -> &[u32] {
        &self.out_targets[self.out_offsets[u as usize]..self.out_offsets[u as usize + 1]]
    }

    pub fn in_neighbors(&self, u: u32) -> &[u32] {
        if self.directed {
            &self.in_targets[self.in_offsets[u as usize]..self.in_offsets[u as usize + 1]]
        } else {
            self.out_neighbors(u)
        }
    }

    /// External label of an internal id.
    pub fn label(&self, u: u32) -> u64 {
        self.labels[u as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Internal id of an external label, if present.
    pub fn id_of(&self, label: u64) -> Option<u32> {
        self.label_index.get(&label).copied()
    }

    /// Canonical edge-list serialization: internal-id order, external labels.
    /// Isolated nodes are not representable in this format and are dropped.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        for u in 0..self.n() as u32 {
            for &v in self.out_neighbors(u) {
                if !self.directed && v < u {
                    continue;
                }
                let _ = writeln!(out, "{} {}", self.label(u), self.label(v));
            }
        }
        out
    }

    /// Hop distances from `source`; `u32::MAX` marks unreachable nodes.
    pub fn bfs_distances(&self, source: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[source as usize] = 0;
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let d = dist[x as usize];
            for &y in self.out_neighbors(x) {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = d + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn stats(&self, vertex_diameter: Option<usize>) -> GraphStats {
        GraphStats {
            n: self.n(),
            edge_count: self.edge_count,
            vertex_diameter,
        }
    }
}

/// Exact vertex diameter `B`: the maximum over ordered reachable pairs
/// `(u, v)`, `u != v`, of `d(u, v) - 1`, i.e. the largest number of nodes
/// internal to any shortest path. One BFS per node; intended for desk-scale
/// graphs.
pub fn vertex_diameter_exact(g: &Graph) -> usize {
    let max_dist = (0..g.n() as u32)
        .into_par_iter()
        .map(|u| {
            g.bfs_distances(u)
                .into_iter()
                .filter(|&d| d != u32::MAX)
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    (max_dist as usize).saturating_sub(1)
}
