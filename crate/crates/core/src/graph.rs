//! Loop-free undirected multigraph with degree bookkeeping.
//!
//! Nodes are dense indices `0..n` assigned in arrival order. Edges are kept as
//! a multiplicity map keyed by the normalized pair `(u, w)` with `u < w`.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense node index; also the arrival position in generated graphs.
pub type NodeId = usize;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    degree: Vec<u64>,
    edges: BTreeMap<(NodeId, NodeId), u32>,
    n_edges: u64,
}

fn normalize(u: NodeId, w: NodeId) -> (NodeId, NodeId) {
    if u < w {
        (u, w)
    } else {
        (w, u)
    }
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph of `n` isolated nodes.
    pub fn with_nodes(n: usize) -> Self {
        MultiGraph {
            degree: vec![0; n],
            ..Self::default()
        }
    }

    /// Two nodes joined by a single edge; the default growth seed.
    pub fn pair() -> Self {
        let mut g = Self::with_nodes(2);
        g.add_edge(0, 1).expect("valid pair");
        g
    }

    pub fn add_node(&mut self) -> NodeId {
        self.degree.push(0);
        self.degree.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.degree.len()
    }

    /// Total number of edge copies.
    pub fn edge_count(&self) -> u64 {
        self.n_edges
    }

    /// Number of distinct node pairs joined by at least one edge.
    pub fn distinct_edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, node: NodeId) -> u64 {
        self.degree[node]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degree
    }

    pub fn multiplicity(&self, u: NodeId, w: NodeId) -> u32 {
        self.edges.get(&normalize(u, w)).copied().unwrap_or(0)
    }

    /// Iterates `(u, w, multiplicity)` with `u < w`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, u32)> + '_ {
        self.edges.iter().map(|(&(u, w), &m)| (u, w, m))
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.edges.values().copied().max().unwrap_or(0)
    }

    fn check_pair(&self, u: NodeId, w: NodeId) -> Result<()> {
        let n_nodes = self.node_count();
        for node in [u, w] {
            if node >= n_nodes {
                return Err(Error::UnknownNode { node, n_nodes });
            }
        }
        if u == w {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: NodeId, w: NodeId) -> Result<()> {
        self.add_edges(u, w, 1)
    }

    /// Adds `count` parallel copies of the edge `u`-`w`.
    pub fn add_edges(&mut self, u: NodeId, w: NodeId, count: u32) -> Result<()> {
        self.check_pair(u, w)?;
        if count == 0 {
            return Ok(());
        }
        *self.edges.entry(normalize(u, w)).or_insert(0) += count;
        self.degree[u] += u64::from(count);
        self.degree[w] += u64::from(count);
        self.n_edges += u64::from(count);
        Ok(())
    }

    /// Removes one copy of `u`-`w`. Returns `false` if no such edge exists.
    pub fn remove_edge(&mut self, u: NodeId, w: NodeId) -> Result<bool> {
        self.check_pair(u, w)?;
        let key = normalize(u, w);
        match self.edges.get_mut(&key) {
            None => return Ok(false),
            Some(m) if *m > 1 => *m -= 1,
            Some(_) => {
                self.edges.remove(&key);
            }
        }
        self.degree[u] -= 1;
        self.degree[w] -= 1;
        self.n_edges -= 1;
        Ok(true)
    }

    pub fn degree_histogram(&self) -> DegreeHistogram {
        DegreeHistogram::from_degrees(self.degree.iter().copied())
    }

    /// Writes the text edge-list format: a `N <count>` header followed by one
    /// `u w` line per edge copy.
    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "N {}", self.node_count())?;
        for (u, w, m) in self.edges() {
            for _ in 0..m {
                writeln!(out, "{u} {w}")?;
            }
        }
        out.flush()
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut graph: Option<MultiGraph> = None;
        for (idx, line) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let mut fields = text.split_whitespace();
            match graph.as_mut() {
                None => {
                    let (tag, count) = (fields.next(), fields.next());
                    if tag != Some("N") || fields.next().is_some() {
                        return Err(parse_err(format!(
                            "expected header `N <node-count>`, found `{text}`"
                        )));
                    }
                    let n: usize = count
                        .ok_or_else(|| parse_err("missing node count".into()))?
                        .parse()
                        .map_err(|e| parse_err(format!("bad node count: {e}")))?;
                    graph = Some(MultiGraph::with_nodes(n));
                }
                Some(g) => {
                    let mut endpoint = || -> Result<NodeId> {
                        fields
                            .next()
                            .ok_or_else(|| parse_err("expected two node indices".into()))?
                            .parse()
                            .map_err(|e| parse_err(format!("bad node index: {e}")))
                    };
                    let u = endpoint()?;
                    let w = endpoint()?;
                    if fields.next().is_some() {
                        return Err(parse_err("trailing fields after edge".into()));
                    }
                    g.add_edge(u, w).map_err(|e| parse_err(e.to_string()))?;
                }
            }
        }
        graph.ok_or(Error::Parse {
            line: 0,
            message: "missing `N <node-count>` header".into(),
        })
    }
}

/// Degree counts `n(k)` over the nodes of one graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHistogram {
    counts: BTreeMap<u64, u64>,
    total: u64,
}

impl DegreeHistogram {
    pub fn from_degrees<I: IntoIterator<Item = u64>>(degrees: I) -> Self {
        let mut hist = Self::default();
        for k in degrees {
            *hist.counts.entry(k).or_insert(0) += 1;
            hist.total += 1;
        }
        hist
    }

    /// Builds a histogram from `(k, n(k))` pairs; zero counts are dropped.
    pub fn from_counts<I: IntoIterator<Item = (u64, u64)>>(counts: I) -> Self {
        let mut hist = Self::default();
        for (k, n) in counts {
            if n > 0 {
                *hist.counts.entry(k).or_insert(0) += n;
                hist.total += n;
            }
        }
        hist
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, k: u64) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// Fraction of nodes with degree `k`; zero for an empty histogram.
    pub fn p(&self, k: u64) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.count(k) as f64 / self.total as f64
        }
    }

    /// Non-zero `(k, n(k))` pairs in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&k, &n)| (k, n))
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }

    pub fn mean_degree(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        let sum: u64 = self.iter().map(|(k, n)| k * n).sum();
        sum as f64 / self.total as f64
    }
}
