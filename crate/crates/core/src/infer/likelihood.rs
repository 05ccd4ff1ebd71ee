//! Exact probability of a network under Poisson growth from a single-node
//! seed, given the arrival order of its nodes.

use statrs::function::factorial::ln_factorial;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, NodeId};
use crate::infer::permutation::Permutation;
use crate::params::ModelParams;

/// State seen by the node arriving at position `t` (1-based step `t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayStep {
    /// Degree of each earlier arrival, counting only edges among them.
    pub degrees: Vec<u64>,
    /// Edge copies from the new node to each earlier arrival.
    pub s: Vec<u32>,
}

fn check_sigma(g: &MultiGraph, sigma: &Permutation) -> Result<()> {
    if sigma.len() != g.node_count() {
        return Err(Error::NotBijective(format!(
            "arrival order covers {} nodes, graph has {}",
            sigma.len(),
            g.node_count()
        )));
    }
    Ok(())
}

/// Reconstructs `k_{i,t}` and `s_{i,t}` for every step `t = 1..N-1`.
///
/// Dense `O(N^2)` output; meant for inspection and small graphs. Likelihood
/// evaluation goes through [`Trace`].
pub fn replay(g: &MultiGraph, sigma: &Permutation) -> Result<Vec<ReplayStep>> {
    check_sigma(g, sigma)?;
    let n = g.node_count();
    let mut incoming: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for (u, w, m) in g.edges() {
        let (pu, pw) = (sigma.position_of(u), sigma.position_of(w));
        let (early, late) = if pu < pw { (pu, pw) } else { (pw, pu) };
        incoming[late].push((early, m));
    }
    let mut degrees = vec![0u64; n];
    let mut steps = Vec::with_capacity(n.saturating_sub(1));
    for (t, links) in incoming.iter().enumerate().skip(1) {
        let mut s = vec![0u32; t];
        for &(early, m) in links {
            s[early] += m;
        }
        steps.push(ReplayStep {
            degrees: degrees[..t].to_vec(),
            s: s.clone(),
        });
        for (i, &si) in s.iter().enumerate() {
            degrees[i] += u64::from(si);
            degrees[t] += u64::from(si);
        }
    }
    Ok(steps)
}

/// Per-label neighbor lists with multiplicities.
#[derive(Clone, Debug)]
pub struct Adjacency {
    neighbors: Vec<Vec<(NodeId, u32)>>,
}

impl Adjacency {
    pub fn new(g: &MultiGraph) -> Self {
        let mut neighbors = vec![Vec::new(); g.node_count()];
        for (u, w, m) in g.edges() {
            neighbors[u].push((w, m));
            neighbors[w].push((u, m));
        }
        Adjacency { neighbors }
    }

    pub fn node_count(&self) -> usize {
        self.neighbors.len()
    }
}

#[derive(Clone, Copy, Debug)]
struct StepAgg {
    degree_sum: u64,
    positive: u64,
    zero: u64,
    end: usize,
}

/// Sparse replay: per-step weight aggregates plus the `(k, s)` pairs of the
/// attached targets. Evaluating the likelihood for new parameters is
/// `O(N + E)` with no allocation.
#[derive(Clone, Debug)]
pub struct Trace {
    steps: Vec<StepAgg>,
    targets: Vec<(u64, u32)>,
}

impl Trace {
    pub fn new(adj: &Adjacency, sigma: &Permutation) -> Result<Self> {
        let n = adj.node_count();
        if sigma.len() != n {
            return Err(Error::NotBijective(format!(
                "arrival order covers {} nodes, graph has {n}",
                sigma.len()
            )));
        }
        let mut degree = vec![0u64; n];
        let mut steps = Vec::with_capacity(n.saturating_sub(1));
        let mut targets = Vec::new();
        let (mut degree_sum, mut positive, mut zero) = (0u64, 0u64, u64::from(n > 0));
        for t in 1..n {
            let label = sigma.label_at(t);
            let start = targets.len();
            for &(nb, m) in &adj.neighbors[label] {
                let p = sigma.position_of(nb);
                if p < t {
                    targets.push((p as u64, m));
                }
            }
            steps.push(StepAgg {
                degree_sum,
                positive,
                zero,
                end: targets.len(),
            });
            let mut added = 0u64;
            for entry in &mut targets[start..] {
                let p = entry.0 as usize;
                let m = u64::from(entry.1);
                // store the pre-step degree in place of the position
                entry.0 = degree[p];
                if degree[p] == 0 {
                    zero -= 1;
                    positive += 1;
                }
                degree[p] += m;
                added += m;
            }
            degree[t] = added;
            degree_sum += 2 * added;
            if added == 0 {
                zero += 1;
            } else {
                positive += 1;
            }
        }
        Ok(Trace { steps, targets })
    }

    pub fn from_graph(g: &MultiGraph, sigma: &Permutation) -> Result<Self> {
        Self::new(&Adjacency::new(g), sigma)
    }

    /// `log P(G | params, sigma)`; `-inf` when an edge lands on a node with
    /// zero attachment weight.
    pub fn log_prob(&self, params: &ModelParams) -> f64 {
        let ModelParams { a, b, lambda } = *params;
        let ln_lambda = lambda.ln();
        let mut ll = -lambda * self.steps.len() as f64;
        let mut start = 0;
        for (i, step) in self.steps.iter().enumerate() {
            let t = (i + 1) as f64;
            let total = step.degree_sum as f64 + a * step.positive as f64 + b * step.zero as f64;
            for &(k, s) in &self.targets[start..step.end] {
                let ln_q = if total > 0.0 {
                    let w = params.weight(k);
                    if w <= 0.0 {
                        return f64::NEG_INFINITY;
                    }
                    w.ln() - total.ln()
                } else {
                    // every candidate weighs zero: uniform choice
                    -t.ln()
                };
                ll += f64::from(s) * (ln_lambda + ln_q) - ln_factorial(u64::from(s));
            }
            start = step.end;
        }
        ll
    }
}

pub fn log_prob_network(g: &MultiGraph, params: &ModelParams, sigma: &Permutation) -> Result<f64> {
    params.validate()?;
    Ok(Trace::from_graph(g, sigma)?.log_prob(params))
}
