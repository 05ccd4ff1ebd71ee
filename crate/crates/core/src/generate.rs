//! Network generators: Poisson growth (PG), the Barabási–Albert reduction,
//! and the binomial variant that never creates multi-edges.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, NodeId};
use crate::params::ModelParams;
use crate::rng::RngSpec;
use crate::sampler::{poisson, AttachmentTree};

/// Edges attached by the node added in one growth step.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrowthStep {
    pub m: u64,
    /// `(target, s)` pairs sorted by target, each with `s >= 1`.
    pub targets: Vec<(NodeId, u32)>,
}

impl GrowthStep {
    fn from_draws(mut draws: Vec<NodeId>) -> Self {
        let m = draws.len() as u64;
        draws.sort_unstable();
        let mut targets: Vec<(NodeId, u32)> = Vec::new();
        for t in draws {
            match targets.last_mut() {
                Some((last, s)) if *last == t => *s += 1,
                _ => targets.push((t, 1)),
            }
        }
        GrowthStep { m, targets }
    }
}

/// Attachment weight of every node of `g`.
pub fn attachment_weights(g: &MultiGraph, params: &ModelParams) -> Vec<f64> {
    weights_of_degrees(g.degrees(), params)
}

pub fn weights_of_degrees(degrees: &[u64], params: &ModelParams) -> Vec<f64> {
    degrees.iter().map(|&k| params.weight(k)).collect()
}

/// Incremental grower keeping the attachment tree in sync with the graph.
struct Grower {
    graph: MultiGraph,
    tree: AttachmentTree,
}

impl Grower {
    fn new(graph: MultiGraph, params: &ModelParams) -> Self {
        let tree = AttachmentTree::from_degrees(params, graph.degrees());
        Grower { graph, tree }
    }

    /// `m` independent draws with replacement.
    fn draw_with_replacement<R: Rng + ?Sized>(&self, m: u64, rng: &mut R) -> GrowthStep {
        let draws = (0..m)
            .map(|_| self.tree.sample(rng).expect("non-empty graph"))
            .collect();
        GrowthStep::from_draws(draws)
    }

    /// `m` distinct targets by sequential weighted draws with renormalization.
    fn draw_without_replacement<R: Rng + ?Sized>(
        &mut self,
        m: u64,
        rng: &mut R,
    ) -> Result<GrowthStep> {
        let available = self.tree.len();
        if m as usize > available {
            return Err(Error::TooFewTargets {
                m: m as usize,
                available,
            });
        }
        let mut picked = Vec::with_capacity(m as usize);
        for _ in 0..m {
            let idx = self.tree.sample(rng).expect("active nodes remain");
            self.tree.deactivate(idx);
            picked.push(idx);
        }
        for &idx in &picked {
            self.tree.activate(idx);
        }
        Ok(GrowthStep::from_draws(picked))
    }

    fn apply(&mut self, step: &GrowthStep) {
        let new = self.graph.add_node();
        for &(target, s) in &step.targets {
            self.graph
                .add_edges(new, target, s)
                .expect("targets are existing nodes");
            self.tree.set_degree(target, self.graph.degree(target));
        }
        self.tree.push(self.graph.degree(new));
    }
}

fn check_target(seed: &MultiGraph, n_final: usize) -> Result<()> {
    if seed.node_count() == 0 {
        return Err(Error::EmptyInput("seed network has no nodes"));
    }
    if n_final < seed.node_count() {
        return Err(Error::TargetTooSmall {
            n_final,
            seed_nodes: seed.node_count(),
        });
    }
    Ok(())
}

/// Attaches a new node to `g` with exactly `m` edges drawn independently by
/// preferential attachment.
pub fn attach_node<R: Rng + ?Sized>(
    g: &mut MultiGraph,
    params: &ModelParams,
    m: u64,
    rng: &mut R,
) -> Result<GrowthStep> {
    if g.node_count() == 0 {
        return Err(Error::EmptyInput("cannot attach to an empty graph"));
    }
    params.validate()?;
    let mut grower = Grower::new(std::mem::take(g), params);
    let step = grower.draw_with_replacement(m, rng);
    grower.apply(&step);
    *g = grower.graph;
    Ok(step)
}

/// One PG step: a new node with `m ~ Poisson(lambda)` edges.
///
/// This rebuilds the attachment tree from `g`; use [`generate_pg`] for long
/// runs.
pub fn pg_step<R: Rng + ?Sized>(
    g: &mut MultiGraph,
    params: &ModelParams,
    rng: &mut R,
) -> Result<GrowthStep> {
    params.validate()?;
    if g.node_count() == 0 {
        return Err(Error::EmptyInput("cannot attach to an empty graph"));
    }
    let m = poisson(params.lambda, rng);
    attach_node(g, params, m, rng)
}

/// Grows `seed` to `n_final` nodes under Poisson growth.
pub fn generate_pg(
    seed: &MultiGraph,
    params: &ModelParams,
    n_final: usize,
    rng: RngSpec,
) -> Result<MultiGraph> {
    params.validate()?;
    check_target(seed, n_final)?;
    let mut rng = rng.rng();
    let mut grower = Grower::new(seed.clone(), params);
    while grower.graph.node_count() < n_final {
        let m = poisson(params.lambda, &mut rng);
        let step = grower.draw_with_replacement(m, &mut rng);
        grower.apply(&step);
    }
    Ok(grower.graph)
}

/// Barabási–Albert growth: every new node links to exactly `m` distinct
/// existing nodes chosen with probability proportional to degree.
///
/// The seed is expected to be connected; this is not checked.
pub fn generate_ba(seed: &MultiGraph, m: u64, n_final: usize, rng: RngSpec) -> Result<MultiGraph> {
    check_target(seed, n_final)?;
    if m == 0 {
        return Err(Error::InvalidParams("BA growth needs m >= 1".into()));
    }
    if m as usize > seed.node_count() {
        return Err(Error::TooFewTargets {
            m: m as usize,
            available: seed.node_count(),
        });
    }
    let linear = ModelParams {
        a: 0.0,
        b: 0.0,
        lambda: m as f64,
    };
    let mut rng = rng.rng();
    let mut grower = Grower::new(seed.clone(), &linear);
    while grower.graph.node_count() < n_final {
        let step = grower.draw_without_replacement(m, &mut rng)?;
        grower.apply(&step);
    }
    Ok(grower.graph)
}

/// Binomial variant: at a step with `t` existing nodes, `m ~ Binomial(t,
/// lambda / t)` distinct targets are drawn without replacement, so the output
/// has no multi-edges (given a simple seed). Requires `lambda <= t_0`.
pub fn generate_pg_binomial(
    seed: &MultiGraph,
    params: &ModelParams,
    n_final: usize,
    rng: RngSpec,
) -> Result<MultiGraph> {
    params.validate()?;
    check_target(seed, n_final)?;
    let t0 = seed.node_count();
    if params.lambda > t0 as f64 {
        return Err(Error::InvalidParams(format!(
            "binomial growth needs lambda <= seed size ({} > {t0})",
            params.lambda
        )));
    }
    let mut rng = rng.rng();
    let mut grower = Grower::new(seed.clone(), params);
    while grower.graph.node_count() < n_final {
        let t = grower.graph.node_count() as u64;
        let p = params.lambda / t as f64;
        let m = Binomial::new(t, p)
            .map_err(|e| Error::InvalidParams(e.to_string()))?
            .sample(&mut rng);
        let step = grower.draw_without_replacement(m, &mut rng)?;
        grower.apply(&step);
    }
    Ok(grower.graph)
}
