//! Posterior sampling of an unknown network, using Poisson growth as the
//! prior and a caller-supplied data likelihood.

use std::fmt::Display;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::infer::likelihood::Trace;
use crate::infer::mcmc::{
    accept, default_init, theta_sweep, AcceptanceStats, McmcConfig, ThetaCoords,
};
use crate::infer::permutation::Permutation;
use crate::params::ModelParams;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphChainConfig {
    pub mcmc: McmcConfig,
    /// Single edge-copy insertions/deletions proposed per iteration.
    pub graph_moves_per_iter: usize,
}

impl Default for GraphChainConfig {
    fn default() -> Self {
        GraphChainConfig {
            mcmc: McmcConfig::default(),
            graph_moves_per_iter: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphSample {
    pub iter: usize,
    pub graph: MultiGraph,
    pub params: ModelParams,
    pub sigma: Permutation,
    pub log_post: f64,
}

/// Borrowed view of the chain state handed to [`mcmc_graph_visit`].
#[derive(Clone, Copy, Debug)]
pub struct GraphState<'a> {
    pub iter: usize,
    pub graph: &'a MultiGraph,
    pub params: ModelParams,
    pub sigma: &'a Permutation,
    pub log_post: f64,
}

impl GraphState<'_> {
    pub fn to_sample(&self) -> GraphSample {
        GraphSample {
            iter: self.iter,
            graph: self.graph.clone(),
            params: self.params,
            sigma: self.sigma.clone(),
            log_post: self.log_post,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphChain {
    pub samples: Vec<GraphSample>,
    pub acceptance: AcceptanceStats,
}

struct DataTerm<F> {
    f: F,
}

impl<F, E> DataTerm<F>
where
    F: FnMut(&MultiGraph) -> std::result::Result<f64, E>,
    E: Display,
{
    fn eval(&mut self, g: &MultiGraph, iter: usize) -> Result<f64> {
        let v = (self.f)(g).map_err(|e| Error::DataLikelihood {
            iter,
            message: e.to_string(),
        })?;
        if v.is_nan() || v == f64::INFINITY {
            return Err(Error::DataLikelihood {
                iter,
                message: format!("returned {v}"),
            });
        }
        Ok(v)
    }
}

/// Starts from `n_nodes` isolated nodes.
pub fn mcmc_graph<F, E>(
    data_loglik: F,
    n_nodes: usize,
    config: &GraphChainConfig,
) -> Result<GraphChain>
where
    F: FnMut(&MultiGraph) -> std::result::Result<f64, E>,
    E: Display,
{
    mcmc_graph_from(data_loglik, MultiGraph::with_nodes(n_nodes), config)
}

/// Chain over `(G, theta, sigma)` targeting
/// `P(D | G) P(G | theta, sigma) pi(theta)`.
pub fn mcmc_graph_from<F, E>(
    data_loglik: F,
    initial: MultiGraph,
    config: &GraphChainConfig,
) -> Result<GraphChain>
where
    F: FnMut(&MultiGraph) -> std::result::Result<f64, E>,
    E: Display,
{
    let mut samples = Vec::with_capacity(config.mcmc.recorded_samples());
    let acceptance = mcmc_graph_visit(data_loglik, initial, config, |s| {
        samples.push(s.to_sample())
    })?;
    Ok(GraphChain {
        samples,
        acceptance,
    })
}

/// Same chain as [`mcmc_graph_from`], but hands each retained state to
/// `visit` instead of storing it.
pub fn mcmc_graph_visit<F, E, V>(
    data_loglik: F,
    initial: MultiGraph,
    config: &GraphChainConfig,
    mut visit: V,
) -> Result<AcceptanceStats>
where
    F: FnMut(&MultiGraph) -> std::result::Result<f64, E>,
    E: Display,
    V: FnMut(GraphState<'_>),
{
    let cfg = &config.mcmc;
    cfg.validate()?;
    let n = initial.node_count();
    if n == 0 {
        return Err(Error::EmptyInput("network has no nodes"));
    }
    let mut data = DataTerm { f: data_loglik };
    let mut rng = cfg.rng.rng();

    let mut graph = initial;
    let mut sigma = cfg
        .init_sigma
        .clone()
        .unwrap_or_else(|| Permutation::by_descending_degree(&graph));
    let init = cfg.init.unwrap_or_else(|| default_init(&graph));
    init.validate()?;
    let mut coords = ThetaCoords::from_params(&init, cfg.lock_ab)?;
    let mut params = coords.params();

    let mut data_ll = data.eval(&graph, 0)?;
    let mut trace = Trace::from_graph(&graph, &sigma)?;
    let mut net_ll = trace.log_prob(&params);
    let log_prior = |p: &ModelParams| cfg.prior.log_density(p, cfg.lock_ab);
    if !(data_ll + net_ll + log_prior(&params)).is_finite() {
        return Err(Error::ImpossibleInitialState);
    }

    let n_pairs = n * (n - 1) / 2;
    let mut stats = AcceptanceStats::default();
    for iter in 0..cfg.n_iter {
        if n_pairs > 0 {
            for _ in 0..config.graph_moves_per_iter {
                let u = rng.random_range(0..n);
                let mut w = rng.random_range(0..n - 1);
                if w >= u {
                    w += 1;
                }
                let insert = rng.random_bool(0.5);
                let mut cand = graph.clone();
                let valid = if insert {
                    cand.add_edge(u, w)?;
                    true
                } else {
                    cand.remove_edge(u, w)?
                };
                if !valid {
                    stats.graph.record(false);
                    continue;
                }
                let cand_trace = Trace::from_graph(&cand, &sigma)?;
                let cand_net = cand_trace.log_prob(&params);
                let cand_data = if cand_net == f64::NEG_INFINITY {
                    f64::NEG_INFINITY
                } else {
                    data.eval(&cand, iter)?
                };
                let ok = accept(cand_data + cand_net - data_ll - net_ll, &mut rng);
                stats.graph.record(ok);
                if ok {
                    graph = cand;
                    trace = cand_trace;
                    data_ll = cand_data;
                    net_ll = cand_net;
                }
            }
        }

        let mut log_target = net_ll + log_prior(&params) + coords.log_jacobian();
        theta_sweep(
            &mut coords,
            &mut log_target,
            cfg,
            &mut stats.theta,
            &mut rng,
            |p| trace.log_prob(p),
        );
        params = coords.params();
        net_ll = trace.log_prob(&params);

        if n >= 2 {
            for _ in 0..cfg.swap_moves_per_iter {
                let i = rng.random_range(0..n);
                let mut j = rng.random_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                sigma.swap_positions(i, j);
                let cand_trace = Trace::from_graph(&graph, &sigma)?;
                let cand_ll = cand_trace.log_prob(&params);
                let ok = accept(cand_ll - net_ll, &mut rng);
                stats.sigma.record(ok);
                if ok {
                    net_ll = cand_ll;
                    trace = cand_trace;
                } else {
                    sigma.swap_positions(i, j);
                }
            }
        }

        if cfg.records(iter) {
            visit(GraphState {
                iter,
                graph: &graph,
                params,
                sigma: &sigma,
                log_post: data_ll + net_ll + log_prior(&params),
            });
        }
    }
    Ok(stats)
}
