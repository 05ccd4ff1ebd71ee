//! Exact network likelihood and MCMC posterior sampling.

pub mod graph_chain;
pub mod likelihood;
pub mod mcmc;
pub mod permutation;

pub use graph_chain::{
    mcmc_graph, mcmc_graph_from, mcmc_graph_visit, GraphChain, GraphChainConfig, GraphSample,
    GraphState,
};
pub use likelihood::{log_prob_network, replay, Adjacency, ReplayStep, Trace};
pub use mcmc::{
    density_histogram, mcmc_theta, AcceptanceStats, ChainSample, ChainSummary, McmcChain,
    McmcConfig, Moments, MoveStats, PriorSpec, StepSizes,
};
pub use permutation::Permutation;
