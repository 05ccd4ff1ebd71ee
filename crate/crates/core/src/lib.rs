//! Poisson-growth preferential attachment networks.
//!
//! * [`generate`]: PG, Barabási–Albert and binomial-variant generators.
//! * [`theory`]: stationary p(0), the power-law exponent, and the
//!   mean-field evolution of the expected degree distribution.
//! * [`estimate`]: ML exponent fits and replicate aggregation.
//! * [`infer`]: exact network likelihood and MCMC over parameters, arrival
//!   order and (optionally) the network itself.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod estimate;
pub mod generate;
pub mod graph;
pub mod infer;
pub mod params;
pub mod rng;
pub mod sampler;
pub mod theory;

pub use error::{Error, Result};
pub use estimate::{average_distribution, empirical_variance, estimate_gamma_ml, FitResult};
pub use generate::{
    attachment_weights, generate_ba, generate_pg, generate_pg_binomial, pg_step, GrowthStep,
};
pub use graph::{DegreeHistogram, MultiGraph, NodeId};
pub use infer::{log_prob_network, mcmc_graph, mcmc_theta, replay, McmcConfig, Permutation};
pub use params::ModelParams;
pub use rng::{RngSpec, SimRng};
pub use theory::{
    evolve_master_equation, predicted_gamma, solve_p0, tail_ratio, ExpectedDistribution,
    TheoryPrediction,
};
