use rayon::prelude::*;
use serde::Serialize;

use pgnet::estimate::mean_sd;
use pgnet::{
    average_distribution, estimate_gamma_ml, generate_ba, generate_pg, generate_pg_binomial,
    DegreeHistogram, FitResult, ModelParams, MultiGraph, RngSpec,
};

use crate::args::{ModelKind, ParamArgs, SeedNet};
use crate::config::Config;
use crate::error::{CliError, CliResult};

pub const FULL_NSIM: usize = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct ModelSpec {
    pub kind: ModelKind,
    /// For BA this is the linear model `(0, 0, m)`.
    pub params: ModelParams,
    pub m: u64,
    pub seed_net: SeedNet,
}

pub fn resolve_params(args: &ParamArgs, cfg: &Config) -> CliResult<ModelParams> {
    let a = cfg.pick(args.a, "a")?.unwrap_or(0.0);
    let b = cfg.pick(args.b, "b")?.unwrap_or(a);
    let lambda = cfg.pick(args.lambda, "lambda")?.unwrap_or(1.0);
    Ok(ModelParams::new(a, b, lambda)?)
}

impl ModelSpec {
    pub fn new(
        kind: ModelKind,
        params: ModelParams,
        m: u64,
        seed_net: Option<SeedNet>,
    ) -> CliResult<Self> {
        let params = match kind {
            ModelKind::Ba => {
                if m == 0 {
                    return Err(CliError::Usage("--m must be at least 1".into()));
                }
                ModelParams::new(0.0, 0.0, m as f64)?
            }
            _ => params,
        };
        let mut spec = ModelSpec {
            kind,
            params,
            m,
            seed_net: SeedNet::Pair,
        };
        spec.seed_net = seed_net.unwrap_or(if spec.clique_size() > 2 {
            SeedNet::Clique
        } else {
            SeedNet::Pair
        });
        Ok(spec)
    }

    /// Smallest complete seed that supports `m` distinct targets (BA) or
    /// `lambda <= t0` (binomial variant).
    fn clique_size(&self) -> usize {
        match self.kind {
            ModelKind::Ba => self.m as usize + 1,
            ModelKind::PgBinomial => (self.params.lambda.ceil() as usize).max(2),
            ModelKind::Pg => 2,
        }
    }

    pub fn seed_graph(&self) -> MultiGraph {
        match self.seed_net {
            SeedNet::Pair => MultiGraph::pair(),
            SeedNet::Single => MultiGraph::with_nodes(1),
            SeedNet::Clique => {
                let n = self.clique_size();
                let mut g = MultiGraph::with_nodes(n);
                for u in 0..n {
                    for w in u + 1..n {
                        g.add_edge(u, w).expect("distinct endpoints");
                    }
                }
                g
            }
        }
    }

    pub fn grow(
        &self,
        seed: &MultiGraph,
        n_final: usize,
        rng: RngSpec,
    ) -> pgnet::Result<MultiGraph> {
        match self.kind {
            ModelKind::Pg => generate_pg(seed, &self.params, n_final, rng),
            ModelKind::Ba => generate_ba(seed, self.m, n_final, rng),
            ModelKind::PgBinomial => generate_pg_binomial(seed, &self.params, n_final, rng),
        }
    }
}

pub struct Replicate {
    pub hist: DegreeHistogram,
    pub fit: pgnet::Result<FitResult>,
}

/// Runs `n_sim` replicates in parallel on streams `stream_base + r` and
/// returns them in replicate order. `sink` sees each finished graph.
pub fn run<S>(
    spec: &ModelSpec,
    n_final: usize,
    n_sim: usize,
    k_min: u64,
    master_seed: u64,
    stream_base: u64,
    sink: S,
) -> CliResult<Vec<Replicate>>
where
    S: Fn(usize, &MultiGraph) -> CliResult<()> + Sync,
{
    let seed = spec.seed_graph();
    (0..n_sim)
        .into_par_iter()
        .map(|r| {
            let g = spec.grow(
                &seed,
                n_final,
                RngSpec::new(master_seed, stream_base + r as u64),
            )?;
            sink(r, &g)?;
            let hist = g.degree_histogram();
            let fit = estimate_gamma_ml(&hist, k_min);
            Ok(Replicate { hist, fit })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignSummary {
    pub n_sim: usize,
    pub n_fitted: usize,
    pub mean_degree: f64,
    pub gamma_mean: Option<f64>,
    pub gamma_sd: Option<f64>,
    /// Exponent fitted to the replicate-averaged distribution.
    pub gamma_avg: Option<f64>,
}

pub fn summarize(reps: &[Replicate], k_min: u64) -> CliResult<CampaignSummary> {
    let gammas: Vec<f64> = reps
        .iter()
        .filter_map(|r| r.fit.as_ref().ok().map(|f| f.gamma_hat))
        .collect();
    let (gamma_mean, gamma_sd) = match gammas.len() {
        0 => (None, None),
        1 => (Some(gammas[0]), None),
        _ => {
            let (m, s) = mean_sd(&gammas);
            (Some(m), Some(s))
        }
    };
    let hists: Vec<DegreeHistogram> = reps.iter().map(|r| r.hist.clone()).collect();
    let avg = average_distribution(&hists)?;
    Ok(CampaignSummary {
        n_sim: reps.len(),
        n_fitted: gammas.len(),
        mean_degree: reps.iter().map(|r| r.hist.mean_degree()).sum::<f64>() / reps.len() as f64,
        gamma_mean,
        gamma_sd,
        gamma_avg: avg.fit(k_min).ok().map(|f| f.gamma_hat),
    })
}
