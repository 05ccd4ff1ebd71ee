use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;

use serde::Serialize;

use pgnet::infer::{density_histogram, ChainSummary, PriorSpec, StepSizes};
use pgnet::{mcmc_theta, McmcConfig, MultiGraph, RngSpec};

use super::{create, create_dir, write_json};
use crate::args::FitArgs;
use crate::config::Config;
use crate::error::{CliError, CliResult};

#[derive(Serialize)]
struct ChainLine {
    iter: usize,
    a: f64,
    b: f64,
    lambda: f64,
    log_post: f64,
}

#[derive(Serialize)]
struct SigmaLine<'a> {
    iter: usize,
    sigma: &'a [usize],
}

#[derive(Serialize)]
struct FitSummary {
    nodes: usize,
    edges: u64,
    lock_ab: bool,
    n_iter: usize,
    burn_in: usize,
    thin: usize,
    #[serde(flatten)]
    posterior: ChainSummary,
}

pub fn fit(args: &FitArgs, cfg: &Config) -> CliResult<()> {
    let file = File::open(&args.graph).map_err(|e| CliError::io(&args.graph, e))?;
    let graph = MultiGraph::read_from(BufReader::new(file))
        .map_err(|e| CliError::Io(format!("{}: {e}", args.graph.display())))?;

    let defaults = McmcConfig::default();
    let steps = StepSizes {
        a: cfg
            .pick(args.step_a, "step-a")?
            .unwrap_or(defaults.theta_step.a),
        b: cfg
            .pick(args.step_b, "step-b")?
            .unwrap_or(defaults.theta_step.b),
        lambda: cfg
            .pick(args.step_lambda, "step-lambda")?
            .unwrap_or(defaults.theta_step.lambda),
    };
    let prior = PriorSpec {
        lambda_mean: cfg
            .pick(args.prior_lambda, "prior-lambda")?
            .unwrap_or(defaults.prior.lambda_mean),
        b_mean: cfg
            .pick(args.prior_b, "prior-b")?
            .unwrap_or(defaults.prior.b_mean),
        a_shift_mean: cfg
            .pick(args.prior_a, "prior-a")?
            .unwrap_or(defaults.prior.a_shift_mean),
    };
    let n_iter = cfg.pick(args.iters, "iters")?.unwrap_or(defaults.n_iter);
    let config = McmcConfig {
        n_iter,
        burn_in: cfg
            .pick(args.burnin, "burnin")?
            .unwrap_or(defaults.burn_in.min(n_iter)),
        thin: cfg.pick(args.thin, "thin")?.unwrap_or(1),
        theta_step: steps,
        swap_moves_per_iter: cfg
            .pick(args.swaps, "swaps")?
            .unwrap_or(defaults.swap_moves_per_iter),
        prior,
        lock_ab: cfg.switch(args.lock_ab, "lock-ab")?,
        sigma_every: cfg.pick(args.sigma_every, "sigma-every")?.unwrap_or(0),
        rng: RngSpec::new(cfg.pick(args.seed, "seed")?.unwrap_or(0), 0),
        ..defaults
    };
    let bins = cfg.pick(args.bins, "bins")?.unwrap_or(40);
    let out: PathBuf = cfg
        .pick(args.out.clone(), "out")?
        .unwrap_or_else(|| "pgnet-fit".into());

    let chain = mcmc_theta(&graph, &config)?;
    create_dir(&out)?;

    let path = out.join("chain.jsonl");
    let mut f = create(&path)?;
    let io = |e: std::io::Error| CliError::io(&path, e);
    for s in &chain.samples {
        let line = ChainLine {
            iter: s.iter,
            a: s.params.a,
            b: s.params.b,
            lambda: s.params.lambda,
            log_post: s.log_post,
        };
        serde_json::to_writer(&mut f, &line).map_err(|e| CliError::io(&path, e))?;
        writeln!(f).map_err(io)?;
    }
    f.flush().map_err(io)?;

    if config.sigma_every > 0 {
        let path = out.join("sigma.jsonl");
        let mut f = create(&path)?;
        for s in &chain.samples {
            if let Some(sigma) = &s.sigma {
                let line = SigmaLine {
                    iter: s.iter,
                    sigma: sigma.order(),
                };
                serde_json::to_writer(&mut f, &line).map_err(|e| CliError::io(&path, e))?;
                writeln!(f).map_err(|e| CliError::io(&path, e))?;
            }
        }
        f.flush().map_err(|e| CliError::io(&path, e))?;
    }

    if !chain.samples.is_empty() {
        let path = out.join("posterior_hist.csv");
        let mut f = create(&path)?;
        let io = |e: std::io::Error| CliError::io(&path, e);
        writeln!(f, "param,left,width,density").map_err(io)?;
        let mut marginals = vec![
            ("a", chain.values(|p| p.a)),
            ("lambda", chain.values(|p| p.lambda)),
        ];
        if !config.lock_ab {
            marginals.insert(1, ("b", chain.values(|p| p.b)));
        }
        for (name, values) in marginals {
            for (left, width, density) in density_histogram(&values, bins) {
                writeln!(f, "{name},{left},{width},{density}").map_err(io)?;
            }
        }
        f.flush().map_err(io)?;
    }

    let summary = FitSummary {
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        lock_ab: config.lock_ab,
        n_iter: config.n_iter,
        burn_in: config.burn_in,
        thin: config.thin,
        posterior: chain.summary(),
    };
    write_json(&out.join("summary.json"), &summary)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&summary).expect("plain record")
    );
    Ok(())
}
