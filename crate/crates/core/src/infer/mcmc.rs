//! Metropolis–Hastings over model parameters and arrival order.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::infer::likelihood::{Adjacency, Trace};
use crate::infer::permutation::Permutation;
use crate::params::ModelParams;
use crate::rng::{RngSpec, SimRng};

/// Independent exponential priors, given by their means: `lambda`, `b`, and
/// the shifted offset `1 + a`. With `a = b` locked, the common value uses
/// `b_mean`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PriorSpec {
    pub lambda_mean: f64,
    pub b_mean: f64,
    pub a_shift_mean: f64,
}

impl Default for PriorSpec {
    fn default() -> Self {
        PriorSpec {
            lambda_mean: 1.0,
            b_mean: 1.0,
            a_shift_mean: 1.0,
        }
    }
}

fn ln_exponential(x: f64, mean: f64) -> f64 {
    if x < 0.0 {
        f64::NEG_INFINITY
    } else {
        -mean.ln() - x / mean
    }
}

impl PriorSpec {
    pub fn log_density(&self, p: &ModelParams, lock_ab: bool) -> f64 {
        let lambda = ln_exponential(p.lambda, self.lambda_mean);
        if lock_ab {
            lambda + ln_exponential(p.a, self.b_mean)
        } else {
            lambda + ln_exponential(p.b, self.b_mean) + ln_exponential(1.0 + p.a, self.a_shift_mean)
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("lambda_mean", self.lambda_mean),
            ("b_mean", self.b_mean),
            ("a_shift_mean", self.a_shift_mean),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!("prior {name} must be > 0")));
            }
        }
        Ok(())
    }
}

/// Random-walk scales on the log-transformed parameters. When `a = b` is
/// locked, `a` is the scale of the common value and `b` is unused.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepSizes {
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
}

impl Default for StepSizes {
    fn default() -> Self {
        StepSizes {
            a: 0.3,
            b: 0.3,
            lambda: 0.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McmcConfig {
    pub n_iter: usize,
    pub burn_in: usize,
    /// Keep every `thin`-th post-burn-in iteration.
    pub thin: usize,
    pub theta_step: StepSizes,
    pub swap_moves_per_iter: usize,
    pub prior: PriorSpec,
    pub lock_ab: bool,
    /// Starting parameters; defaults to `a = b = 0.5` and `lambda` at the
    /// observed edges per added node.
    pub init: Option<ModelParams>,
    /// Starting arrival order; defaults to descending degree.
    pub init_sigma: Option<Permutation>,
    /// Attach the arrival order to every `sigma_every`-th recorded sample
    /// (0 = never).
    pub sigma_every: usize,
    pub rng: RngSpec,
}

impl Default for McmcConfig {
    fn default() -> Self {
        McmcConfig {
            n_iter: 20_000,
            burn_in: 2_000,
            thin: 1,
            theta_step: StepSizes::default(),
            swap_moves_per_iter: 10,
            prior: PriorSpec::default(),
            lock_ab: false,
            init: None,
            init_sigma: None,
            sigma_every: 0,
            rng: RngSpec::new(0, 0),
        }
    }
}

impl McmcConfig {
    pub fn validate(&self) -> Result<()> {
        if self.burn_in > self.n_iter {
            return Err(Error::InvalidConfig(format!(
                "burn-in {} exceeds iteration count {}",
                self.burn_in, self.n_iter
            )));
        }
        if self.thin == 0 {
            return Err(Error::InvalidConfig("thin must be >= 1".into()));
        }
        let s = self.theta_step;
        if [s.a, s.b, s.lambda]
            .iter()
            .any(|v| !(v.is_finite() && *v >= 0.0))
        {
            return Err(Error::InvalidConfig(
                "step sizes must be finite and >= 0".into(),
            ));
        }
        self.prior.validate()
    }

    /// Number of samples a run of this configuration records.
    pub fn recorded_samples(&self) -> usize {
        (self.n_iter - self.burn_in) / self.thin
    }

    pub(crate) fn records(&self, iter: usize) -> bool {
        iter >= self.burn_in && (iter - self.burn_in + 1).is_multiple_of(self.thin)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainSample {
    pub iter: usize,
    pub params: ModelParams,
    pub log_post: f64,
    pub sigma: Option<Permutation>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MoveStats {
    pub proposed: u64,
    pub accepted: u64,
}

impl MoveStats {
    pub fn rate(&self) -> f64 {
        if self.proposed == 0 {
            f64::NAN
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }

    pub(crate) fn record(&mut self, accepted: bool) {
        self.proposed += 1;
        self.accepted += u64::from(accepted);
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceStats {
    pub theta: MoveStats,
    pub sigma: MoveStats,
    pub graph: MoveStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McmcChain {
    pub samples: Vec<ChainSample>,
    pub acceptance: AcceptanceStats,
}

/// Posterior mean and standard deviation of one parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    pub sd: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainSummary {
    pub n: usize,
    pub a: Option<Moments>,
    pub b: Option<Moments>,
    pub lambda: Option<Moments>,
    pub acceptance_theta: Option<f64>,
    pub acceptance_sigma: Option<f64>,
}

fn moments(xs: impl Iterator<Item = f64>) -> Option<Moments> {
    let xs: Vec<f64> = xs.collect();
    if xs.is_empty() {
        return None;
    }
    let (mean, sd) = crate::estimate::mean_sd(&xs);
    Some(Moments { mean, sd })
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl McmcChain {
    pub fn values(&self, f: impl Fn(&ModelParams) -> f64) -> Vec<f64> {
        self.samples.iter().map(|s| f(&s.params)).collect()
    }

    pub fn summary(&self) -> ChainSummary {
        ChainSummary {
            n: self.samples.len(),
            a: moments(self.samples.iter().map(|s| s.params.a)),
            b: moments(self.samples.iter().map(|s| s.params.b)),
            lambda: moments(self.samples.iter().map(|s| s.params.lambda)),
            acceptance_theta: finite(self.acceptance.theta.rate()),
            acceptance_sigma: finite(self.acceptance.sigma.rate()),
        }
    }
}

/// Normalized histogram: `(left edge, width, density)` per bin, with the
/// densities integrating to one.
pub fn density_histogram(values: &[f64], bins: usize) -> Vec<(f64, f64, f64)> {
    if values.is_empty() || bins == 0 {
        return Vec::new();
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = if hi > lo {
        (hi - lo) / bins as f64
    } else {
        1.0
    };
    let mut counts = vec![0usize; bins];
    for &v in values {
        let idx = (((v - lo) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let n = values.len() as f64;
    counts
        .into_iter()
        .enumerate()
        .map(|(i, c)| (lo + i as f64 * width, width, c as f64 / (n * width)))
        .collect()
}

/// Unconstrained coordinates for the parameter random walk: `ln(1 + a)`,
/// `ln b`, `ln lambda` (or `ln a`, `ln lambda` with `a = b` locked).
#[derive(Clone, Copy, Debug)]
pub(crate) struct ThetaCoords {
    lock_ab: bool,
    u: [f64; 3],
}

impl ThetaCoords {
    pub(crate) fn from_params(p: &ModelParams, lock_ab: bool) -> Result<Self> {
        if lock_ab {
            if p.a != p.b || !(p.a > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "locked a = b needs a starting value a = b > 0, got {p}"
                )));
            }
            Ok(ThetaCoords {
                lock_ab,
                u: [p.a.ln(), 0.0, p.lambda.ln()],
            })
        } else {
            if !(p.a > -1.0 && p.b > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "starting parameters must lie inside a > -1, b > 0, got {p}"
                )));
            }
            Ok(ThetaCoords {
                lock_ab,
                u: [(1.0 + p.a).ln(), p.b.ln(), p.lambda.ln()],
            })
        }
    }

    pub(crate) fn params(&self) -> ModelParams {
        let lambda = self.u[2].exp();
        if self.lock_ab {
            let c = self.u[0].exp();
            ModelParams { a: c, b: c, lambda }
        } else {
            ModelParams {
                a: self.u[0].exp() - 1.0,
                b: self.u[1].exp(),
                lambda,
            }
        }
    }

    /// Log-Jacobian of the map from coordinates to parameters.
    pub(crate) fn log_jacobian(&self) -> f64 {
        if self.lock_ab {
            self.u[0] + self.u[2]
        } else {
            self.u.iter().sum()
        }
    }

    pub(crate) fn active(&self) -> &'static [usize] {
        if self.lock_ab {
            &[0, 2]
        } else {
            &[0, 1, 2]
        }
    }

    pub(crate) fn perturbed(&self, idx: usize, delta: f64) -> Self {
        let mut next = *self;
        next.u[idx] += delta;
        next
    }
}

pub(crate) fn step_for(steps: &StepSizes, idx: usize) -> f64 {
    match idx {
        0 => steps.a,
        1 => steps.b,
        _ => steps.lambda,
    }
}

pub(crate) fn accept<R: Rng + ?Sized>(log_ratio: f64, rng: &mut R) -> bool {
    if log_ratio.is_nan() {
        return false;
    }
    let u: f64 = rng.random();
    u.ln() < log_ratio
}

pub(crate) fn default_init(g: &MultiGraph) -> ModelParams {
    let steps = g.node_count().saturating_sub(1).max(1);
    let lambda = (g.edge_count() as f64 / steps as f64).max(0.1);
    ModelParams {
        a: 0.5,
        b: 0.5,
        lambda,
    }
}

/// One sweep of random-walk updates over the active parameter coordinates.
/// `loglik` evaluates the network log-likelihood for candidate parameters.
pub(crate) fn theta_sweep<F>(
    coords: &mut ThetaCoords,
    log_target: &mut f64,
    cfg: &McmcConfig,
    stats: &mut MoveStats,
    rng: &mut SimRng,
    mut loglik: F,
) where
    F: FnMut(&ModelParams) -> f64,
{
    for &idx in coords.active() {
        let scale = step_for(&cfg.theta_step, idx);
        let z: f64 = rng.sample(StandardNormal);
        let cand = coords.perturbed(idx, scale * z);
        let p = cand.params();
        let target = if p.validate().is_ok() {
            loglik(&p) + cfg.prior.log_density(&p, cfg.lock_ab) + cand.log_jacobian()
        } else {
            f64::NEG_INFINITY
        };
        let ok = accept(target - *log_target, rng);
        stats.record(ok);
        if ok {
            *coords = cand;
            *log_target = target;
        }
    }
}

/// Posterior sampling of `(theta, sigma)` for an observed network.
pub fn mcmc_theta(g: &MultiGraph, config: &McmcConfig) -> Result<McmcChain> {
    config.validate()?;
    if g.node_count() == 0 {
        return Err(Error::EmptyInput("network has no nodes"));
    }
    let n = g.node_count();
    let adj = Adjacency::new(g);
    let mut rng = config.rng.rng();

    let mut sigma = config
        .init_sigma
        .clone()
        .unwrap_or_else(|| Permutation::by_descending_degree(g));
    let mut trace = Trace::new(&adj, &sigma)?;
    let init = config.init.unwrap_or_else(|| default_init(g));
    init.validate()?;
    let mut coords = ThetaCoords::from_params(&init, config.lock_ab)?;

    let mut params = coords.params();
    let mut loglik = trace.log_prob(&params);
    let mut log_target =
        loglik + config.prior.log_density(&params, config.lock_ab) + coords.log_jacobian();
    if !log_target.is_finite() {
        return Err(Error::ImpossibleInitialState);
    }

    let mut stats = AcceptanceStats::default();
    let mut samples = Vec::with_capacity(config.recorded_samples());
    for iter in 0..config.n_iter {
        theta_sweep(
            &mut coords,
            &mut log_target,
            config,
            &mut stats.theta,
            &mut rng,
            |p| trace.log_prob(p),
        );
        params = coords.params();
        loglik = trace.log_prob(&params);

        if n >= 2 {
            for _ in 0..config.swap_moves_per_iter {
                let i = rng.random_range(0..n);
                let mut j = rng.random_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                sigma.swap_positions(i, j);
                let cand_trace = Trace::new(&adj, &sigma)?;
                let cand_ll = cand_trace.log_prob(&params);
                let ok = accept(cand_ll - loglik, &mut rng);
                stats.sigma.record(ok);
                if ok {
                    log_target += cand_ll - loglik;
                    loglik = cand_ll;
                    trace = cand_trace;
                } else {
                    sigma.swap_positions(i, j);
                }
            }
        }

        if config.records(iter) {
            let k = samples.len();
            let keep_sigma = config.sigma_every > 0 && k % config.sigma_every == 0;
            samples.push(ChainSample {
                iter,
                params,
                log_post: loglik + config.prior.log_density(&params, config.lock_ab),
                sigma: keep_sigma.then(|| sigma.clone()),
            });
        }
    }
    Ok(McmcChain {
        samples,
        acceptance: stats,
    })
}
