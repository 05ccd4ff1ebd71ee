//! Closed-form and numerical predictions for the degree distribution.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DegreeHistogram;
use crate::params::ModelParams;

/// Below this `|b - a|` the p(0) equation is treated as linear.
const LINEAR_CUTOFF: f64 = 1e-9;

/// Poisson kernel terms smaller than this are dropped.
const KERNEL_EPS: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoryPrediction {
    pub p0: f64,
    pub gamma: f64,
    pub mean_degree: f64,
}

pub fn predict(params: &ModelParams) -> Result<TheoryPrediction> {
    Ok(TheoryPrediction {
        p0: solve_p0(params)?,
        gamma: predicted_gamma(params)?,
        mean_degree: 2.0 * params.lambda,
    })
}

/// Coefficients `(A, B, C)` of `A x^2 + B x + C = 0` whose root in `(0, 1)` is
/// the stationary fraction of degree-zero nodes.
pub fn p0_quadratic(params: &ModelParams) -> (f64, f64, f64) {
    let ModelParams { a, b, lambda } = *params;
    let e = (-lambda).exp();
    let diff = b - a;
    (
        diff,
        2.0 * lambda + a + lambda * b - diff * e,
        -(2.0 * lambda + a) * e,
    )
}

/// Drift `f(x)` of the degree-zero fraction; its zero is p(0).
pub fn p0_drift(params: &ModelParams, x: f64) -> f64 {
    let ModelParams { a, b, lambda } = *params;
    -x * (1.0 + lambda * b / (2.0 * lambda + a + (b - a) * x)) + (-lambda).exp()
}

fn p0_drift_slope(params: &ModelParams, x: f64) -> f64 {
    let ModelParams { a, b, lambda } = *params;
    let denom = 2.0 * lambda + a + (b - a) * x;
    -(1.0 + lambda * b * (2.0 * lambda + a) / (denom * denom))
}

/// Stable stationary fraction of degree-zero nodes.
pub fn solve_p0(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    let (qa, qb, qc) = p0_quadratic(params);
    let root = if qa.abs() < LINEAR_CUTOFF {
        -qc / qb
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            return Err(Error::Numeric(format!(
                "p(0) equation has no real root for {params}"
            )));
        }
        let sq = disc.sqrt();
        if qb >= 0.0 {
            // (-B + sqrt(D)) / 2A rewritten without the cancellation
            -2.0 * qc / (sq + qb)
        } else {
            (sq - qb) / (2.0 * qa)
        }
    };
    if !(root > 0.0 && root < 1.0) {
        return Err(Error::Numeric(format!(
            "p(0) root {root} outside (0, 1) for {params}"
        )));
    }
    let ModelParams { a, b, lambda } = *params;
    if 2.0 * lambda + a + (b - a) * root <= 0.0 {
        return Err(Error::Numeric(format!(
            "non-positive mean attachment weight at p(0) = {root} for {params}"
        )));
    }
    let slope = p0_drift_slope(params, root);
    if !(slope < 0.0) {
        return Err(Error::Numeric(format!(
            "p(0) = {root} is not a stable fixed point (slope {slope})"
        )));
    }
    Ok(root)
}

/// Power-law exponent of the stationary degree distribution.
pub fn predicted_gamma(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    let ModelParams { a, b, lambda } = *params;
    if a == b {
        return Ok(3.0 + a / lambda);
    }
    let p0 = solve_p0(params)?;
    Ok(3.0 + (a + (b - a) * p0) / lambda)
}

/// Asymptotic ratio `p(k) / p(k - 1)`.
pub fn tail_ratio(params: &ModelParams, k: u64) -> Result<f64> {
    let shifted = k as f64 + params.a - 1.0;
    if !(shifted > 0.0) {
        return Err(Error::Domain(format!(
            "tail ratio needs k + a - 1 > 0 (k = {k}, a = {})",
            params.a
        )));
    }
    let gamma = predicted_gamma(params)?;
    Ok(shifted / (shifted + gamma))
}

/// Expected degree distribution `E p_t(k)` for `k = 0..=k_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectedDistribution {
    pub values: Vec<f64>,
    pub t: u64,
}

impl ExpectedDistribution {
    /// Total retained probability mass.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(k, p)| k as f64 * p)
            .sum()
    }

    pub fn p(&self, k: usize) -> f64 {
        self.values.get(k).copied().unwrap_or(0.0)
    }

    /// Writes `k,p_k` rows after a comment line describing the source.
    pub fn write_csv<W: Write>(
        &self,
        params: Option<&ModelParams>,
        mut out: W,
    ) -> std::io::Result<()> {
        match params {
            Some(p) => writeln!(
                out,
                "# a={},b={},lambda={},t={}",
                p.a, p.b, p.lambda, self.t
            )?,
            None => writeln!(out, "# t={}", self.t)?,
        }
        writeln!(out, "k,p_k")?;
        for (k, p) in self.values.iter().enumerate() {
            writeln!(out, "{k},{p:e}")?;
        }
        out.flush()
    }
}

/// Iterates the mean-field recursion for the expected degree counts from the
/// seed histogram up to `t_final` nodes.
///
/// Each step moves mass from degree `j` to `j + s` with a Poisson(`lambda
/// q(j)`) kernel, where `q(j) = r(j) / (t (2 lambda + a + (b - a) p_t(0)))`,
/// and adds the newcomer with Poisson(`lambda`) degree. Mass pushed beyond
/// `k_max` is dropped.
pub fn evolve_master_equation(
    params: &ModelParams,
    seed: &DegreeHistogram,
    t_final: u64,
    k_max: usize,
) -> Result<ExpectedDistribution> {
    params.validate()?;
    let t0 = seed.total();
    if t0 == 0 {
        return Err(Error::EmptyInput("seed histogram has no nodes"));
    }
    if t_final < t0 {
        return Err(Error::TargetTooSmall {
            n_final: t_final as usize,
            seed_nodes: t0 as usize,
        });
    }
    if seed.max_degree().unwrap_or(0) as usize > k_max {
        return Err(Error::Domain(format!(
            "k_max = {k_max} is below the seed's maximum degree"
        )));
    }
    let ModelParams { a, b, lambda } = *params;

    let mut counts = vec![0.0; k_max + 1];
    for (k, n) in seed.iter() {
        counts[k as usize] = n as f64;
    }
    let newcomer: Vec<f64> = {
        let mut v = Vec::with_capacity(k_max + 1);
        let mut term = (-lambda).exp();
        for k in 0..=k_max {
            if k > 0 {
                term *= lambda / k as f64;
            }
            v.push(term);
        }
        v
    };
    let mut next = vec![0.0; k_max + 1];

    let mut t = t0;
    while t < t_final {
        let tf = t as f64;
        let p0 = counts[0] / tf;
        let denom = tf * (2.0 * lambda + a + (b - a) * p0);
        if !(denom > 0.0) {
            return Err(Error::Numeric(format!(
                "non-positive attachment normalizer {denom} at t = {t}"
            )));
        }
        next.copy_from_slice(&newcomer);
        for (j, &mass) in counts.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            let mu = lambda * params.weight(j as u64) / denom;
            let mut term = (-mu).exp();
            next[j] += mass * term;
            let mut s = 0usize;
            while j + s < k_max {
                s += 1;
                term *= mu / s as f64;
                if term < KERNEL_EPS && s as f64 > mu {
                    break;
                }
                next[j + s] += mass * term;
            }
        }
        std::mem::swap(&mut counts, &mut next);
        t += 1;
        if counts.iter().any(|c| !c.is_finite()) {
            return Err(Error::Numeric(format!(
                "non-finite expected count at t = {t}"
            )));
        }
    }
    let tf = t as f64;
    Ok(ExpectedDistribution {
        values: counts.into_iter().map(|c| c / tf).collect(),
        t,
    })
}
