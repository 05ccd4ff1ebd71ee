use std::io::Write;
use std::path::PathBuf;

use pgnet::estimate::DEFAULT_K_MIN;
use pgnet::{predicted_gamma, ModelParams};

use super::create;
use crate::args::{ModelKind, SeedNet, Table1Args};
use crate::campaign::{self, ModelSpec, FULL_NSIM};
use crate::config::Config;
use crate::error::{CliError, CliResult};

struct Setting {
    label: &'static str,
    kind: ModelKind,
    theta: (f64, f64, f64),
}

const SETTINGS: [Setting; 5] = [
    Setting {
        label: "BA m=1",
        kind: ModelKind::Ba,
        theta: (0.0, 0.0, 1.0),
    },
    Setting {
        label: "PG (0,0,1)",
        kind: ModelKind::Pg,
        theta: (0.0, 0.0, 1.0),
    },
    Setting {
        label: "PG (-0.9,0.1,1)",
        kind: ModelKind::Pg,
        theta: (-0.9, 0.1, 1.0),
    },
    Setting {
        label: "PG (-0.9,0.1,3)",
        kind: ModelKind::Pg,
        theta: (-0.9, 0.1, 3.0),
    },
    Setting {
        label: "PG (0.5,0.5,3)",
        kind: ModelKind::Pg,
        theta: (0.5, 0.5, 3.0),
    },
];

struct Row {
    label: &'static str,
    mean_k: f64,
    gamma_mean: f64,
    gamma_sd: f64,
    gamma_avg: f64,
    predicted: f64,
}

pub fn table1(args: &Table1Args, cfg: &Config) -> CliResult<()> {
    let n = cfg.pick(args.n, "n")?.unwrap_or(5000);
    let nsim = if cfg.switch(args.full_scale, "full-scale")? {
        FULL_NSIM
    } else {
        cfg.pick(args.nsim, "nsim")?.unwrap_or(100)
    };
    let kmin = cfg.pick(args.kmin, "kmin")?.unwrap_or(DEFAULT_K_MIN);
    let seed = cfg.pick(args.seed, "seed")?.unwrap_or(0);
    let out: Option<PathBuf> = cfg.pick(args.out.clone(), "out")?;
    if nsim < 2 {
        return Err(CliError::Usage(
            "--nsim must be at least 2 for a standard deviation".into(),
        ));
    }
    if n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }

    let mut rows = Vec::with_capacity(SETTINGS.len());
    for (i, s) in SETTINGS.iter().enumerate() {
        let (a, b, lambda) = s.theta;
        let params = ModelParams::new(a, b, lambda)?;
        let spec = ModelSpec::new(s.kind, params, 1, Some(SeedNet::Pair))?;
        let reps = campaign::run(&spec, n, nsim, kmin, seed, (i as u64) << 32, |_, _| Ok(()))?;
        if let Some((r, e)) = reps
            .iter()
            .enumerate()
            .find_map(|(r, x)| x.fit.as_ref().err().map(|e| (r, e)))
        {
            return Err(CliError::Numeric(format!(
                "{}, replicate {r}: {e}",
                s.label
            )));
        }
        let summary = campaign::summarize(&reps, kmin)?;
        let missing = || CliError::Numeric(format!("{}: no exponent estimate", s.label));
        rows.push(Row {
            label: s.label,
            mean_k: summary.mean_degree,
            gamma_mean: summary.gamma_mean.ok_or_else(missing)?,
            gamma_sd: summary.gamma_sd.ok_or_else(missing)?,
            gamma_avg: summary.gamma_avg.ok_or_else(missing)?,
            predicted: predicted_gamma(&spec.params)?,
        });
    }

    println!("N = {n}, n_sim = {nsim}, k_min = {kmin}, seed = {seed}");
    println!(
        "{:<18} {:>7} {:>16} {:>10} {:>10}",
        "model", "mean k", "gamma_hat", "gamma_avg", "predicted"
    );
    for r in &rows {
        println!(
            "{:<18} {:>7.3} {:>8.3} ± {:<5.3} {:>10.3} {:>10.2}",
            r.label, r.mean_k, r.gamma_mean, r.gamma_sd, r.gamma_avg, r.predicted
        );
    }

    if let Some(path) = out {
        let mut f = create(&path)?;
        let io = |e| CliError::io(&path, e);
        writeln!(
            f,
            "model,mean_k,gamma_mean,gamma_sd,gamma_avg,gamma_predicted"
        )
        .map_err(io)?;
        for r in &rows {
            writeln!(
                f,
                "\"{}\",{},{},{},{},{}",
                r.label, r.mean_k, r.gamma_mean, r.gamma_sd, r.gamma_avg, r.predicted
            )
            .map_err(io)?;
        }
        f.flush().map_err(io)?;
    }
    Ok(())
}
