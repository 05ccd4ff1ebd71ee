use std::path::PathBuf;

use serde::Serialize;

use pgnet::estimate::DEFAULT_K_MIN;

use super::{create, create_dir, write_json};
use crate::args::{GenerateArgs, ModelKind, SeedNet};
use crate::campaign::{self, CampaignSummary, ModelSpec, FULL_NSIM};
use crate::config::Config;
use crate::error::{CliError, CliResult};

#[derive(Serialize)]
struct Manifest {
    model: ModelKind,
    a: f64,
    b: f64,
    lambda: f64,
    m: u64,
    seed_net: SeedNet,
    n: usize,
    kmin: u64,
    seed: u64,
    #[serde(flatten)]
    summary: CampaignSummary,
}

pub fn generate(args: &GenerateArgs, cfg: &Config) -> CliResult<()> {
    let kind = cfg.pick_enum(args.model, "model")?.unwrap_or(ModelKind::Pg);
    let params = campaign::resolve_params(&args.params, cfg)?;
    let m = cfg.pick(args.m, "m")?.unwrap_or(1);
    let spec = ModelSpec::new(kind, params, m, cfg.pick_enum(args.seed_net, "seed-net")?)?;
    let n = cfg.pick(args.n, "n")?.unwrap_or(5000);
    let nsim = if cfg.switch(args.full_scale, "full-scale")? {
        FULL_NSIM
    } else {
        cfg.pick(args.nsim, "nsim")?.unwrap_or(100)
    };
    let kmin = cfg.pick(args.kmin, "kmin")?.unwrap_or(DEFAULT_K_MIN);
    let seed = cfg.pick(args.seed, "seed")?.unwrap_or(0);
    let out: PathBuf = cfg
        .pick(args.out.clone(), "out")?
        .unwrap_or_else(|| "pgnet-out".into());
    if nsim == 0 {
        return Err(CliError::Usage("--nsim must be at least 1".into()));
    }
    if n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    if kmin == 0 {
        return Err(CliError::Usage("--kmin must be at least 1".into()));
    }
    create_dir(&out)?;

    let width = (nsim - 1).to_string().len().max(5);
    let reps = campaign::run(&spec, n, nsim, kmin, seed, 0, |r, g| {
        let path = out.join(format!("graph_{r:0width$}.txt"));
        let mut file = create(&path)?;
        g.write_to(&mut file).map_err(|e| CliError::io(&path, e))
    })?;
    for (r, rep) in reps.iter().enumerate() {
        match &rep.fit {
            Ok(fit) => write_json(&out.join(format!("fit_{r:0width$}.json")), fit)?,
            Err(e) => eprintln!("replicate {r}: no fit ({e})"),
        }
    }

    let summary = campaign::summarize(&reps, kmin)?;
    let manifest = Manifest {
        model: kind,
        a: spec.params.a,
        b: spec.params.b,
        lambda: spec.params.lambda,
        m,
        seed_net: spec.seed_net,
        n,
        kmin,
        seed,
        summary,
    };
    write_json(&out.join("summary.json"), &manifest)?;
    let s = &manifest.summary;
    println!(
        "{nsim} networks of {n} nodes in {}: mean degree {:.3}, mean gamma_hat {}, gamma_avg {}",
        out.display(),
        s.mean_degree,
        fmt_opt(s.gamma_mean),
        fmt_opt(s.gamma_avg),
    );
    Ok(())
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".into(), |x| format!("{x:.3}"))
}
