use std::io::Write;
use std::path::PathBuf;

use pgnet::evolve_master_equation;
use pgnet::theory::predict;

use super::{create, write_json};
use crate::args::{ModelKind, SeedNet, TheoryArgs};
use crate::campaign::{self, ModelSpec};
use crate::config::Config;
use crate::error::{CliError, CliResult};

pub fn theory(args: &TheoryArgs, cfg: &Config) -> CliResult<()> {
    let params = campaign::resolve_params(&args.params, cfg)?;
    let prediction = predict(&params)?;
    let json = serde_json::to_string_pretty(&prediction).expect("plain numeric record");
    println!("{json}");
    if let Some(path) = cfg.pick::<PathBuf>(args.out.clone(), "out")? {
        write_json(&path, &prediction)?;
    }

    if let Some(path) = cfg.pick::<PathBuf>(args.csv.clone(), "csv")? {
        let t = cfg.pick(args.t, "t")?.unwrap_or(10_000);
        let kmax = cfg.pick(args.kmax, "kmax")?.unwrap_or(1000);
        let seed_net = cfg
            .pick_enum(args.seed_net, "seed-net")?
            .unwrap_or(SeedNet::Pair);
        let seed = ModelSpec::new(ModelKind::Pg, params, 1, Some(seed_net))?.seed_graph();
        let dist = evolve_master_equation(&params, &seed.degree_histogram(), t, kmax)?;
        let mut f = create(&path)?;
        dist.write_csv(Some(&params), &mut f)
            .and_then(|_| f.flush())
            .map_err(|e| CliError::io(&path, e))?;
    }
    Ok(())
}
