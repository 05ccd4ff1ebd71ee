//! Optional `key = value` defaults file. Keys are the long flag names
//! (`lock-ab` and `lock_ab` are equivalent); flags given on the command line
//! take precedence.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;

use crate::error::{CliError, CliResult};

const KEYS: &[&str] = &[
    "model",
    "a",
    "b",
    "lambda",
    "m",
    "n",
    "nsim",
    "kmin",
    "seed",
    "out",
    "iters",
    "burnin",
    "thin",
    "lock-ab",
    "full-scale",
    "seed-net",
    "t",
    "kmax",
    "csv",
    "swaps",
    "sigma-every",
    "step-a",
    "step-b",
    "step-lambda",
    "prior-lambda",
    "prior-b",
    "prior-a",
    "bins",
];

#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        match path {
            None => Ok(Config::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
                Self::parse(&text).map_err(|e| match e {
                    CliError::Usage(m) => CliError::Usage(format!("{}: {m}", p.display())),
                    other => other,
                })
            }
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("line {}: expected key = value", i + 1)))?;
            let key = k.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "line {}: unknown key `{key}`",
                    i + 1
                )));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(Config { values })
    }

    /// The flag if present, else the parsed config entry.
    pub fn pick<T>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.values
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|e| CliError::Usage(format!("config `{key}`: {e}")))
            })
            .transpose()
    }

    pub fn pick_enum<T: ValueEnum>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.values
            .get(key)
            .map(|v| {
                T::from_str(v, true).map_err(|e| CliError::Usage(format!("config `{key}`: {e}")))
            })
            .transpose()
    }

    pub fn switch(&self, flag: bool, key: &str) -> CliResult<bool> {
        Ok(flag || self.pick::<bool>(None, key)?.unwrap_or(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let cfg = Config::parse("# defaults\nnsim = 7\nlock_ab = true\nlambda=3\n").unwrap();
        assert_eq!(cfg.pick::<usize>(None, "nsim").unwrap(), Some(7));
        assert_eq!(cfg.pick(Some(9usize), "nsim").unwrap(), Some(9));
        assert_eq!(cfg.pick::<f64>(None, "a").unwrap(), None);
        assert!(cfg.switch(false, "lock-ab").unwrap());
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("nsim").is_err());
        let cfg = Config::parse("nsim = many").unwrap();
        assert!(cfg.pick::<usize>(None, "nsim").is_err());
    }
}
