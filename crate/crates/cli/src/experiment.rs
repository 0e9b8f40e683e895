//! Config-file driven Monte Carlo experiments with a JSON-lines results log.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sortnet::geometry::mc_geometric_swap_expectation;
use sortnet::montecarlo::{
    compare_laws, geometric_law_m4, mc_corollary2, mc_subnet_swap_expectation, subnet_law_m4,
    McConfig,
};

/// One experiment read from a JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, u64>,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

/// Experiment names with their required parameters.
pub const EXPERIMENTS: [(&str, &[&str]); 4] = [
    ("mc-subnet", &["n", "m", "j"]),
    ("corollary2", &["n"]),
    ("geom-expect", &["m", "j"]),
    ("law-m4", &["n"]),
];

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg: ExperimentConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        cfg.check()?;
        Ok(cfg)
    }

    /// Rejects unknown experiments and missing or unexpected parameters.
    pub fn check(&self) -> Result<()> {
        let Some((_, required)) = EXPERIMENTS
            .iter()
            .find(|(name, _)| *name == self.experiment)
        else {
            let known: Vec<&str> = EXPERIMENTS.iter().map(|(n, _)| *n).collect();
            bail!(
                "unknown experiment {:?}; expected one of {}",
                self.experiment,
                known.join(", ")
            );
        };
        for p in *required {
            if !self.parameters.contains_key(*p) {
                bail!("experiment {} needs parameter {p:?}", self.experiment);
            }
        }
        if let Some(extra) = self
            .parameters
            .keys()
            .find(|k| !required.contains(&k.as_str()))
        {
            bail!(
                "experiment {} does not take parameter {extra:?}",
                self.experiment
            );
        }
        if self.samples == 0 || self.workers == 0 {
            bail!("samples and workers must be at least 1");
        }
        Ok(())
    }

    fn param(&self, name: &str) -> usize {
        self.parameters[name] as usize
    }

    /// Runs the experiment and returns its result as JSON.
    pub fn run(&self) -> Result<Value> {
        self.check()?;
        let mc = McConfig::new(self.samples, self.seed, self.workers);
        let result = match self.experiment.as_str() {
            "mc-subnet" => json!(mc_subnet_swap_expectation(
                self.param("n"),
                self.param("m"),
                self.param("j"),
                &mc
            )?),
            "corollary2" => json!(mc_corollary2(self.param("n"), &mc)?),
            "geom-expect" => json!(mc_geometric_swap_expectation(
                self.param("m"),
                self.param("j"),
                &mc
            )?),
            "law-m4" => {
                let subnet = subnet_law_m4(self.param("n"), &mc)?;
                let geometric = geometric_law_m4(&mc)?;
                let cmp = compare_laws(&subnet, &geometric, 200, self.seed);
                json!({ "subnetwork": subnet, "geometric": geometric, "comparison": cmp })
            }
            _ => unreachable!("checked above"),
        };
        Ok(result)
    }
}

/// Appends `{config..., "result": ...}` as one line to `log`.
pub fn append_result(log: &Path, cfg: &ExperimentConfig, result: &Value) -> Result<()> {
    let mut record = serde_json::to_value(cfg)?;
    record["result"] = result.clone();
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(log)
        .with_context(|| format!("opening {}", log.display()))?;
    writeln!(file, "{}", serde_json::to_string(&record)?)?;
    Ok(())
}
