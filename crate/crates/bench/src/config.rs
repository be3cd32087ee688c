//! Resolved run configuration: built-in defaults, then a config file, then flags.

use std::path::Path;

use anyon_core::baselines::{McConfig, Method, DEFAULT_BUDGET};
use anyon_core::ga::{GaConfig, Selection};
use anyon_core::{Alphabet, Metric};
use serde::{Deserialize, Serialize};

use crate::error::BenchError;

/// Genetic-search settings. Word length and seed come from [`RunConfig`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaSettings {
    #[serde(rename = "N")]
    pub population_size: usize,
    #[serde(rename = "T")]
    pub crossover_count: Option<usize>,
    #[serde(rename = "P")]
    pub mutation_prob: f64,
    #[serde(rename = "G")]
    pub generations: usize,
    pub parent_pool_size: Option<usize>,
    pub restarts: usize,
    pub early_stop_d: Option<f64>,
    pub selection: Selection,
}

impl Default for GaSettings {
    fn default() -> Self {
        let d = GaConfig::default();
        Self {
            population_size: d.population_size,
            crossover_count: d.crossover_count,
            mutation_prob: d.mutation_prob,
            generations: d.generations,
            parent_pool_size: d.parent_pool_size,
            restarts: d.restarts,
            early_stop_d: d.early_stop_d,
            selection: d.selection,
        }
    }
}

/// Annealer settings. `sweeps = None` matches the genetic search's evaluation
/// budget.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McSettings {
    pub sweeps: Option<usize>,
    pub t_initial: f64,
    pub cooling: f64,
    pub t_min: f64,
}

impl Default for McSettings {
    fn default() -> Self {
        let d = McConfig::default();
        Self {
            sweeps: None,
            t_initial: d.t_initial,
            cooling: d.cooling,
            t_min: d.t_min,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSettings {
    pub axis: Option<SweepAxis>,
    pub values: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum SweepAxis {
    #[serde(rename = "N")]
    #[value(name = "N")]
    N,
    #[serde(rename = "P")]
    #[value(name = "P")]
    P,
    #[serde(rename = "G")]
    #[value(name = "G")]
    G,
    /// Base length at the configured order.
    #[serde(rename = "l0")]
    #[value(name = "l0")]
    L0,
    /// Order-0 word length (forces order 0).
    #[serde(rename = "L")]
    #[value(name = "L")]
    L,
    #[serde(rename = "alphabet")]
    #[value(name = "alphabet")]
    Alphabet,
    #[serde(rename = "order")]
    #[value(name = "order")]
    Order,
}

impl std::fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SweepAxis::N => "N",
            SweepAxis::P => "P",
            SweepAxis::G => "G",
            SweepAxis::L0 => "l0",
            SweepAxis::L => "L",
            SweepAxis::Alphabet => "alphabet",
            SweepAxis::Order => "order",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompareSettings {
    pub methods: Vec<Method>,
    pub l0: Vec<usize>,
    pub orders: Vec<usize>,
}

impl Default for CompareSettings {
    fn default() -> Self {
        Self {
            methods: vec![Method::Ga, Method::Mc],
            l0: vec![30],
            orders: vec![0, 1, 2, 3],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// `I`, `X`, `H`, `T` or eight comma-separated reals.
    pub gate: String,
    pub method: Method,
    pub l0: usize,
    pub order: usize,
    /// `None` uses each method's own default (`aB` for ga, `AaBb` for mc,
    /// `aB` for bf and mitm).
    pub alphabet: Option<Alphabet>,
    pub seed: u64,
    /// Seeds for sweep and compare; empty means `[seed]`.
    pub seeds: Vec<u64>,
    pub threads: Option<usize>,
    pub metric: Metric,
    /// Memoise recursive calls within one compile.
    pub cache: bool,
    /// Exhaustive-search evaluation cap (also bounds each enumeration table).
    pub budget: u64,
    pub ga: GaSettings,
    pub mc: McSettings,
    pub sweep: SweepSettings,
    pub compare: CompareSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            gate: "H".into(),
            method: Method::Ga,
            l0: 30,
            order: 0,
            alphabet: None,
            seed: 0,
            seeds: Vec::new(),
            threads: None,
            metric: Metric::PhaseInvariant,
            cache: true,
            budget: DEFAULT_BUDGET,
            ga: GaSettings::default(),
            mc: McSettings::default(),
            sweep: SweepSettings::default(),
            compare: CompareSettings::default(),
        }
    }
}

impl RunConfig {
    pub fn alphabet_for(&self, method: Method) -> Alphabet {
        self.alphabet.unwrap_or(match method {
            Method::Mc => Alphabet::FULL,
            _ => Alphabet::DEFAULT,
        })
    }

    pub fn seed_list(&self) -> Vec<u64> {
        if self.seeds.is_empty() {
            vec![self.seed]
        } else {
            self.seeds.clone()
        }
    }

    pub fn ga_config(&self, l0: usize, seed: u64) -> GaConfig {
        let g = &self.ga;
        GaConfig {
            population_size: g.population_size,
            crossover_count: g.crossover_count,
            mutation_prob: g.mutation_prob,
            generations: g.generations,
            parent_pool_size: g.parent_pool_size,
            word_length: l0,
            alphabet: self.alphabet_for(Method::Ga),
            restarts: g.restarts,
            rng_seed: seed,
            early_stop_d: g.early_stop_d,
            selection: g.selection,
        }
    }

    /// Annealer settings; without explicit sweeps the run spends about as many
    /// evaluations as one genetic search at the same length.
    pub fn mc_config(&self, l0: usize, seed: u64) -> McConfig {
        let mut cfg = McConfig {
            word_length: l0,
            alphabet: self.alphabet_for(Method::Mc),
            sweeps: 1,
            t_initial: self.mc.t_initial,
            cooling: self.mc.cooling,
            t_min: self.mc.t_min,
            rng_seed: seed,
        };
        cfg.sweeps = match self.mc.sweeps {
            Some(s) => s,
            None => cfg.sweeps_for_budget(self.ga_config(l0, seed).evaluation_budget()),
        };
        cfg
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        anyon_core::GateTarget::parse(&self.gate).map_err(anyon_core::Error::from)?;
        if self.l0 == 0 && self.order > 0 {
            return Err(BenchError::Config(
                "l0 must be positive when order > 0".into(),
            ));
        }
        if self.threads == Some(0) {
            return Err(BenchError::Config("threads must be positive".into()));
        }
        self.ga_config(self.l0.max(1), self.seed).validate()?;
        self.mc_config(self.l0.max(1), self.seed).validate()?;
        Ok(())
    }
}

/// Reads a config from TOML (`.toml`) or JSON. A JSON result artifact is also
/// accepted, in which case its embedded `config` is used.
pub fn load_config_file(path: &Path) -> Result<RunConfig, BenchError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| BenchError::Config(format!("cannot read {}: {e}", path.display())))?;
    let is_toml = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("toml"));
    if is_toml {
        return toml::from_str(&text)
            .map_err(|e| BenchError::Config(format!("{}: {e}", path.display())));
    }
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| BenchError::Config(format!("{}: {e}", path.display())))?;
    let value = match value {
        serde_json::Value::Object(mut m)
            if m.contains_key("schema_version") && m.contains_key("config") =>
        {
            m.remove("config").unwrap_or_default()
        }
        v => v,
    };
    serde_json::from_value(value)
        .map_err(|e| BenchError::Config(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_the_library() {
        let c = RunConfig::default();
        let ga = c.ga_config(30, 7);
        assert_eq!(ga.population_size, 3000);
        assert_eq!(ga.crossovers(), 1500);
        assert_eq!(ga.pool_size(), 2000);
        assert_eq!(ga.generations, 10_000);
        assert_eq!(ga.restarts, 3);
        assert_eq!(ga.alphabet, Alphabet::DEFAULT);
        assert_eq!(c.alphabet_for(Method::Mc), Alphabet::FULL);
        assert_eq!(c.seed_list(), vec![0]);
    }

    #[test]
    fn matched_annealer_budget() {
        let mut c = RunConfig::default();
        c.ga.population_size = 100;
        c.ga.generations = 10;
        c.ga.restarts = 1;
        let ga_budget = c.ga_config(20, 0).evaluation_budget();
        let mc = c.mc_config(20, 0);
        assert_eq!(ga_budget, 100 + 100 * 10);
        let spent = mc.evaluation_budget();
        assert!(spent.abs_diff(ga_budget) <= 20, "{spent} vs {ga_budget}");
    }

    #[test]
    fn toml_and_json_files() {
        let dir = tempfile::tempdir().unwrap();
        let toml_path = dir.path().join("run.toml");
        std::fs::write(
            &toml_path,
            "gate = \"T\"\nl0 = 12\nalphabet = \"AaBb\"\n[ga]\nN = 40\nP = 0.2\n",
        )
        .unwrap();
        let c = load_config_file(&toml_path).unwrap();
        assert_eq!(c.gate, "T");
        assert_eq!(c.l0, 12);
        assert_eq!(c.alphabet, Some(Alphabet::FULL));
        assert_eq!(c.ga.population_size, 40);
        assert_eq!(c.ga.mutation_prob, 0.2);
        assert_eq!(c.ga.generations, 10_000);

        let json_path = dir.path().join("run.json");
        let artifact = serde_json::json!({ "schema_version": 1, "config": c, "result": {} });
        std::fs::write(&json_path, artifact.to_string()).unwrap();
        assert_eq!(load_config_file(&json_path).unwrap(), c);

        std::fs::write(&toml_path, "gaet = \"T\"\n").unwrap();
        assert!(matches!(
            load_config_file(&toml_path),
            Err(BenchError::Config(_))
        ));
    }
}
