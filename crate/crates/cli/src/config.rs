//! Configuration resolution: defaults, then config file values, then flags.

use crate::CliError;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use wordevo::{EvolutionParams, LexiconParams, NoiseParams, Scenario};

/// Which scenario(s) a run covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioSelector {
    One(Scenario),
    All,
}

impl ScenarioSelector {
    pub fn parse(s: &str) -> Option<ScenarioSelector> {
        if s == "all" {
            return Some(ScenarioSelector::All);
        }
        Scenario::parse(s).map(ScenarioSelector::One)
    }

    pub fn scenarios(self) -> Vec<Scenario> {
        match self {
            ScenarioSelector::One(s) => vec![s],
            ScenarioSelector::All => Scenario::ALL.to_vec(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ScenarioSelector::One(s) => s.label(),
            ScenarioSelector::All => "all",
        }
    }
}

impl Serialize for ScenarioSelector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for ScenarioSelector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        ScenarioSelector::parse(&raw).ok_or_else(|| {
            serde::de::Error::custom(format!(
                "scenario must be one of base|nv|case|nv-case|all, got {raw:?}"
            ))
        })
    }
}

/// Fully resolved run configuration; echoed verbatim into the output
/// directory as `config.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub scenario: ScenarioSelector,
    pub generations: usize,
    pub population: usize,
    pub selection_rate: f64,
    pub mutation_variance: f64,
    pub noise: f64,
    pub trials: usize,
    pub lexicon_size: usize,
    pub noun_lexicon_size: usize,
    pub verb_lexicon_size: usize,
    pub word_length: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub elitism: bool,
    pub emit_lexicons: bool,
    pub verify_resolution: Option<u32>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let evolution = EvolutionParams::default();
        RunConfig {
            scenario: ScenarioSelector::One(Scenario::Base),
            generations: evolution.generations,
            population: evolution.population_size,
            selection_rate: evolution.selection_rate,
            mutation_variance: evolution.mutation_variance,
            noise: evolution.noise.flip_probability,
            trials: evolution.trials_per_grammar,
            lexicon_size: evolution.lexicon.lexicon_size,
            noun_lexicon_size: evolution.lexicon.noun_lexicon_size,
            verb_lexicon_size: evolution.lexicon.verb_lexicon_size,
            word_length: evolution.lexicon.word_length,
            seed: 0,
            out: PathBuf::from("out"),
            elitism: evolution.elitism,
            emit_lexicons: false,
            verify_resolution: None,
        }
    }
}

/// Config-file schema: every field optional, unknown keys rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    scenario: Option<ScenarioSelector>,
    generations: Option<usize>,
    population: Option<usize>,
    selection_rate: Option<f64>,
    mutation_variance: Option<f64>,
    noise: Option<f64>,
    trials: Option<usize>,
    lexicon_size: Option<usize>,
    noun_lexicon_size: Option<usize>,
    verb_lexicon_size: Option<usize>,
    word_length: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    elitism: Option<bool>,
    emit_lexicons: Option<bool>,
    verify_resolution: Option<u32>,
}

impl RunConfig {
    fn apply_file(&mut self, file: FileConfig) {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if let Some(v) = file.$field { self.$field = v; })*
            };
        }
        take!(
            scenario,
            generations,
            population,
            selection_rate,
            mutation_variance,
            noise,
            trials,
            lexicon_size,
            noun_lexicon_size,
            verb_lexicon_size,
            word_length,
            seed,
            out,
            elitism,
            emit_lexicons
        );
        if file.verify_resolution.is_some() {
            self.verify_resolution = file.verify_resolution;
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |key: &str, why: String| Err(CliError::Config(format!("{key}: {why}")));
        if self.population < 2 {
            return fail("population", format!("must be at least 2, got {}", self.population));
        }
        if !(self.selection_rate > 0.0 && self.selection_rate <= 1.0) {
            return fail(
                "selection-rate",
                format!("must lie in (0, 1], got {}", self.selection_rate),
            );
        }
        if !self.mutation_variance.is_finite() || self.mutation_variance < 0.0 {
            return fail(
                "mutation-variance",
                format!("must be finite and non-negative, got {}", self.mutation_variance),
            );
        }
        if !(0.0..=1.0).contains(&self.noise) {
            return fail("noise", format!("must lie in [0, 1], got {}", self.noise));
        }
        if self.trials == 0 {
            return fail("trials", "must be at least 1".to_string());
        }
        if self.lexicon_size < 3 {
            return fail(
                "lexicon-size",
                format!("must be at least 3, got {}", self.lexicon_size),
            );
        }
        if self.noun_lexicon_size < 2 {
            return fail(
                "noun-lexicon-size",
                format!("must be at least 2, got {}", self.noun_lexicon_size),
            );
        }
        if self.verb_lexicon_size < 1 {
            return fail("verb-lexicon-size", "must be at least 1".to_string());
        }
        if self.word_length == 0 {
            return fail("word-length", "must be at least 1".to_string());
        }
        if let Some(resolution) = self.verify_resolution {
            if resolution < 2 {
                return fail(
                    "verify-resolution",
                    format!("must be at least 2 (a resolution-1 grid holds only the vertices), got {resolution}"),
                );
            }
        }
        Ok(())
    }

    /// The core parameters for one scenario under a concrete master seed.
    pub fn evolution_params(&self, scenario: Scenario, master_seed: u64) -> EvolutionParams {
        EvolutionParams {
            population_size: self.population,
            generations: self.generations,
            selection_rate: self.selection_rate,
            mutation_variance: self.mutation_variance,
            trials_per_grammar: self.trials,
            noise: NoiseParams {
                flip_probability: self.noise,
                include_self: false,
            },
            scenario,
            lexicon: LexiconParams {
                lexicon_size: self.lexicon_size,
                noun_lexicon_size: self.noun_lexicon_size,
                verb_lexicon_size: self.verb_lexicon_size,
                word_length: self.word_length,
            },
            elitism: self.elitism,
            master_seed,
        }
    }
}

const USAGE: &str = "\
wordevo - evolutionary word-order simulation and optimality verifier

USAGE:
    wordevo [FLAGS]

FLAGS:
    --scenario {base|nv|case|nv-case|all}   scenario(s) to run (default base)
    --generations N        generations per run (default 1000)
    --population N         grammars per generation (default 100)
    --selection-rate R     surviving fraction in (0,1] (default 0.3)
    --mutation-variance V  Gaussian mutation noise scale (default 0.01)
    --noise P              per-letter channel flip probability (default 0.01)
    --trials N             communication trials per grammar (default 1)
    --lexicon-size N       unified lexicon size (default 1000)
    --noun-lexicon-size N  noun lexicon size for nv scenarios (default 500)
    --verb-lexicon-size N  verb lexicon size for nv scenarios (default 500)
    --word-length N        letters per word (default 3)
    --seed N               master seed (default 0)
    --out DIR              output directory (default out)
    --elitism {true|false} copy survivors unmutated (default true)
    --emit-lexicons        also write the generated lexicons
    --verify-resolution K  run the exact optimality check on a 1/K grid
                           instead of simulating (K >= 2)
    --config FILE          JSON config file; flags override file values
    --help                 print this message

EXIT CODES:
    0 success    1 configuration error    2 I/O error    3 verification failure
";

/// Outcome of argument parsing: a resolved config, or an early exit for
/// `--help`.
pub enum Parsed {
    Run(Box<RunConfig>),
    Help,
}

/// Resolve flags and the optional config file into a full [`RunConfig`]:
/// flags override file values override defaults.
pub fn parse_config<I: IntoIterator<Item = String>>(args: I) -> Result<Parsed, CliError> {
    let args: Vec<String> = args.into_iter().collect();
    if args.iter().any(|a| a == "--help" || a == "-h") {
        println!("{USAGE}");
        return Ok(Parsed::Help);
    }

    // First pass: pair flags with values.
    let mut pairs: Vec<(String, Option<String>)> = Vec::new();
    let mut iter = args.into_iter().peekable();
    while let Some(flag) = iter.next() {
        let Some(key) = flag.strip_prefix("--") else {
            return Err(CliError::Config(format!(
                "unexpected positional argument {flag:?}; see --help"
            )));
        };
        let takes_value = key != "emit-lexicons";
        let value = if takes_value {
            let Some(v) = iter.next() else {
                return Err(CliError::Config(format!("{key}: missing value")));
            };
            Some(v)
        } else {
            None
        };
        pairs.push((key.to_string(), value));
    }

    let mut config = RunConfig::default();

    // Config file first, so flags can override it.
    if let Some((_, Some(path))) = pairs.iter().find(|(k, _)| k == "config") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("config: cannot read {path:?}: {e}")))?;
        let file: FileConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("config: {path:?}: {e}")))?;
        config.apply_file(file);
    }

    for (key, value) in &pairs {
        let value = value.as_deref();
        match key.as_str() {
            "config" => {}
            "scenario" => {
                let raw = required(key, value)?;
                config.scenario = ScenarioSelector::parse(raw).ok_or_else(|| {
                    CliError::Config(format!(
                        "scenario: expected base|nv|case|nv-case|all, got {raw:?}"
                    ))
                })?;
            }
            "generations" => config.generations = parse_value(key, value)?,
            "population" => config.population = parse_value(key, value)?,
            "selection-rate" => config.selection_rate = parse_value(key, value)?,
            "mutation-variance" => config.mutation_variance = parse_value(key, value)?,
            "noise" => config.noise = parse_value(key, value)?,
            "trials" => config.trials = parse_value(key, value)?,
            "lexicon-size" => config.lexicon_size = parse_value(key, value)?,
            "noun-lexicon-size" => config.noun_lexicon_size = parse_value(key, value)?,
            "verb-lexicon-size" => config.verb_lexicon_size = parse_value(key, value)?,
            "word-length" => config.word_length = parse_value(key, value)?,
            "seed" => config.seed = parse_value(key, value)?,
            "out" => config.out = PathBuf::from(required(key, value)?),
            "elitism" => config.elitism = parse_value(key, value)?,
            "emit-lexicons" => config.emit_lexicons = true,
            "verify-resolution" => config.verify_resolution = Some(parse_value(key, value)?),
            other => {
                return Err(CliError::Config(format!("unknown flag --{other}; see --help")));
            }
        }
    }

    config.validate()?;
    Ok(Parsed::Run(Box::new(config)))
}

fn required<'a>(key: &str, value: Option<&'a str>) -> Result<&'a str, CliError> {
    value.ok_or_else(|| CliError::Config(format!("{key}: missing value")))
}

fn parse_value<T: std::str::FromStr>(key: &str, value: Option<&str>) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    let raw = required(key, value)?;
    raw.parse()
        .map_err(|e| CliError::Config(format!("{key}: invalid value {raw:?}: {e}")))
}

/// Load a config file directly (used by tests).
pub fn config_from_file(path: &Path) -> Result<RunConfig, CliError> {
    let mut config = RunConfig::default();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("config: cannot read {path:?}: {e}")))?;
    let file: FileConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("config: {path:?}: {e}")))?;
    config.apply_file(file);
    config.validate()?;
    Ok(config)
}
