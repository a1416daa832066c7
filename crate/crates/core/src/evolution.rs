//! The genetic-algorithm engine: population evaluation, truncation
//! selection, mutation-based reproduction and per-generation statistics.

use crate::agents::{communication_trial, LexiconSet, Scenario};
use crate::channel::NoiseParams;
use crate::grammar::Grammar;
use crate::lexicon::{LexiconError, LexiconParams};
use crate::rng::{labels, stream, RandomStream};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("population size must be at least 2, got {0}")]
    PopulationTooSmall(usize),
    #[error("selection rate must lie in (0, 1], got {0}")]
    SelectionRateOutOfRange(f64),
    #[error("mutation noise must be finite and non-negative, got {0}")]
    MutationNoiseOutOfRange(f64),
    #[error("trials per grammar must be at least 1")]
    NoTrials,
    #[error("flip probability must lie in [0, 1], got {0}")]
    NoiseOutOfRange(f64),
    #[error("word length must be at least 1")]
    WordLengthZero,
    #[error("scenario {scenario} needs {minimum} words in the {which} lexicon, got {got}")]
    LexiconTooSmall {
        scenario: Scenario,
        which: &'static str,
        minimum: usize,
        got: usize,
    },
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

/// Full configuration of one evolutionary run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvolutionParams {
    pub population_size: usize,
    pub generations: usize,
    /// Fraction of the population surviving truncation selection.
    pub selection_rate: f64,
    /// Scale of the per-entry Gaussian mutation noise.
    pub mutation_variance: f64,
    /// Communication trials averaged into each grammar's fitness.
    pub trials_per_grammar: usize,
    pub noise: NoiseParams,
    pub scenario: Scenario,
    pub lexicon: LexiconParams,
    /// Keep survivors unmutated alongside their mutated offspring. With the
    /// flag off every next-generation grammar is a fresh mutation, which
    /// raises the population's entropy floor to the mutation load and keeps
    /// even strongly selected runs from fixating.
    pub elitism: bool,
    pub master_seed: u64,
}

impl Default for EvolutionParams {
    fn default() -> Self {
        EvolutionParams {
            population_size: 100,
            generations: 1000,
            selection_rate: 0.3,
            mutation_variance: 0.01,
            trials_per_grammar: 1,
            noise: NoiseParams::default(),
            scenario: Scenario::Base,
            lexicon: LexiconParams::default(),
            elitism: true,
            master_seed: 0,
        }
    }
}

impl EvolutionParams {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.population_size < 2 {
            return Err(ConfigError::PopulationTooSmall(self.population_size));
        }
        if !(self.selection_rate > 0.0 && self.selection_rate <= 1.0) {
            return Err(ConfigError::SelectionRateOutOfRange(self.selection_rate));
        }
        if !self.mutation_variance.is_finite() || self.mutation_variance < 0.0 {
            return Err(ConfigError::MutationNoiseOutOfRange(self.mutation_variance));
        }
        if self.trials_per_grammar == 0 {
            return Err(ConfigError::NoTrials);
        }
        self.noise
            .validate()
            .map_err(|_| ConfigError::NoiseOutOfRange(self.noise.flip_probability))?;
        if self.lexicon.word_length == 0 {
            return Err(ConfigError::WordLengthZero);
        }
        // The speaker samples subject and object without replacement, so the
        // lexicons cannot be arbitrarily small.
        if self.scenario.splits_lexicon() {
            if self.lexicon.noun_lexicon_size < 2 {
                return Err(ConfigError::LexiconTooSmall {
                    scenario: self.scenario,
                    which: "noun",
                    minimum: 2,
                    got: self.lexicon.noun_lexicon_size,
                });
            }
            if self.lexicon.verb_lexicon_size < 1 {
                return Err(ConfigError::LexiconTooSmall {
                    scenario: self.scenario,
                    which: "verb",
                    minimum: 1,
                    got: self.lexicon.verb_lexicon_size,
                });
            }
        } else if self.lexicon.lexicon_size < 3 {
            return Err(ConfigError::LexiconTooSmall {
                scenario: self.scenario,
                which: "unified",
                minimum: 3,
                got: self.lexicon.lexicon_size,
            });
        }
        Ok(())
    }

    /// Survivor count under truncation selection.
    pub fn survivor_count(&self) -> usize {
        let raw = (self.selection_rate * self.population_size as f64).ceil() as usize;
        raw.clamp(1, self.population_size)
    }
}

/// Per-generation aggregates; one row per generation in the outputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub avg_distance: f64,
    pub avg_entropy: f64,
    pub best_distance: f64,
    pub best_entropy: f64,
    pub best_grammar: Grammar,
}

impl GenerationStats {
    fn collect(generation: usize, population: &[Grammar], fitness: &[f64]) -> GenerationStats {
        let n = population.len() as f64;
        let avg_distance = fitness.iter().sum::<f64>() / n;
        let avg_entropy = population.iter().map(Grammar::entropy).sum::<f64>() / n;
        let mut best = 0;
        for (i, f) in fitness.iter().enumerate() {
            if *f < fitness[best] {
                best = i;
            }
        }
        GenerationStats {
            generation,
            avg_distance,
            avg_entropy,
            best_distance: fitness[best],
            best_entropy: population[best].entropy(),
            best_grammar: population[best].clone(),
        }
    }
}

fn grammar_fitness(
    grammar: &Grammar,
    params: &EvolutionParams,
    lexicons: &LexiconSet,
    generation: usize,
    index: usize,
) -> f64 {
    let total: f64 = (0..params.trials_per_grammar)
        .map(|trial| {
            let mut rng = stream(
                params.master_seed,
                &[
                    labels::TRIAL,
                    generation as u64,
                    index as u64,
                    trial as u64,
                ],
            );
            communication_trial(grammar, lexicons, params.scenario, &params.noise, &mut rng)
        })
        .sum();
    total / params.trials_per_grammar as f64
}

/// Mean communication distance of every grammar (lower is fitter). Each
/// trial draws from its own stream keyed by (generation, grammar, trial),
/// so the fan-out over grammars is embarrassingly parallel.
pub fn evaluate_population(
    population: &[Grammar],
    params: &EvolutionParams,
    lexicons: &LexiconSet,
    generation: usize,
) -> Vec<f64> {
    population
        .par_iter()
        .enumerate()
        .map(|(index, grammar)| grammar_fitness(grammar, params, lexicons, generation, index))
        .collect()
}

/// Single-threaded [`evaluate_population`]; the results are identical.
pub fn evaluate_population_sequential(
    population: &[Grammar],
    params: &EvolutionParams,
    lexicons: &LexiconSet,
    generation: usize,
) -> Vec<f64> {
    population
        .iter()
        .enumerate()
        .map(|(index, grammar)| grammar_fitness(grammar, params, lexicons, generation, index))
        .collect()
}

/// Truncation selection plus mutation-based reproduction. Grammars are
/// ranked by fitness (ties by index) and the best `survivor_count` parent
/// the next generation. Under elitism (the default) the survivors fill the
/// first `S` slots unchanged and the remaining slots round-robin over
/// mutated copies; without it every slot `j` is a mutated copy of survivor
/// `j mod S`.
pub fn select_and_reproduce(
    population: &[Grammar],
    fitness: &[f64],
    params: &EvolutionParams,
    rng: &mut RandomStream,
) -> Vec<Grammar> {
    assert_eq!(population.len(), fitness.len());
    assert_eq!(population.len(), params.population_size);
    let mut ranked: Vec<usize> = (0..population.len()).collect();
    ranked.sort_by(|&a, &b| fitness[a].total_cmp(&fitness[b]).then(a.cmp(&b)));
    let survivors = &ranked[..params.survivor_count()];

    let mut next = Vec::with_capacity(params.population_size);
    if params.elitism {
        for &s in survivors {
            next.push(population[s].clone());
        }
    }
    let offset = next.len();
    while next.len() < params.population_size {
        let parent = survivors[(next.len() - offset) % survivors.len()];
        next.push(population[parent].mutate(rng, params.mutation_variance));
    }
    next
}

/// Run the full experiment: generate lexicons, start every grammar uniform,
/// then iterate evaluate → record → select/reproduce. Returns one stats row
/// per generation, 0 through `generations` inclusive; the last row describes
/// the population after the final reproduction step. Fully deterministic
/// given `master_seed`.
pub fn run_experiment(params: &EvolutionParams) -> Result<Vec<GenerationStats>, ConfigError> {
    params.validate()?;
    let mut lexicon_rng = stream(params.master_seed, &[labels::LEXICON]);
    let lexicons = LexiconSet::generate(params.scenario, &params.lexicon, &mut lexicon_rng)?;
    run_with_lexicons(params, &lexicons)
}

/// [`run_experiment`] against an already generated lexicon set (for replays
/// from saved artifacts).
pub fn run_with_lexicons(
    params: &EvolutionParams,
    lexicons: &LexiconSet,
) -> Result<Vec<GenerationStats>, ConfigError> {
    params.validate()?;
    let mut population = vec![Grammar::uniform(); params.population_size];
    let mut history = Vec::with_capacity(params.generations + 1);
    for generation in 0..=params.generations {
        let fitness = evaluate_population(&population, params, lexicons, generation);
        history.push(GenerationStats::collect(generation, &population, &fitness));
        if generation < params.generations {
            let mut rng = stream(params.master_seed, &[labels::REPRODUCE, generation as u64]);
            population = select_and_reproduce(&population, &fitness, params, &mut rng);
        }
    }
    Ok(history)
}
