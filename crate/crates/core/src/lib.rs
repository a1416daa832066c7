//! Evolutionary simulation of word-order fixation.
//!
//! A population of grammars (probability distributions over the six
//! orderings of subject, verb and object) evolves under selection for
//! successful communication across a noisy channel. The library provides
//! the full pipeline (lexicon, channel, speaker/hearer agents, genetic
//! algorithm) plus an exact-arithmetic verifier showing that only
//! fixed-word-order grammars achieve zero expected communication distance.
//!
//! Core numeric code is generic over the scalar type: the simulation runs
//! on [`Prob`] (`f64`), the optimality verifier on [`Exact`] rationals.

pub mod agents;
pub mod channel;
pub mod evolution;
pub mod grammar;
pub mod lexicon;
pub mod order;
pub mod rng;
pub mod scalar;
pub mod theory;

pub use agents::{communication_trial, hear, speak, LexiconSet, RoleAssignment, Scenario, Utterance};
pub use channel::{apply_noise, NoiseParams};
pub use evolution::{
    evaluate_population, evaluate_population_sequential, run_experiment, select_and_reproduce,
    EvolutionParams, GenerationStats,
};
pub use grammar::Grammar;
pub use lexicon::{levenshtein, Lexicon, LexiconError, LexiconKind, LexiconParams, Word};
pub use order::{build_distance_matrix, role_distance, OrderDistanceMatrix, Role, WordOrder};
pub use rng::{derive_seed, stream, RandomStream};
pub use scalar::Scalar;
pub use theory::{
    expected_distance_argmax, expected_distance_sampling, verify_theorem, HearerModel,
    ModelVerification, SimplexGrid, VerificationReport,
};

/// Scalar used by the simulation pipeline.
pub type Prob = f64;

/// Exact rational scalar used by the optimality verifier.
pub type Exact = num_rational::Rational64;
