//! The noisy transmission medium between speaker and hearer.

use crate::lexicon::ALPHABET_SIZE;
use crate::rng::RandomStream;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("flip probability must lie in [0, 1], got {0}")]
pub struct NoiseParamsError(f64);

/// Channel noise configuration.
///
/// Every letter of every token is independently flipped with
/// `flip_probability`. A flip substitutes a uniformly random *different*
/// letter, so the probability is the exact per-letter corruption rate;
/// set `include_self` to let flips resample the original letter instead
/// (effective corruption rate `p * 25/26`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    pub flip_probability: f64,
    #[serde(default)]
    pub include_self: bool,
}

impl Default for NoiseParams {
    fn default() -> Self {
        NoiseParams {
            flip_probability: 0.01,
            include_self: false,
        }
    }
}

impl NoiseParams {
    pub fn new(flip_probability: f64) -> Result<Self, NoiseParamsError> {
        if !(0.0..=1.0).contains(&flip_probability) {
            return Err(NoiseParamsError(flip_probability));
        }
        Ok(NoiseParams {
            flip_probability,
            ..NoiseParams::default()
        })
    }

    pub fn validate(&self) -> Result<(), NoiseParamsError> {
        if !(0.0..=1.0).contains(&self.flip_probability) {
            return Err(NoiseParamsError(self.flip_probability));
        }
        Ok(())
    }
}

/// Send tokens through the channel: token boundaries and lengths are
/// preserved, each letter independently flipped with the configured
/// probability. Marker suffix letters get no special treatment.
pub fn apply_noise(tokens: &[String], params: &NoiseParams, rng: &mut RandomStream) -> Vec<String> {
    tokens
        .iter()
        .map(|token| {
            token
                .bytes()
                .map(|b| {
                    debug_assert!(b.is_ascii_lowercase());
                    if rng.gen::<f64>() < params.flip_probability {
                        flip_letter(b, params.include_self, rng)
                    } else {
                        b as char
                    }
                })
                .collect()
        })
        .collect()
}

fn flip_letter(original: u8, include_self: bool, rng: &mut RandomStream) -> char {
    let offset = if include_self {
        rng.gen_range(0..ALPHABET_SIZE)
    } else {
        rng.gen_range(1..ALPHABET_SIZE)
    };
    (b'a' + (original - b'a' + offset) % ALPHABET_SIZE) as char
}
