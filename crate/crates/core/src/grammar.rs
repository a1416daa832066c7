//! Grammars: probability distributions over the six word orders.
//!
//! A grammar is the evolving genotype. The type is generic over the scalar
//! so the same representation serves the `f64` simulation and the exact
//! rational verifier.

use crate::order::WordOrder;
use crate::rng::RandomStream;
use crate::scalar::Scalar;
use num_traits::{Float, ToPrimitive};
use rand::distributions::{Distribution, Standard};
use rand::Rng;
use rand_distr::{Normal, StandardNormal};
use serde::Serialize;
use thiserror::Error;

/// Absolute tolerance on `sum(p) == 1` for float grammars.
pub const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// Probabilities within this much of the maximum count as tied for argmax.
pub const ARGMAX_TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum GrammarError {
    #[error("probability at index {index} is negative ({value})")]
    NegativeEntry { index: usize, value: f64 },
    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },
}

/// A point on the 6-dimensional probability simplex, indexed by
/// [`WordOrder`] in canonical listing order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Grammar<T = crate::Prob> {
    p: [T; 6],
}

impl<T: Scalar> Grammar<T> {
    /// The uniform distribution: every order at probability 1/6.
    pub fn uniform() -> Self {
        let sixth = T::one() / T::from_u32(6).unwrap();
        Grammar {
            p: std::array::from_fn(|_| sixth.clone()),
        }
    }

    /// Probability 1 on `order`, 0 elsewhere.
    pub fn one_hot(order: WordOrder) -> Self {
        Grammar {
            p: std::array::from_fn(|i| {
                if i == order.index() {
                    T::one()
                } else {
                    T::zero()
                }
            }),
        }
    }

    /// Construct from probabilities that must satisfy the simplex
    /// invariants exactly: no tolerance, suited to rational scalars.
    pub fn new_exact(p: [T; 6]) -> Result<Self, GrammarError>
    where
        T: ToPrimitive,
    {
        for (index, v) in p.iter().enumerate() {
            if *v < T::zero() {
                return Err(GrammarError::NegativeEntry {
                    index,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let sum = p.iter().fold(T::zero(), |acc, v| acc + v.clone());
        if sum != T::one() {
            return Err(GrammarError::NotNormalized {
                sum: sum.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Grammar { p })
    }

    pub fn probabilities(&self) -> &[T; 6] {
        &self.p
    }

    pub fn probability(&self, order: WordOrder) -> T {
        self.p[order.index()].clone()
    }

    pub fn max_probability(&self) -> T {
        self.p
            .iter()
            .cloned()
            .reduce(|a, b| if b > a { b } else { a })
            .unwrap()
    }

    /// True when one entry is exactly 1 and the rest exactly 0.
    pub fn is_one_hot(&self) -> bool {
        self.p.iter().filter(|v| **v == T::one()).count() == 1
            && self.p.iter().filter(|v| **v == T::zero()).count() == 5
    }

    /// Orders whose probability is within `tol` of the maximum, in
    /// canonical listing order. Never empty.
    pub fn argmax_orders_within(&self, tol: T) -> Vec<WordOrder> {
        let max = self.max_probability();
        let threshold = max - tol;
        WordOrder::ALL
            .iter()
            .copied()
            .filter(|o| self.p[o.index()] >= threshold)
            .collect()
    }
}

impl<T: Scalar + Float> Grammar<T> {
    /// Construct from probabilities, checking nonnegativity and that the
    /// sum is 1 within [`SIMPLEX_TOLERANCE`].
    pub fn new(p: [T; 6]) -> Result<Self, GrammarError> {
        for (index, v) in p.iter().enumerate() {
            if *v < T::zero() {
                return Err(GrammarError::NegativeEntry {
                    index,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let sum = p.iter().fold(T::zero(), |acc, v| acc + *v);
        if (sum - T::one()).abs() > T::from_f64(SIMPLEX_TOLERANCE).unwrap() {
            return Err(GrammarError::NotNormalized {
                sum: sum.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Grammar { p })
    }

    /// Normalized entropy in [0, 1]: logarithm base 6, so the uniform
    /// grammar scores 1 and any one-hot grammar scores 0. Zero entries
    /// contribute nothing.
    pub fn entropy(&self) -> T {
        let acc = self
            .p
            .iter()
            .filter(|v| **v > T::zero())
            .fold(T::zero(), |acc, &v| acc + v * v.ln());
        if acc == T::zero() {
            T::zero()
        } else {
            -acc / T::from_u32(6).unwrap().ln()
        }
    }

    /// Draw an order with the grammar's probabilities. Consumes exactly one
    /// uniform sample from the stream.
    pub fn sample_order(&self, rng: &mut RandomStream) -> WordOrder
    where
        Standard: Distribution<T>,
    {
        let u: T = rng.gen();
        let mut cumulative = T::zero();
        for order in WordOrder::ALL {
            cumulative = cumulative + self.p[order.index()];
            if u < cumulative {
                return order;
            }
        }
        // Float dust can leave the cumulative sum fractionally below 1;
        // fall back to the last order carrying mass.
        WordOrder::ALL
            .into_iter()
            .rev()
            .find(|o| self.p[o.index()] > T::zero())
            .unwrap_or(WordOrder::Osv)
    }

    /// Orders tied for the maximum probability within
    /// [`ARGMAX_TIE_TOLERANCE`].
    pub fn argmax_orders(&self) -> Vec<WordOrder> {
        self.argmax_orders_within(T::from_f64(ARGMAX_TIE_TOLERANCE).unwrap())
    }

    /// A mutated copy: independent Gaussian noise of scale `noise` is added
    /// to every entry, negatives are clamped to zero, and the result is
    /// renormalized. If everything clamps to zero the uniform grammar is
    /// returned. Always consumes exactly six Gaussian samples.
    pub fn mutate(&self, rng: &mut RandomStream, noise: T) -> Self
    where
        StandardNormal: Distribution<T>,
    {
        let normal = Normal::new(T::zero(), noise).expect("noise scale must be non-negative");
        let perturbed = self.p.map(|v| {
            let moved = v + normal.sample(rng);
            if moved > T::zero() {
                moved
            } else {
                T::zero()
            }
        });
        if perturbed == self.p {
            // Zero noise (or an all-zero draw) must be the exact identity;
            // renormalizing would still nudge entries by float dust.
            return self.clone();
        }
        let sum = perturbed.iter().fold(T::zero(), |acc, &v| acc + v);
        if sum == T::zero() {
            Grammar::uniform()
        } else {
            Grammar {
                p: perturbed.map(|v| v / sum),
            }
        }
    }
}
