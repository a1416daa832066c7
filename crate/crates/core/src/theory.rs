//! Exact verification that only fixed-word-order grammars communicate
//! perfectly.
//!
//! Both hearer models are checked over an exhaustive rational grid on the
//! simplex: expected self-communication distance must vanish exactly on
//! the six one-hot grammars and nowhere else. Rational arithmetic keeps
//! the "equals zero" test tolerance-free.

use crate::grammar::Grammar;
use crate::order::{role_distance, WordOrder};
use crate::scalar::Scalar;
use crate::Exact;
use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// All grammars whose entries are multiples of `1/resolution`.
#[derive(Debug, Clone)]
pub struct SimplexGrid {
    resolution: u32,
    points: Vec<Grammar<Exact>>,
}

impl SimplexGrid {
    /// Enumerate the grid in lexicographic count order. The point count is
    /// C(resolution + 5, 5).
    pub fn enumerate(resolution: u32) -> SimplexGrid {
        let mut points = Vec::new();
        let mut counts = [0u32; 6];
        fill(&mut points, &mut counts, 0, resolution, resolution);
        SimplexGrid { resolution, points }
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Grammar<Exact>] {
        &self.points
    }
}

fn fill(
    points: &mut Vec<Grammar<Exact>>,
    counts: &mut [u32; 6],
    position: usize,
    remaining: u32,
    resolution: u32,
) {
    if position == 5 {
        counts[5] = remaining;
        let entries =
            counts.map(|c| Exact::new(i64::from(c), i64::from(resolution)));
        points.push(Grammar::new_exact(entries).expect("grid point sums to 1"));
        return;
    }
    for c in 0..=remaining {
        counts[position] = c;
        fill(points, counts, position + 1, remaining - c, resolution);
    }
}

/// Expected role distance when the hearer *samples* an order from its own
/// grammar, independently of the speaker: Σᵢⱼ sᵢ·dᵢⱼ·hⱼ.
pub fn expected_distance_sampling<T: Scalar>(speaker: &Grammar<T>, hearer: &Grammar<T>) -> T {
    let mut total = T::zero();
    for i in WordOrder::ALL {
        for j in WordOrder::ALL {
            total = total
                + speaker.probability(i) * role_distance::<T>(i, j) * hearer.probability(j);
        }
    }
    total
}

/// Expected role distance when the hearer picks its most probable order,
/// averaging uniformly over exact argmax ties:
/// (1/|A|)·Σ_{j∈A} Σᵢ sᵢ·dᵢⱼ.
pub fn expected_distance_argmax<T: Scalar>(speaker: &Grammar<T>, hearer: &Grammar<T>) -> T {
    let ties = hearer.argmax_orders_within(T::zero());
    let mut total = T::zero();
    for &j in &ties {
        for i in WordOrder::ALL {
            total = total + speaker.probability(i) * role_distance::<T>(i, j);
        }
    }
    total / T::from_usize(ties.len()).unwrap()
}

/// The two readings of how a hearer turns its grammar into an order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HearerModel {
    Sampling,
    Argmax,
}

impl HearerModel {
    pub const ALL: [HearerModel; 2] = [HearerModel::Sampling, HearerModel::Argmax];

    pub fn label(self) -> &'static str {
        match self {
            HearerModel::Sampling => "sampling",
            HearerModel::Argmax => "argmax",
        }
    }

    fn self_distance(self, grammar: &Grammar<Exact>) -> Exact {
        match self {
            HearerModel::Sampling => expected_distance_sampling(grammar, grammar),
            HearerModel::Argmax => expected_distance_argmax(grammar, grammar),
        }
    }
}

fn serialize_rational<S: Serializer>(v: &Exact, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn serialize_optional_rational<S: Serializer>(
    v: &Option<Exact>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize_rational(v, s),
        None => s.serialize_none(),
    }
}

fn serialize_grammars<S: Serializer>(set: &[Grammar<Exact>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(set.len()))?;
    for g in set {
        let strings: Vec<String> = g.probabilities().iter().map(Exact::to_string).collect();
        seq.serialize_element(&strings)?;
    }
    seq.end()
}

/// Outcome of checking one hearer model over the grid.
#[derive(Debug, Clone, Serialize)]
pub struct ModelVerification {
    pub model: HearerModel,
    pub resolution: u32,
    pub grid_size: usize,
    /// Grid points with expected self-communication distance exactly zero.
    #[serde(serialize_with = "serialize_grammars")]
    pub zero_set: Vec<Grammar<Exact>>,
    /// Smallest strictly positive value seen over the grid.
    #[serde(
        rename = "min_nonzero_value",
        serialize_with = "serialize_optional_rational"
    )]
    pub min_nonzero: Option<Exact>,
    pub pass: bool,
}

/// Combined outcome over both hearer models.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub resolution: u32,
    pub grid_size: usize,
    pub pass: bool,
    pub models: Vec<ModelVerification>,
}

/// Enumerate the grid with speaker = hearer at every point and check, for
/// both hearer models, that the zero set is exactly the six one-hot
/// grammars. `resolution` must be at least 2: at resolution 1 the grid
/// consists of the vertices alone and the check is vacuous.
pub fn verify_theorem(resolution: u32) -> VerificationReport {
    assert!(resolution >= 2, "grid resolution must be at least 2");
    let grid = SimplexGrid::enumerate(resolution);
    let models: Vec<ModelVerification> = HearerModel::ALL
        .into_iter()
        .map(|model| {
            let mut zero_set = Vec::new();
            let mut min_nonzero: Option<Exact> = None;
            for point in grid.points() {
                let value = model.self_distance(point);
                if value.is_zero() {
                    zero_set.push(point.clone());
                } else if min_nonzero.is_none_or(|m| value < m) {
                    min_nonzero = Some(value);
                }
            }
            let pass = zero_set.len() == 6 && zero_set.iter().all(Grammar::is_one_hot);
            ModelVerification {
                model,
                resolution,
                grid_size: grid.len(),
                zero_set,
                min_nonzero,
                pass,
            }
        })
        .collect();
    VerificationReport {
        resolution,
        grid_size: grid.len(),
        pass: models.iter().all(|m| m.pass),
        models,
    }
}
