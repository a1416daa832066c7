//! Syntactic roles, the six word orders, and the role-position distance.

use crate::scalar::{thirds, Scalar};
use serde::{Deserialize, Serialize};

/// One of the three syntactic roles a sentence position can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Subject,
    Verb,
    Object,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::Subject, Role::Verb, Role::Object];
}

/// A permutation of {subject, verb, object}: which role each of the three
/// sentence positions carries. Canonical listing order is SVO, SOV, VSO,
/// VOS, OVS, OSV; `index` refers to that listing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum WordOrder {
    Svo,
    Sov,
    Vso,
    Vos,
    Ovs,
    Osv,
}

use Role::{Object as O, Subject as S, Verb as V};
use WordOrder::{Osv, Ovs, Sov, Svo, Vos, Vso};

impl WordOrder {
    /// All six orders in canonical listing order.
    pub const ALL: [WordOrder; 6] = [Svo, Sov, Vso, Vos, Ovs, Osv];

    /// Position in the canonical listing, 0..6.
    pub fn index(self) -> usize {
        self as usize
    }

    /// Inverse of [`WordOrder::index`].
    pub fn from_index(index: usize) -> Option<WordOrder> {
        Self::ALL.get(index).copied()
    }

    /// The role carried by each of the three sentence positions.
    pub fn positions(self) -> [Role; 3] {
        match self {
            Svo => [S, V, O],
            Sov => [S, O, V],
            Vso => [V, S, O],
            Vos => [V, O, S],
            Ovs => [O, V, S],
            Osv => [O, S, V],
        }
    }

    /// The sentence position (0..3) where `role` sits under this order.
    pub fn position_of(self, role: Role) -> usize {
        self.positions()
            .iter()
            .position(|&r| r == role)
            .expect("every role appears exactly once")
    }

    /// Reconstruct an order from a role-per-position array, if it is a
    /// permutation of the three roles.
    pub fn from_positions(positions: [Role; 3]) -> Option<WordOrder> {
        Self::ALL.iter().copied().find(|o| o.positions() == positions)
    }

    pub fn label(self) -> &'static str {
        match self {
            Svo => "SVO",
            Sov => "SOV",
            Vso => "VSO",
            Vos => "VOS",
            Ovs => "OVS",
            Osv => "OSV",
        }
    }
}

impl std::fmt::Display for WordOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Number of sentence positions where `a` and `b` assign different roles.
/// Always 0, 2 or 3: two distinct permutations of three elements cannot
/// differ in exactly one position.
pub fn position_mismatches(a: WordOrder, b: WordOrder) -> u32 {
    a.positions()
        .iter()
        .zip(b.positions().iter())
        .filter(|(x, y)| x != y)
        .count() as u32
}

/// Fraction of sentence positions whose roles differ between two orders;
/// takes the values 0, 2/3 and 1 in the target scalar.
pub fn role_distance<T: Scalar>(a: WordOrder, b: WordOrder) -> T {
    thirds(position_mismatches(a, b))
}

/// Precomputed 6×6 table of [`role_distance`] values, indexed canonically.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderDistanceMatrix<T> {
    entries: [[T; 6]; 6],
}

impl<T: Scalar> OrderDistanceMatrix<T> {
    pub fn get(&self, a: WordOrder, b: WordOrder) -> T {
        self.entries[a.index()][b.index()].clone()
    }
}

/// Build the full distance table: `d[i][j] = role_distance(order i, order j)`.
pub fn build_distance_matrix<T: Scalar>() -> OrderDistanceMatrix<T> {
    let entries = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            role_distance(
                WordOrder::from_index(i).unwrap(),
                WordOrder::from_index(j).unwrap(),
            )
        })
    });
    OrderDistanceMatrix { entries }
}
