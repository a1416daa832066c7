//! Scalar abstraction shared by the float simulation and the exact verifier.

use num_traits::{FromPrimitive, Num};

/// Numeric scalar the domain math is generic over: `f32`/`f64` for
/// simulation, [`crate::Exact`] rationals for exact verification.
pub trait Scalar: Num + FromPrimitive + PartialOrd + Clone {}

impl<T: Num + FromPrimitive + PartialOrd + Clone> Scalar for T {}

/// `n / 3` in the target scalar; the basic quantum of role distance.
pub(crate) fn thirds<T: Scalar>(n: u32) -> T {
    T::from_u32(n).expect("small integer fits any scalar") / T::from_u32(3).expect("3 fits")
}
