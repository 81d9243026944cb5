use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real number type used for term weights, shares and layout geometry.
///
/// Implemented for `f32` and `f64`. Everything numeric in this crate is
/// generic over it; the crate root exposes `f64` aliases for everyday use.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Serialize + DeserializeOwned + Send + Sync + 'static
{
    /// Converts a literal. Panics only if the value is unrepresentable, which
    /// cannot happen for the finite constants used in this crate.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits in a float")
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + Debug + Display + Default + Serialize + DeserializeOwned + Send + Sync + 'static
{
}

/// Total order on finite-or-NaN floats, NaN sorting last.
pub(crate) fn total_cmp<T: Scalar>(a: T, b: T) -> std::cmp::Ordering {
    a.partial_cmp(&b).unwrap_or_else(|| a.is_nan().cmp(&b.is_nan()))
}
