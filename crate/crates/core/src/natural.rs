//! The scalar type carried by literals.
//!
//! Every semantics in the crate is generic over a [`Natural`]: any unsigned
//! integer type with checked arithmetic. Machine-width instances (`u32`,
//! `u64`, `u128`) fault on addition overflow; [`num_bigint::BigUint`] is
//! unbounded and never does.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{CheckedAdd, CheckedSub, FromPrimitive, Num, Unsigned};

/// An unsigned integer type usable as the literal domain.
pub trait Natural:
    Num + Unsigned + CheckedAdd + CheckedSub + FromPrimitive + Clone + Ord + Hash + Debug + Display + Send + Sync + 'static
{
    /// Builds a natural from a small machine integer.
    ///
    /// Panics if `n` does not fit, which only happens for enumeration bounds
    /// wider than the scalar type itself.
    fn from_small(n: u64) -> Self {
        Self::from_u64(n).unwrap_or_else(|| panic!("{n} does not fit the literal type"))
    }
}

impl<T> Natural for T where
    T: Num
        + Unsigned
        + CheckedAdd
        + CheckedSub
        + FromPrimitive
        + Clone
        + Ord
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}
