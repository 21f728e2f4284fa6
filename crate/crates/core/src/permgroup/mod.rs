//! Exact permutation arithmetic, cycle notation, and Schreier-Sims.

mod bsgs;
mod notation;
mod permutation;
mod tuple;

pub use bsgs::{orbit, Bsgs, PermLike, PermutationGroup, Tracked, TrackingError};
pub use notation::{parse_cycles, parse_group_file, parse_tuple_file, GroupFile, NotationError};
pub use permutation::{Domain, Permutation};
pub use tuple::{diagnose_product, product_of, tuple_product_check, Diagnosis, GeneratingTuple, ProductCheck};

use serde::Serialize;
use thiserror::Error;

/// Order in which a written product `g_1 g_2 ... g_n` is applied to points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `(ab)(x) = b(a(x))`: the leftmost factor acts first.
    LeftToRight,
    /// `(ab)(x) = a(b(x))`: function composition, the rightmost factor acts first.
    RightToLeft,
}

impl Convention {
    pub const BOTH: [Convention; 2] = [Convention::LeftToRight, Convention::RightToLeft];

    pub fn name(self) -> &'static str {
        match self {
            Convention::LeftToRight => "left-to-right",
            Convention::RightToLeft => "right-to-left",
        }
    }
}

/// Operations shared by everything that can appear in a generating tuple.
///
/// `then` is the left-to-right product: `a.then(b)` acts by `a` first.
pub trait GroupElement: Clone {
    fn then(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_identity(&self) -> bool;
    fn identity_like(&self) -> Self;

    /// Product of `a` and `b` as written `ab` under `convention`.
    fn product(a: &Self, b: &Self, convention: Convention) -> Self {
        match convention {
            Convention::LeftToRight => a.then(b),
            Convention::RightToLeft => b.then(a),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image array is not a bijection on 0..{0}")]
    NotABijection(usize),
    #[error("index {index} out of range for a tuple of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("expected a relation of length 3, got {0} elements")]
    NotARelation(usize),
    #[error("empty generator list")]
    NoGenerators,
}
