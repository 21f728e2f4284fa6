//! Exact verification of genus computations for generating tuples of finite
//! groups acting on rational representations.
//!
//! The genus of a triple `(G, V, g)` with `g = (g_1, ..., g_n)` a generating
//! tuple of `G` with product one is half of
//!
//! ```text
//! -2 dim V + 2 dim V^G + sum_i (dim V - dim V^{g_i})
//! ```
//!
//! and is a non-negative integer whenever `V` is rational. This crate computes
//! that quantity exactly from three encodings of `V` (deleted permutation
//! modules, exact rational matrices, integer-valued character data), and
//! carries the group-theoretic and arithmetic machinery needed to check the
//! standard sources of genus-one tuples:
//!
//! * [`permgroup`]: permutations, cycle notation, Schreier-Sims.
//! * [`exactlin`]: exact rational matrices and fraction-free elimination.
//! * [`repgenus`]: representations, genus reports, randomized tuple search.
//! * [`weyl`]: root systems, reflection representations and the two Weyl
//!   group tuple constructions.
//! * [`chartab`]: character-table files, Burnside averages, class structure
//!   constants.
//! * [`modular`]: congruence subgroup indices, the genus of `X_0(N)`, and
//!   Steinberg witnesses from elliptic curve conductors.
//! * [`cremona`]: Cremona `allcurves` ingestion.
//! * [`data`]: the bundled datasets.

pub mod chartab;
pub mod cremona;
pub mod data;
pub mod exactlin;
pub mod modular;
pub mod par;
pub mod permgroup;
pub mod repgenus;
pub mod weyl;

pub use par::Execution;

/// Serializes through `Display`, for unbounded integers in reports.
pub(crate) fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
