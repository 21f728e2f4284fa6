//! Representations, fixed-space dimensions and the genus of a tuple.
//!
//! For a rational representation `V` of `G` and a generating tuple
//! `(g_1, ..., g_n)` with product one, the integer
//!
//! ```text
//! lhs = -2 dim V + 2 dim V^G + sum_i (dim V - dim V^{g_i})
//! ```
//!
//! is even and non-negative; half of it is the genus. Nothing here assumes
//! that: parity, non-negativity (Scott's inequality), the product relation and
//! generation are all checked and reported, never presumed.

mod matrix;
mod perm;
mod report;
mod search;

pub use matrix::MatrixRep;
pub use perm::PermutationRep;
pub use report::{genus_of_tuple, scott_check, GenusReport, ScottCheck};
pub use search::{search_tuples, SearchParams};

use serde::Serialize;
use thiserror::Error;

use crate::chartab::{CharacterRep, ChartabError};
use crate::exactlin::{LinError, RationalMatrix};
use crate::permgroup::{Convention, PermError, Permutation, ProductCheck, Tracked, TrackingError};

#[derive(Debug, Error)]
pub enum RepError {
    #[error("group is not transitive: the orbit of the first point has {orbit} of {degree} points")]
    Intransitive { orbit: usize, degree: usize },
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("expected {expected} generator matrices, got {got}")]
    MatrixCount { expected: usize, got: usize },
    #[error("matrix for generator {index} is {rows}x{cols}, expected {dim}x{dim}")]
    MatrixShape { index: usize, rows: usize, cols: usize, dim: usize },
    #[error("element kind does not match the representation")]
    WrongElementKind,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Tracking(#[from] TrackingError),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
}

/// Outcome of a check that may be impossible to carry out from the data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Check {
    Pass,
    Fail { witness: String },
    Assumed { reason: String },
}

impl Check {
    pub fn fail(witness: impl Into<String>) -> Self {
        Check::Fail { witness: witness.into() }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Check::Fail { .. })
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Check::Fail { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Product relation status together with the conventions that were tried.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductStatus {
    pub check: Check,
    pub conventions: Option<ProductCheck>,
    pub detected: Option<Convention>,
}

impl ProductStatus {
    pub fn from_check(c: ProductCheck) -> Self {
        let check = if c.holds() {
            Check::Pass
        } else {
            Check::fail("the product is not the identity under either composition convention")
        };
        ProductStatus { check, conventions: Some(c), detected: c.detected() }
    }

    pub fn assumed(reason: impl Into<String>) -> Self {
        ProductStatus { check: Check::Assumed { reason: reason.into() }, conventions: None, detected: None }
    }
}

/// A rational representation `V` presented concretely enough to compute
/// `dim V^g` for the elements it understands.
pub trait Representation: Sync {
    type Element: Clone + Send + Sync;

    fn describe(&self) -> String;
    fn dim(&self) -> usize;
    /// `dim V^G`.
    fn invariant_dim(&self) -> usize;
    fn fixed_dim(&self, g: &Self::Element) -> Result<usize, RepError>;
    fn label(&self, g: &Self::Element) -> String;
    fn product_status(&self, elements: &[Self::Element]) -> ProductStatus;
    /// Whether the elements generate the whole group.
    fn generation(&self, elements: &[Self::Element]) -> Check;
}

/// An element in the vocabulary of one of the [`RationalRep`] variants.
#[derive(Clone, Debug, PartialEq)]
pub enum RepElement {
    Perm(Permutation),
    Matrix(Tracked<RationalMatrix>),
    Class(usize),
}

/// The three presentations of a rational representation.
pub enum RationalRep {
    DeletedPermutation(PermutationRep),
    ExactMatrix(MatrixRep),
    CharacterData(CharacterRep),
}

macro_rules! split {
    ($elems:expr, $variant:ident) => {
        $elems
            .iter()
            .map(|e| match e {
                RepElement::$variant(x) => Some(x.clone()),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
    };
}

impl Representation for RationalRep {
    type Element = RepElement;

    fn describe(&self) -> String {
        match self {
            RationalRep::DeletedPermutation(r) => r.describe(),
            RationalRep::ExactMatrix(r) => r.describe(),
            RationalRep::CharacterData(r) => r.describe(),
        }
    }

    fn dim(&self) -> usize {
        match self {
            RationalRep::DeletedPermutation(r) => r.dim(),
            RationalRep::ExactMatrix(r) => r.dim(),
            RationalRep::CharacterData(r) => r.dim(),
        }
    }

    fn invariant_dim(&self) -> usize {
        match self {
            RationalRep::DeletedPermutation(r) => r.invariant_dim(),
            RationalRep::ExactMatrix(r) => r.invariant_dim(),
            RationalRep::CharacterData(r) => r.invariant_dim(),
        }
    }

    fn fixed_dim(&self, g: &RepElement) -> Result<usize, RepError> {
        match (self, g) {
            (RationalRep::DeletedPermutation(r), RepElement::Perm(p)) => r.fixed_dim(p),
            (RationalRep::ExactMatrix(r), RepElement::Matrix(m)) => r.fixed_dim(m),
            (RationalRep::CharacterData(r), RepElement::Class(c)) => r.fixed_dim(c),
            _ => Err(RepError::WrongElementKind),
        }
    }

    fn label(&self, g: &RepElement) -> String {
        match (self, g) {
            (RationalRep::DeletedPermutation(r), RepElement::Perm(p)) => r.label(p),
            (RationalRep::ExactMatrix(r), RepElement::Matrix(m)) => r.label(m),
            (RationalRep::CharacterData(r), RepElement::Class(c)) => r.label(c),
            _ => "?".to_string(),
        }
    }

    fn product_status(&self, elements: &[RepElement]) -> ProductStatus {
        let mismatch = || ProductStatus { check: Check::fail("element kind does not match the representation"), conventions: None, detected: None };
        match self {
            RationalRep::DeletedPermutation(r) => split!(elements, Perm).map_or_else(mismatch, |v| r.product_status(&v)),
            RationalRep::ExactMatrix(r) => split!(elements, Matrix).map_or_else(mismatch, |v| r.product_status(&v)),
            RationalRep::CharacterData(r) => split!(elements, Class).map_or_else(mismatch, |v| r.product_status(&v)),
        }
    }

    fn generation(&self, elements: &[RepElement]) -> Check {
        let mismatch = || Check::fail("element kind does not match the representation");
        match self {
            RationalRep::DeletedPermutation(r) => split!(elements, Perm).map_or_else(mismatch, |v| r.generation(&v)),
            RationalRep::ExactMatrix(r) => split!(elements, Matrix).map_or_else(mismatch, |v| r.generation(&v)),
            RationalRep::CharacterData(r) => split!(elements, Class).map_or_else(mismatch, |v| r.generation(&v)),
        }
    }
}
