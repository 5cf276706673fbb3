use core::fmt;

use crate::group::P2Element;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// `|A| > B` or `B < 2`: the linear part is not expanding.
    NotExpanding { a: i64, b: i64 },
    /// `v` and `M v` do not span the plane.
    DependentVectors,
    /// `I - L` is singular, so the affine map has no unique fixed point.
    SingularMap,
    /// The enclosure iteration did not certify within its cap.
    NoConvergence { steps: usize },
    /// The requested point count exceeds the configured budget.
    BudgetExceeded { requested: u128, budget: u128 },
    /// Parameters outside the range an operation is defined for.
    OutOfRange { a: i64, b: i64 },
    /// The element is not in the neighbor set of the tile.
    NotANeighbor(P2Element),
    /// The neighbor count has no disk-likeness criterion.
    Undecided { neighbor_count: usize },
    /// Intersection witnesses need `2|A| >= B + 3`.
    OutOfRegime { a: i64, b: i64 },
    /// Text that does not parse as a group element.
    Parse,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotExpanding { a, b } => {
                write!(f, "(A, B) = ({a}, {b}) is not expanding: need B >= 2 and |A| <= B")
            }
            Error::DependentVectors => write!(f, "v and Mv are linearly dependent"),
            Error::SingularMap => write!(f, "affine map has no unique fixed point"),
            Error::NoConvergence { steps } => {
                write!(f, "enclosure not certified after {steps} steps")
            }
            Error::BudgetExceeded { requested, budget } => {
                write!(f, "{requested} points requested, budget is {budget}")
            }
            Error::OutOfRange { a, b } => {
                write!(f, "(A, B) = ({a}, {b}) outside A >= -1, 2A < B + 3")
            }
            Error::NotANeighbor(g) => write!(f, "{g} is not a neighbor"),
            Error::Undecided { neighbor_count } => {
                write!(f, "no disk-likeness criterion for {neighbor_count} neighbors")
            }
            Error::OutOfRegime { a, b } => {
                write!(f, "(A, B) = ({a}, {b}) does not satisfy 2|A| >= B + 3")
            }
            Error::Parse => write!(f, "malformed group element"),
        }
    }
}

impl core::error::Error for Error {}
