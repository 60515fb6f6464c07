//! Instance constructions: the set-cover reduction, the tight 2-colored
//! path family and monotonicity experiments.

mod mcsc;
mod monotone;

use thiserror::Error;

use crate::game::{ColoredInstance, Graph};
use crate::solver::SolveError;

pub use mcsc::{
    cover_to_flooding, flooding_to_cover, is_vertex_cover_color, mcsc_to_floodit,
    reduction_within_2k, McscInstance, ReductionLayout,
};
pub use monotone::{
    find_nonmonotone_witness, find_witness, monotonicity_delta, OptTable, Witness, WitnessQuery,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("set-cover instance has no collections")]
    NoCollections,
    #[error("collection {0} is empty")]
    EmptyCollection(usize),
    #[error("element {element} is outside the universe of size {universe}")]
    ElementOutOfRange { element: usize, universe: usize },
    #[error("{0} collections need more colors than supported")]
    TooManyCollections(usize),
    #[error("padding must be at least 1, got {0}")]
    PaddingTooSmall(usize),
    #[error("the choice of sets does not cover the universe")]
    NotACover,
    #[error("solution has {length} moves, more than {limit}")]
    TooLong { length: usize, limit: usize },
    #[error("cover extraction needs padding {required}, instance has {padding}")]
    InsufficientPadding { padding: usize, required: usize },
    #[error("cover extraction failed: {0}")]
    ClaimViolated(String),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("path family index must be at least 1, got {0}")]
    InvalidSize(usize),
    #[error("no witness up to path length {0}")]
    NoWitness(usize),
    #[error("exact search ran out of budget")]
    BudgetExhausted,
    #[error("move {0} does not play the pivot")]
    NotPivotMove(crate::game::Move),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("internal construction error: {0}")]
    Internal(String),
}

/// Path on `2n + 1` vertices colored 1, 2, 1, …, pivot at vertex 0.
pub fn tight_path(n: usize) -> Result<ColoredInstance, ReductionError> {
    if n < 1 {
        return Err(ReductionError::InvalidSize(n));
    }
    let len = 2 * n + 1;
    let coloring = (0..len).map(|i| 1 + (i % 2) as u8).collect();
    let inst = ColoredInstance::new(Graph::path(len), coloring)
        .and_then(|i| i.with_pivot(0))
        .map_err(|e| ReductionError::Internal(e.to_string()))?;
    Ok(inst)
}
