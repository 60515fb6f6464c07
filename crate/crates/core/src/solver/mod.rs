//! Exact solvers, lower bounds, approximations and the Free-to-Fixed
//! solution conversion.

mod bounds;
mod budget;
mod convert;
mod heuristics;
pub(crate) mod search;

use thiserror::Error;

use crate::game::{MoveError, Vertex};
use crate::kernel::PartitionError;

pub use bounds::{fixed_lower_bound, lower_bound};
pub use budget::{Decision, SearchBudget, SolveResult, SolveStatus, SolverOptions};
pub use convert::{free_to_fixed, free_to_fixed_traced, project_subset_fixed, ConversionTrace};
pub use heuristics::{approx_free, greedy_fixed, module_heuristic};
pub use search::{
    decide_free_at_most, decide_free_at_most_with, solve_fixed_exact, solve_fixed_exact_with,
    solve_free_exact, solve_free_exact_with,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("the graph is disconnected and can never be flooded")]
    Disconnected,
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("pivot {0} is not a vertex of the graph")]
    InvalidPivot(Vertex),
    #[error("decision procedures need at least one budget limit")]
    UnboundedBudget,
    #[error("input solution is invalid: {0}")]
    InvalidSolution(String),
    #[error("illegal move at index {index}: {source}")]
    IllegalMove { index: usize, source: MoveError },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

fn check_solvable(instance: &crate::game::ColoredInstance) -> Result<(), SolveError> {
    if instance.vertex_count() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    if !instance.is_connected() {
        return Err(SolveError::Disconnected);
    }
    Ok(())
}

fn check_pivot(instance: &crate::game::ColoredInstance, pivot: Vertex) -> Result<(), SolveError> {
    if pivot >= instance.vertex_count() {
        return Err(SolveError::InvalidPivot(pivot));
    }
    Ok(())
}
