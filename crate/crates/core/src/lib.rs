//! Flood-It engine and analysis toolkit.
//!
//! The [`game`] module defines boards and moves; [`solver`] holds the exact
//! and approximate solvers together with the Free-to-Fixed conversion;
//! [`kernel`] implements twin-based kernelization; [`reductions`] builds the
//! set-cover reduction, tight instances and monotonicity experiments; [`io`]
//! covers the JSON formats and seeded generators.

pub mod game;
pub mod io;
pub mod kernel;
pub mod reductions;
pub mod solver;

pub use game::{
    component, validate_sequence, Color, ColoredInstance, Graph, InstanceError, Mode, Move,
    MoveError, PlayedMove, QuotientState, SetMove, Solution, ValidationReport, Vertex,
};
