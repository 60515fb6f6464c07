//! Colored graphs, monochromatic components, moves and flooding validation.

mod error;
mod graph;
mod instance;
mod moves;
mod quotient;
mod validate;

pub use error::{InstanceError, MoveError};
pub use graph::Graph;
pub use instance::{component, ColoredInstance};
pub use moves::{Mode, Move, PlayedMove, SetMove, Solution};
pub use quotient::{QuotientState, SetMoveKind};
pub use validate::{play, replay, validate_sequence, ValidationFailure, ValidationReport};

pub type Vertex = usize;
/// Color ids are dense and 1-based; 0 is never a valid color.
pub type Color = u8;
