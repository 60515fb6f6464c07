use thiserror::Error;

use super::{Color, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("asymmetric adjacency: {0} lists {1} but not vice versa")]
    AsymmetricAdjacency(Vertex, Vertex),
    #[error("coloring has {found} entries, graph has {expected} vertices")]
    ColorCountMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} has color {color}, outside [1, {c_max}]")]
    ColorOutOfRange {
        vertex: Vertex,
        color: i64,
        c_max: usize,
    },
    #[error("palette of {0} colors exceeds the supported maximum of 255")]
    PaletteTooLarge(usize),
    #[error("pivot {0} is not a vertex of the graph")]
    InvalidPivot(Vertex),
}

/// Why a move could not be applied. The message names the violated clause.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    InvalidVertex { vertex: Vertex, count: usize },
    #[error("color {color} outside [1, {c_max}]")]
    InvalidColor { color: Color, c_max: Color },
    #[error("set-move has an empty vertex set")]
    EmptySet,
    #[error("set-move vertices are not monochromatic")]
    NotMonochromatic,
    #[error("set-move vertices do not induce a connected subgraph")]
    NotConnected,
    #[error("set-move is neither a full monochromatic component nor a pivot-containing subset of the pivot component")]
    NotLegalForm,
    #[error("move does not touch the pivot")]
    MissesPivot,
    #[error("mode requires a pivot but the instance has none")]
    PivotRequired,
    #[error("set-moves are not allowed in {0} mode")]
    SetMoveInPlainMode(&'static str),
}
