use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Color, Vertex};

/// Recolor `Comp(col, vertex)` to `color`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    #[serde(rename = "v")]
    pub vertex: Vertex,
    #[serde(rename = "c")]
    pub color: Color,
}

impl Move {
    pub fn new(vertex: Vertex, color: Color) -> Self {
        Move { vertex, color }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.vertex, self.color)
    }
}

/// Recolor exactly `vertices`. Legal when the set is a full monochromatic
/// component, or a connected subset of the pivot component containing the pivot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetMove {
    #[serde(rename = "set")]
    pub vertices: Vec<Vertex>,
    #[serde(rename = "c")]
    pub color: Color,
}

impl SetMove {
    pub fn new(mut vertices: Vec<Vertex>, color: Color) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        SetMove { vertices, color }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// One step of a [`Solution`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlayedMove {
    Vertex(Move),
    Set(SetMove),
}

impl PlayedMove {
    pub fn color(&self) -> Color {
        match self {
            PlayedMove::Vertex(m) => m.color,
            PlayedMove::Set(s) => s.color,
        }
    }
}

impl From<Move> for PlayedMove {
    fn from(m: Move) -> Self {
        PlayedMove::Vertex(m)
    }
}

impl From<SetMove> for PlayedMove {
    fn from(m: SetMove) -> Self {
        PlayedMove::Set(m)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Free,
    Fixed,
    SubsetFree,
    SubsetFixed,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Free => "free",
            Mode::Fixed => "fixed",
            Mode::SubsetFree => "subset-free",
            Mode::SubsetFixed => "subset-fixed",
        }
    }

    pub fn is_pivot_restricted(self) -> bool {
        matches!(self, Mode::Fixed | Mode::SubsetFixed)
    }

    pub fn allows_set_moves(self) -> bool {
        matches!(self, Mode::SubsetFree | Mode::SubsetFixed)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An ordered move sequence tagged with the game variant it is played in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub mode: Mode,
    pub moves: Vec<PlayedMove>,
}

impl Solution {
    pub fn new(mode: Mode, moves: Vec<PlayedMove>) -> Self {
        Solution { mode, moves }
    }

    pub fn from_moves(mode: Mode, moves: impl IntoIterator<Item = Move>) -> Self {
        Solution {
            mode,
            moves: moves.into_iter().map(PlayedMove::Vertex).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// The plain moves, if the solution contains no set-moves.
    pub fn plain_moves(&self) -> Option<Vec<Move>> {
        self.moves
            .iter()
            .map(|m| match m {
                PlayedMove::Vertex(m) => Some(*m),
                PlayedMove::Set(_) => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solution_json_shape() {
        let sol = Solution::new(
            Mode::SubsetFixed,
            vec![Move::new(0, 2).into(), SetMove::new(vec![2, 0], 1).into()],
        );
        let text = serde_json::to_string(&sol).unwrap();
        assert_eq!(
            text,
            r#"{"mode":"subset-fixed","moves":[{"v":0,"c":2},{"set":[0,2],"c":1}]}"#
        );
        let back: Solution = serde_json::from_str(&text).unwrap();
        assert_eq!(back, sol);
    }
}
