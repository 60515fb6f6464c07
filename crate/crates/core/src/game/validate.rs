use serde::{Deserialize, Serialize};

use super::{ColoredInstance, Mode, MoveError, PlayedMove, QuotientState, Solution, Vertex};

/// Outcome of replaying a [`Solution`] from an instance's initial coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub length: usize,
    /// Moves whose played set excludes the pivot (0 without a pivot).
    pub bad_moves: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<ValidationFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationFailure {
    /// Index of the first illegal move; `None` when every move was legal but
    /// the final coloring is not constant.
    pub index: Option<usize>,
    pub reason: String,
}

/// Plays one move under the rules of `mode`. Returns the new state and
/// whether the move was bad (its played set excludes the pivot).
pub fn play(
    state: &QuotientState,
    mv: &PlayedMove,
    mode: Mode,
    pivot: Option<Vertex>,
) -> Result<(QuotientState, bool), MoveError> {
    if mode.is_pivot_restricted() && pivot.is_none() {
        return Err(MoveError::PivotRequired);
    }
    match mv {
        PlayedMove::Vertex(m) => {
            if m.vertex >= state.vertex_count() {
                return Err(MoveError::InvalidVertex {
                    vertex: m.vertex,
                    count: state.vertex_count(),
                });
            }
            if mode.is_pivot_restricted() && Some(m.vertex) != pivot {
                return Err(MoveError::MissesPivot);
            }
            let bad = pivot.is_some_and(|p| state.component_of(p) != state.component_of(m.vertex));
            Ok((state.apply_move(*m)?, bad))
        }
        PlayedMove::Set(s) => {
            if !mode.allows_set_moves() {
                return Err(MoveError::SetMoveInPlainMode(mode.name()));
            }
            let contains_pivot = pivot.is_some_and(|p| s.contains(p));
            if mode.is_pivot_restricted() && !contains_pivot {
                return Err(MoveError::MissesPivot);
            }
            let next = state.apply_set_move(s, pivot)?;
            Ok((next, pivot.is_some() && !contains_pivot))
        }
    }
}

/// Replays `sol`, returning every intermediate state (initial state first).
pub fn replay(
    instance: &ColoredInstance,
    sol: &Solution,
) -> Result<Vec<QuotientState>, (usize, MoveError)> {
    let mut states = vec![instance.initial_state()];
    for (i, mv) in sol.moves.iter().enumerate() {
        let (next, _) =
            play(states.last().unwrap(), mv, sol.mode, instance.pivot()).map_err(|e| (i, e))?;
        states.push(next);
    }
    Ok(states)
}

pub fn validate_sequence(instance: &ColoredInstance, sol: &Solution) -> ValidationReport {
    let pivot = instance.pivot();
    let mut state = instance.initial_state();
    let mut bad_moves = 0;
    for (i, mv) in sol.moves.iter().enumerate() {
        match play(&state, mv, sol.mode, pivot) {
            Ok((next, bad)) => {
                state = next;
                bad_moves += bad as usize;
            }
            Err(e) => {
                return ValidationReport {
                    valid: false,
                    length: sol.len(),
                    bad_moves,
                    failure: Some(ValidationFailure {
                        index: Some(i),
                        reason: e.to_string(),
                    }),
                }
            }
        }
    }
    let flooded = state.is_flooded();
    ValidationReport {
        valid: flooded,
        length: sol.len(),
        bad_moves,
        failure: (!flooded).then(|| ValidationFailure {
            index: None,
            reason: "final coloring is not constant".to_string(),
        }),
    }
}
