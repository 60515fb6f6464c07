use serde::{Deserialize, Serialize};

use super::{check_pivot, SolveError};
use crate::game::{
    validate_sequence, ColoredInstance, Graph, Mode, Move, PlayedMove, QuotientState, SetMove,
    Solution, Vertex,
};

/// Which rewriting steps a conversion used.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversionTrace {
    /// First move already contains the pivot and is kept.
    pub kept: usize,
    /// A bad move merging into the pivot component became two pivot moves.
    pub split: usize,
    /// The first pivot-extending good move was hoisted to the front.
    pub hoisted: usize,
    /// Hoisting produced an invalid sequence; bad moves were eliminated
    /// back to front instead (each costs one extra move).
    pub eliminated: usize,
    /// Moves left over once the board was already flooded.
    pub dropped: usize,
}

/// Rewrites a (subset-)free solution into a subset-fixed one of length at
/// most `|sol| + b(sol)`, where `b` counts moves whose set misses the pivot.
pub fn free_to_fixed(
    instance: &ColoredInstance,
    pivot: Vertex,
    sol: &Solution,
) -> Result<Solution, SolveError> {
    free_to_fixed_traced(instance, pivot, sol).map(|(s, _)| s)
}

pub fn free_to_fixed_traced(
    instance: &ColoredInstance,
    pivot: Vertex,
    sol: &Solution,
) -> Result<(Solution, ConversionTrace), SolveError> {
    check_pivot(instance, pivot)?;
    let inst = instance
        .clone()
        .with_pivot(pivot)
        .map_err(|_| SolveError::InvalidPivot(pivot))?;
    let report = validate_sequence(&inst, sol);
    if !report.valid {
        let reason = report.failure.map(|f| f.reason).unwrap_or_default();
        return Err(SolveError::InvalidSolution(reason));
    }

    let mut rest = Vec::with_capacity(sol.len());
    let mut state = inst.initial_state();
    for mv in &sol.moves {
        let set = match mv {
            PlayedMove::Vertex(m) => SetMove::new(state.component(m.vertex).to_vec(), m.color),
            PlayedMove::Set(s) => s.clone(),
        };
        state = step(&state, &set, pivot)?;
        rest.push(set);
    }

    let graph = inst.graph();
    let mut trace = ConversionTrace::default();
    let mut out: Vec<SetMove> = Vec::new();
    let mut state = inst.initial_state();
    while !rest.is_empty() {
        if state.is_flooded() {
            trace.dropped += rest.len();
            break;
        }
        if rest[0].contains(pivot) {
            let m = rest.remove(0);
            state = step(&state, &m, pivot)?;
            out.push(m);
            trace.kept += 1;
            continue;
        }
        if let Some((i, before)) = find_merge_into_pivot(graph, &state, &rest, pivot)? {
            let pc = before.component(pivot).to_vec();
            let u = rest[i].vertices[0];
            let first = SetMove::new(pc.clone(), before.coloring()[u]);
            let mut union = pc;
            union.extend_from_slice(&rest[i].vertices);
            let second = SetMove::new(union, before.coloring()[pivot]);
            rest.splice(i..=i, [first, second]);
            trace.split += 1;
            continue;
        }
        if let Some(candidate) = hoist_extending_move(graph, &state, &rest, pivot)? {
            if accepts(&state, &candidate, &rest, pivot) {
                rest = candidate;
                trace.hoisted += 1;
                continue;
            }
        }
        rest = eliminate_bad_moves(graph, &state, rest, pivot)?;
        trace.eliminated += 1;
    }

    let out = Solution::new(Mode::SubsetFixed, out.into_iter().map(Into::into).collect());
    let check = validate_sequence(&inst, &out);
    if !check.valid || out.len() > report.length + report.bad_moves {
        return Err(SolveError::InvalidSolution(format!(
            "conversion produced an invalid sequence: {:?}",
            check.failure
        )));
    }
    Ok((out, trace))
}

/// Emits `(p, c_1), …, (p, c_k)` for a subset-fixed solution.
pub fn project_subset_fixed(
    instance: &ColoredInstance,
    pivot: Vertex,
    sol: &Solution,
) -> Result<Solution, SolveError> {
    check_pivot(instance, pivot)?;
    if !sol.mode.is_pivot_restricted() {
        return Err(SolveError::InvalidSolution(format!(
            "expected a subset-fixed solution, got {}",
            sol.mode.name()
        )));
    }
    let inst = instance
        .clone()
        .with_pivot(pivot)
        .map_err(|_| SolveError::InvalidPivot(pivot))?;
    let report = validate_sequence(&inst, sol);
    if !report.valid {
        let reason = report.failure.map(|f| f.reason).unwrap_or_default();
        return Err(SolveError::InvalidSolution(reason));
    }
    let out = Solution::from_moves(
        Mode::Fixed,
        sol.moves.iter().map(|m| Move::new(pivot, m.color())),
    );
    let check = validate_sequence(&inst, &out);
    if !check.valid {
        return Err(SolveError::InvalidSolution(format!(
            "projection is not a valid fixed solution: {:?}",
            check.failure
        )));
    }
    Ok(out)
}

fn step(state: &QuotientState, m: &SetMove, pivot: Vertex) -> Result<QuotientState, SolveError> {
    state
        .apply_set_move(m, Some(pivot))
        .map_err(|e| SolveError::InvalidSolution(e.to_string()))
}

fn run(
    state: &QuotientState,
    moves: &[SetMove],
    pivot: Vertex,
) -> Result<QuotientState, SolveError> {
    let mut s = state.clone();
    for m in moves {
        s = step(&s, m, pivot)?;
    }
    Ok(s)
}

fn touches(graph: &Graph, set: &[Vertex], other: &[Vertex]) -> bool {
    set.iter().any(|&v| {
        graph
            .neighbors(v)
            .iter()
            .any(|w| other.binary_search(w).is_ok())
    })
}

fn bad_count(moves: &[SetMove], pivot: Vertex) -> usize {
    moves.iter().filter(|m| !m.contains(pivot)).count()
}

/// First move that recolors a neighbor component of the pivot component to
/// the pivot's color, with the state just before it.
fn find_merge_into_pivot(
    graph: &Graph,
    state: &QuotientState,
    rest: &[SetMove],
    pivot: Vertex,
) -> Result<Option<(usize, QuotientState)>, SolveError> {
    let mut s = state.clone();
    for (i, m) in rest.iter().enumerate() {
        let pc = s.component(pivot);
        let u = m.vertices[0];
        if !m.contains(pivot)
            && m.color == s.coloring()[pivot]
            && s.coloring()[u] != s.coloring()[pivot]
            && s.component(u).len() == m.vertices.len()
            && touches(graph, &m.vertices, pc)
        {
            return Ok(Some((i, s)));
        }
        s = step(&s, m, pivot)?;
    }
    Ok(None)
}

/// The hoisting rewrite: find the first good move inside the initial pivot
/// component that takes the color of a neighbor `u`, play
/// `(Comp(col_0, p), col_0(u))` first, and widen earlier moves touching `u`
/// by the initial pivot component.
fn hoist_extending_move(
    graph: &Graph,
    state: &QuotientState,
    rest: &[SetMove],
    pivot: Vertex,
) -> Result<Option<Vec<SetMove>>, SolveError> {
    let p0 = state.component(pivot).to_vec();
    let mut frontier: Vec<Vertex> = p0
        .iter()
        .flat_map(|&v| graph.neighbors(v).iter().copied())
        .filter(|w| p0.binary_search(w).is_err())
        .collect();
    frontier.sort_unstable();
    frontier.dedup();

    let mut timeline = vec![state.clone()];
    let mut found = None;
    for (i, m) in rest.iter().enumerate() {
        let s = &timeline[i];
        if m.contains(pivot) && m.vertices.iter().all(|v| p0.binary_search(v).is_ok()) {
            if let Some(&u) = frontier.iter().find(|&&u| s.coloring()[u] == m.color) {
                found = Some((i, u));
                break;
            }
        }
        let next = step(s, m, pivot)?;
        timeline.push(next);
    }
    let Some((i, u)) = found else {
        return Ok(None);
    };
    let mut out = Vec::with_capacity(rest.len());
    out.push(SetMove::new(p0.clone(), state.coloring()[u]));
    for (j, m) in rest[..i].iter().enumerate() {
        if m.contains(u) {
            let mut widened = timeline[j].component(u).to_vec();
            widened.extend_from_slice(&p0);
            out.push(SetMove::new(widened, m.color));
        } else {
            out.push(m.clone());
        }
    }
    out.extend_from_slice(&rest[i + 1..]);
    Ok(Some(out))
}

fn accepts(state: &QuotientState, candidate: &[SetMove], rest: &[SetMove], pivot: Vertex) -> bool {
    candidate.len() <= rest.len()
        && bad_count(candidate, pivot) <= bad_count(rest, pivot)
        && candidate.first().is_some_and(|m| m.contains(pivot))
        && run(state, candidate, pivot).is_ok_and(|s| s.is_flooded())
}

/// Removes every bad move, last one first. A bad component `T` not touching
/// the pivot component commutes with the good moves after it, so it is pushed
/// later until it touches; then it becomes `(P, col(T))`, `(P ∪ T, c)` and
/// every later move is widened to the whole pivot component.
fn eliminate_bad_moves(
    graph: &Graph,
    state: &QuotientState,
    mut moves: Vec<SetMove>,
    pivot: Vertex,
) -> Result<Vec<SetMove>, SolveError> {
    while let Some(mut i) = moves.iter().rposition(|m| !m.contains(pivot)) {
        let mut before = run(state, &moves[..i], pivot)?;
        while !touches(graph, &moves[i].vertices, before.component(pivot)) {
            if i + 1 == moves.len() {
                return Err(SolveError::InvalidSolution(
                    "a final bad move cannot leave the pivot component untouched".into(),
                ));
            }
            before = step(&before, &moves[i + 1], pivot)?;
            moves.swap(i, i + 1);
            i += 1;
        }
        let pc = before.component(pivot).to_vec();
        let bad = moves[i].clone();
        let mut union = pc.clone();
        union.extend_from_slice(&bad.vertices);
        let mut rewritten = moves[..i].to_vec();
        rewritten.push(SetMove::new(pc, before.coloring()[bad.vertices[0]]));
        rewritten.push(SetMove::new(union, bad.color));
        let mut cur = run(&before, &rewritten[i..], pivot)?;
        for m in &moves[i + 1..] {
            let full = SetMove::new(cur.component(pivot).to_vec(), m.color);
            cur = step(&cur, &full, pivot)?;
            rewritten.push(full);
        }
        moves = rewritten;
    }
    Ok(moves)
}
