use super::{check_pivot, check_solvable, SolveError};
use crate::game::{ColoredInstance, Mode, Move, QuotientState, Solution, Vertex};
use crate::kernel::TwinPartition;

/// Plays at the pivot the color that maximizes the resulting pivot
/// component, ties to the smallest color id.
pub fn greedy_fixed(instance: &ColoredInstance, pivot: Vertex) -> Result<Solution, SolveError> {
    check_solvable(instance)?;
    check_pivot(instance, pivot)?;
    let c_max = instance.c_max() as usize;
    let mut state = instance.initial_state();
    let mut moves = Vec::new();
    while !state.is_flooded() {
        let pc = state.component_of(pivot);
        let mut gain = vec![0usize; c_max + 1];
        for &nb in state.component_neighbors(pc) {
            let nb = nb as usize;
            gain[state.component_color(nb) as usize] += state.component_members(nb).len();
        }
        // connected and not flooded, so some neighbor exists
        let best = (1..=c_max)
            .filter(|&c| gain[c] > 0)
            .max_by(|&a, &b| gain[a].cmp(&gain[b]).then(b.cmp(&a)))
            .expect("pivot component has a neighbor");
        let m = Move::new(pivot, best as u8);
        state = state.apply_move(m).expect("pivot move is legal");
        moves.push(m);
    }
    Ok(Solution::from_moves(Mode::Fixed, moves))
}

/// Greedy pivot game from the smallest vertex of every initial component;
/// the shortest run is returned as a free solution.
pub fn approx_free(instance: &ColoredInstance) -> Result<Solution, SolveError> {
    check_solvable(instance)?;
    let state = instance.initial_state();
    let mut best: Option<Solution> = None;
    for id in 0..state.component_count() {
        let rep = state.component_members(id)[0];
        let sol = greedy_fixed(instance, rep)?;
        if best.as_ref().is_none_or(|b| sol.len() < b.len()) {
            best = Some(sol);
        }
    }
    let mut sol = best.expect("a non-empty graph has a component");
    sol.mode = Mode::Free;
    Ok(sol)
}

/// Picks a vertex `v` of one class, gives every other class a vertex of
/// `v`'s color, then cycles the remaining colors at `v`. The shortest such
/// sequence over all (class, color) choices is returned; its length is at
/// most `nd + c_max - 2`.
pub fn module_heuristic(
    instance: &ColoredInstance,
    partition: &TwinPartition,
) -> Result<Solution, SolveError> {
    check_solvable(instance)?;
    partition.validate(instance.graph())?;
    let start = instance.initial_state();
    if start.is_flooded() {
        return Ok(Solution::new(Mode::Free, vec![]));
    }
    let classes = partition.classes();
    let mut best: Option<Vec<Move>> = None;
    for (ci, class) in classes.iter().enumerate() {
        let mut tried = [false; 256];
        for &v in &class.vertices {
            let c = instance.coloring()[v];
            if std::mem::replace(&mut tried[c as usize], true) {
                continue;
            }
            let Some(moves) = module_sequence(&start, classes, ci, v) else {
                continue;
            };
            if best.as_ref().is_none_or(|b| moves.len() < b.len()) {
                best = Some(moves);
            }
        }
    }
    let moves = best.expect("a connected instance always admits a module sequence");
    Ok(Solution::from_moves(Mode::Free, moves))
}

fn module_sequence(
    start: &QuotientState,
    classes: &[crate::kernel::TwinClass],
    home: usize,
    v: Vertex,
) -> Option<Vec<Move>> {
    let c = start.coloring()[v];
    let mut state = start.clone();
    let mut moves = Vec::new();
    for (i, class) in classes.iter().enumerate() {
        if i == home || class.vertices.iter().any(|&w| state.coloring()[w] == c) {
            continue;
        }
        let m = Move::new(class.vertices[0], c);
        state = state.apply_move(m).ok()?;
        moves.push(m);
    }
    for other in state.colors_present() {
        if other == c || state.is_flooded() {
            continue;
        }
        let m = Move::new(v, other);
        state = state.apply_move(m).ok()?;
        moves.push(m);
    }
    state.is_flooded().then_some(moves)
}
