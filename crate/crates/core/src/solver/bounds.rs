use std::collections::VecDeque;

use crate::game::{QuotientState, Vertex};

/// Distinct colors minus one, plus one more when every present color
/// induces a disconnected subgraph. Never exceeds the free optimum.
pub fn lower_bound(state: &QuotientState) -> usize {
    count_bound(&state.components_per_color())
}

pub(crate) fn count_bound(per_color: &[usize]) -> usize {
    let distinct = per_color.iter().filter(|&&k| k > 0).count();
    if distinct == 0 {
        return 0;
    }
    let all_split = per_color.iter().all(|&k| k == 0 || k >= 2);
    distinct - 1 + all_split as usize
}

/// Bound for the pivot game: the free bound, the number of distinct colors
/// outside the pivot component (each must be played at least once), and the
/// pivot component's eccentricity in the component graph (each move grows the
/// pivot component by at most one layer).
pub fn fixed_lower_bound(state: &QuotientState, pivot: Vertex) -> usize {
    let start = state.component_of(pivot);
    let k = state.component_count();
    let mut outside = vec![false; state.c_max() as usize + 1];
    for id in 0..k {
        if id != start {
            outside[state.component_color(id) as usize] = true;
        }
    }
    let colors = outside.iter().filter(|&&b| b).count();
    let mut dist = vec![usize::MAX; k];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    let mut ecc = 0;
    while let Some(c) = queue.pop_front() {
        ecc = ecc.max(dist[c]);
        for &nb in state.component_neighbors(c) {
            let nb = nb as usize;
            if dist[nb] == usize::MAX {
                dist[nb] = dist[c] + 1;
                queue.push_back(nb);
            }
        }
    }
    lower_bound(state).max(colors).max(ecc)
}
