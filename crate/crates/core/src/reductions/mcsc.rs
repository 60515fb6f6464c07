use serde::{Deserialize, Serialize};

use super::ReductionError;
use crate::game::{replay, Color, ColoredInstance, Graph, Mode, Move, Solution, Vertex};
use crate::solver::{decide_free_at_most, Decision, SearchBudget};

/// Multicolored set cover: pick one set from each collection so that the
/// picked sets cover `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McscInstance {
    pub universe: usize,
    pub collections: Vec<Vec<Vec<usize>>>,
}

impl McscInstance {
    pub fn k(&self) -> usize {
        self.collections.len()
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        if self.collections.is_empty() {
            return Err(ReductionError::NoCollections);
        }
        for (i, family) in self.collections.iter().enumerate() {
            if family.is_empty() {
                return Err(ReductionError::EmptyCollection(i));
            }
            for set in family {
                if let Some(&e) = set.iter().find(|&&e| e >= self.universe) {
                    return Err(ReductionError::ElementOutOfRange {
                        element: e,
                        universe: self.universe,
                    });
                }
            }
        }
        // colors 1..=k plus k+1 must fit the color type
        if self.k() >= Color::MAX as usize {
            return Err(ReductionError::TooManyCollections(self.k()));
        }
        Ok(())
    }

    /// `cover[i]` indexes into `collections[i]`.
    pub fn is_cover(&self, cover: &[usize]) -> bool {
        if cover.len() != self.k() {
            return false;
        }
        let mut hit = vec![false; self.universe];
        for (family, &j) in self.collections.iter().zip(cover) {
            let Some(set) = family.get(j) else {
                return false;
            };
            for &e in set {
                if e < self.universe {
                    hit[e] = true;
                }
            }
        }
        hit.iter().all(|&h| h)
    }

    /// First cover in lexicographic order of choices, by brute force.
    pub fn find_cover(&self) -> Option<Vec<usize>> {
        if self.collections.iter().any(|f| f.is_empty()) {
            return None;
        }
        let mut choice = vec![0; self.k()];
        loop {
            if self.is_cover(&choice) {
                return Some(choice);
            }
            // odometer increment, last collection fastest
            let mut i = self.k();
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < self.collections[i].len() {
                    break;
                }
                choice[i] = 0;
            }
        }
    }
}

/// Where each part of the set-cover instance lives in the generated graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionLayout {
    pub k: usize,
    pub universe: usize,
    pub padding: usize,
    /// `set_vertices[i][j]` stands for set `j` of collection `i`, colored `i + 1`.
    pub set_vertices: Vec<Vec<Vertex>>,
    /// Padding block joined to every vertex of `set_vertices[i]`, colored `k + 1`.
    pub padding_vertices: Vec<Vec<Vertex>>,
    /// Leaves of each padding vertex (in `padding_vertices` order), colored `1..=k`.
    pub leaves: Vec<Vec<Vertex>>,
    /// One vertex per element, colored `k + 1`, joined to the sets containing it.
    pub element_vertices: Vec<Vertex>,
    /// Colored `k + 1` and joined to every set vertex.
    pub special: Vertex,
}

impl ReductionLayout {
    pub fn top_color(&self) -> Color {
        (self.k + 1) as Color
    }
}

/// Builds the flooding instance whose free optimum is at most `2k` exactly
/// when the set-cover instance is satisfiable (guaranteed for
/// `padding >= 3k`; smaller paddings are for experiments).
pub fn mcsc_to_floodit(
    m: &McscInstance,
    padding: usize,
) -> Result<(ColoredInstance, ReductionLayout), ReductionError> {
    m.validate()?;
    if padding < 1 {
        return Err(ReductionError::PaddingTooSmall(padding));
    }
    let k = m.k();
    let top = (k + 1) as Color;
    let mut next = 0;
    let mut alloc = |count: usize| {
        let ids: Vec<Vertex> = (next..next + count).collect();
        next += count;
        ids
    };
    let set_vertices: Vec<Vec<Vertex>> = m.collections.iter().map(|f| alloc(f.len())).collect();
    let padding_vertices: Vec<Vec<Vertex>> = (0..k).map(|_| alloc(padding)).collect();
    let leaves: Vec<Vec<Vertex>> = (0..k * padding).map(|_| alloc(k)).collect();
    let element_vertices = alloc(m.universe);
    let special = alloc(1)[0];
    let n = next;

    let mut coloring = vec![top; n];
    let mut edges = Vec::new();
    for (i, block) in set_vertices.iter().enumerate() {
        for &s in block {
            coloring[s] = (i + 1) as Color;
            edges.push((s, special));
            for &l in &padding_vertices[i] {
                edges.push((s, l));
            }
        }
        for (j, set) in m.collections[i].iter().enumerate() {
            let mut set = set.clone();
            set.sort_unstable();
            set.dedup();
            for e in set {
                edges.push((element_vertices[e], block[j]));
            }
        }
    }
    for (l, ls) in padding_vertices.iter().flatten().zip(&leaves) {
        for (c, &leaf) in ls.iter().enumerate() {
            coloring[leaf] = (c + 1) as Color;
            edges.push((*l, leaf));
        }
    }
    let graph =
        Graph::from_edges(n, &edges).map_err(|e| ReductionError::Internal(e.to_string()))?;
    let instance = ColoredInstance::new(graph, coloring)
        .map_err(|e| ReductionError::Internal(e.to_string()))?;
    let layout = ReductionLayout {
        k,
        universe: m.universe,
        padding,
        set_vertices,
        padding_vertices,
        leaves,
        element_vertices,
        special,
    };
    Ok((instance, layout))
}

/// `k` moves recoloring the chosen set vertices to `k + 1`, then colors
/// `1..=k` played at the special vertex.
pub fn cover_to_flooding(
    m: &McscInstance,
    layout: &ReductionLayout,
    cover: &[usize],
) -> Result<Solution, ReductionError> {
    if !m.is_cover(cover) {
        return Err(ReductionError::NotACover);
    }
    let mut moves: Vec<Move> = cover
        .iter()
        .enumerate()
        .map(|(i, &j)| Move::new(layout.set_vertices[i][j], layout.top_color()))
        .collect();
    moves.extend((1..=layout.k).map(|c| Move::new(layout.special, c as Color)));
    Ok(Solution::from_moves(Mode::Free, moves))
}

/// Reads a cover off a flooding sequence of at most `2k` moves: within the
/// first `k` moves some vertex of each set block is recolored from its block
/// color to `k + 1`.
pub fn flooding_to_cover(
    m: &McscInstance,
    layout: &ReductionLayout,
    instance: &ColoredInstance,
    sol: &Solution,
) -> Result<Vec<usize>, ReductionError> {
    let k = layout.k;
    if sol.len() > 2 * k {
        return Err(ReductionError::TooLong {
            length: sol.len(),
            limit: 2 * k,
        });
    }
    if layout.padding < 3 * k {
        return Err(ReductionError::InsufficientPadding {
            padding: layout.padding,
            required: 3 * k,
        });
    }
    if sol.mode != Mode::Free {
        return Err(ReductionError::InvalidSolution(format!(
            "expected a free solution, got {}",
            sol.mode.name()
        )));
    }
    let states = replay(instance, sol)
        .map_err(|(i, e)| ReductionError::InvalidSolution(format!("move {i}: {e}")))?;
    if !states.last().is_some_and(|s| s.is_flooded()) {
        return Err(ReductionError::InvalidSolution(
            "sequence does not flood".into(),
        ));
    }
    let moves = sol
        .plain_moves()
        .ok_or_else(|| ReductionError::InvalidSolution("set-moves are not expected".into()))?;
    let top = layout.top_color();
    let mut cover: Vec<Option<usize>> = vec![None; k];
    for (t, mv) in moves.iter().enumerate().take(k) {
        if mv.color != top {
            continue;
        }
        let before = &states[t];
        for &v in before.component(mv.vertex) {
            for (i, block) in layout.set_vertices.iter().enumerate() {
                if before.coloring()[v] != (i + 1) as Color || cover[i].is_some() {
                    continue;
                }
                if let Some(j) = block.iter().position(|&s| s == v) {
                    cover[i] = Some(j);
                }
            }
        }
    }
    let mut out = Vec::with_capacity(k);
    for (i, c) in cover.into_iter().enumerate() {
        match c {
            Some(j) => out.push(j),
            None => {
                return Err(ReductionError::ClaimViolated(format!(
                    "no vertex of set block {i} is recolored to {top} within the first {k} moves"
                )))
            }
        }
    }
    if !m.is_cover(&out) {
        return Err(ReductionError::ClaimViolated(format!(
            "extracted choice {out:?} leaves an element uncovered"
        )));
    }
    Ok(out)
}

/// Decides `OPT_Free <= 2k` on the reduction instance. A disconnected
/// instance (some element lies in no set) can never be flooded: `No`.
pub fn reduction_within_2k(
    instance: &ColoredInstance,
    layout: &ReductionLayout,
    budget: &SearchBudget,
) -> Result<Decision, ReductionError> {
    if !instance.is_connected() {
        return Ok(Decision::No);
    }
    Ok(decide_free_at_most(instance, 2 * layout.k, budget)?)
}

/// Whether the vertices of `color` touch every edge.
pub fn is_vertex_cover_color(instance: &ColoredInstance, color: Color) -> bool {
    let col = instance.coloring();
    instance
        .graph()
        .edges()
        .all(|(a, b)| col[a] == color || col[b] == color)
}
