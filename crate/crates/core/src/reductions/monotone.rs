use serde::{Deserialize, Serialize};

use super::ReductionError;
use crate::game::{Color, ColoredInstance, Graph, Mode, Move};
use crate::solver::search::{Board, Labeling};
use crate::solver::{solve_fixed_exact, solve_free_exact, SearchBudget};

/// Free optimum of every coloring of a small graph over a fixed palette.
/// Colorings are indexed in lexicographic order, vertex 0 most significant.
#[derive(Clone, Debug)]
pub struct OptTable {
    n: usize,
    palette: Color,
    weights: Vec<usize>,
    values: Vec<u8>,
}

impl OptTable {
    pub const UNREACHABLE: u8 = u8::MAX;

    /// Level by level: a coloring has optimum `d` when some move leads to a
    /// coloring of optimum `d - 1`. Disconnected graphs stay unreachable
    /// (except the empty one).
    pub fn free(graph: &Graph, palette: Color) -> Self {
        let n = graph.vertex_count();
        let p = palette as usize;
        let size = p.checked_pow(n as u32).expect("table size fits in memory");
        let mut weights = vec![1; n];
        for v in (0..n.saturating_sub(1)).rev() {
            weights[v] = weights[v + 1] * p;
        }
        let mut table = OptTable {
            n,
            palette,
            weights,
            values: vec![Self::UNREACHABLE; size],
        };
        let board = Board::new(graph, palette);
        let mut lab = Labeling::default();
        let mut coloring = vec![1; n];
        for idx in 0..size {
            table.decode_into(idx, &mut coloring);
            board.label(&coloring, &mut lab);
            if lab.count() <= 1 {
                table.values[idx] = 0;
            }
        }
        let mut level = 0u8;
        loop {
            let mut changed = false;
            for idx in 0..size {
                if table.values[idx] != Self::UNREACHABLE {
                    continue;
                }
                table.decode_into(idx, &mut coloring);
                board.label(&coloring, &mut lab);
                'moves: for t in 0..lab.count() {
                    let old = lab.color(t) as isize;
                    let w: usize = lab
                        .members(t)
                        .iter()
                        .map(|&v| table.weights[v as usize])
                        .sum();
                    for c in 1..=palette as isize {
                        if c == old {
                            continue;
                        }
                        let child = (idx as isize + (c - old) * w as isize) as usize;
                        if table.values[child] == level {
                            table.values[idx] = level + 1;
                            changed = true;
                            break 'moves;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
            level += 1;
        }
        table
    }

    pub fn palette(&self) -> Color {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index(&self, coloring: &[Color]) -> usize {
        coloring
            .iter()
            .zip(&self.weights)
            .map(|(&c, &w)| (c as usize - 1) * w)
            .sum()
    }

    pub fn coloring(&self, idx: usize) -> Vec<Color> {
        let mut out = vec![1; self.n];
        self.decode_into(idx, &mut out);
        out
    }

    fn decode_into(&self, mut idx: usize, out: &mut [Color]) {
        let p = self.palette as usize;
        for v in (0..self.n).rev() {
            out[v] = (idx % p) as Color + 1;
            idx /= p;
        }
    }

    pub fn opt_at(&self, idx: usize) -> Option<usize> {
        let v = self.values[idx];
        (v != Self::UNREACHABLE).then_some(v as usize)
    }

    pub fn opt(&self, coloring: &[Color]) -> Option<usize> {
        self.opt_at(self.index(coloring))
    }
}

/// A coloring of a path with one pendant vertex and a single move that
/// raises the free optimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub path_len: usize,
    /// Path vertex the pendant (vertex `path_len`) hangs from.
    pub pendant_at: usize,
    pub coloring: Vec<Color>,
    #[serde(rename = "move")]
    pub mv: Move,
    pub opt_before: usize,
    pub opt_after: usize,
}

impl Witness {
    pub fn instance(&self) -> ColoredInstance {
        ColoredInstance::with_palette(
            pendant_path(self.path_len, self.pendant_at).into(),
            self.coloring.clone(),
            3,
        )
        .expect("witness colorings use the 3-color palette")
    }
}

fn pendant_path(len: usize, at: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
    edges.push((at, len));
    Graph::from_edges(len + 1, &edges).expect("pendant path is simple")
}

/// What [`find_witness`] looks for.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessQuery {
    pub max_path_len: usize,
    /// Only accept colorings with this free optimum before the move.
    pub opt_before: Option<usize>,
    /// Only consider moves whose new color already borders the played component.
    pub merging_only: bool,
}

impl WitnessQuery {
    /// The shape of the classic example: optimum 3 before the move.
    pub fn classic(max_path_len: usize) -> Self {
        WitnessQuery {
            max_path_len,
            opt_before: Some(3),
            merging_only: false,
        }
    }

    pub fn any(max_path_len: usize) -> Self {
        WitnessQuery {
            max_path_len,
            opt_before: None,
            merging_only: false,
        }
    }
}

/// [`find_witness`] with [`WitnessQuery::classic`].
pub fn find_nonmonotone_witness(max_path_len: usize) -> Result<Witness, ReductionError> {
    find_witness(WitnessQuery::classic(max_path_len))
}

/// Searches 3-colored paths with one pendant vertex attached to an interior
/// path vertex: increasing path length, colorings in lexicographic order
/// (all three colors used), pendant position, then moves by vertex and
/// color. Returns the first move that increases the free optimum.
pub fn find_witness(query: WitnessQuery) -> Result<Witness, ReductionError> {
    const PALETTE: Color = 3;
    for len in 3..=query.max_path_len {
        // an endpoint pendant would just make a longer path
        let tables: Vec<(usize, OptTable)> = (1..len - 1)
            .map(|at| (at, OptTable::free(&pendant_path(len, at), PALETTE)))
            .collect();
        let graphs: Vec<std::sync::Arc<Graph>> = (1..len - 1)
            .map(|at| pendant_path(len, at).into())
            .collect();
        for idx in 0..tables[0].1.len() {
            let coloring = tables[0].1.coloring(idx);
            let mut used = [false; 4];
            coloring.iter().for_each(|&c| used[c as usize] = true);
            if !used[1..].iter().all(|&u| u) {
                continue;
            }
            for ((at, table), graph) in tables.iter().zip(&graphs) {
                let before = table.opt_at(idx).expect("connected graph");
                if query.opt_before.is_some_and(|b| b != before) {
                    continue;
                }
                let state = crate::game::QuotientState::from_coloring(
                    graph.clone(),
                    PALETTE,
                    coloring.clone(),
                );
                for v in 0..=len {
                    let comp = state.component_of(v);
                    for c in 1..=PALETTE {
                        if query.merging_only
                            && !state
                                .component_neighbors(comp)
                                .iter()
                                .any(|&nb| state.component_color(nb as usize) == c)
                        {
                            continue;
                        }
                        let mv = Move::new(v, c);
                        let next = state.apply_move(mv).expect("move is in range");
                        let after = table.opt(next.coloring()).expect("connected graph");
                        if after > before {
                            return Ok(Witness {
                                path_len: len,
                                pendant_at: *at,
                                coloring,
                                mv,
                                opt_before: before,
                                opt_after: after,
                            });
                        }
                    }
                }
            }
        }
    }
    Err(ReductionError::NoWitness(query.max_path_len))
}

/// `OPT(after mv) - OPT(before)` for the free game, or for the fixed game at
/// the instance's pivot (the move must then play the pivot).
pub fn monotonicity_delta(
    instance: &ColoredInstance,
    mv: Move,
    mode: Mode,
    budget: &SearchBudget,
) -> Result<i64, ReductionError> {
    let after = instance
        .initial_state()
        .apply_move(mv)
        .map_err(|e| ReductionError::InvalidSolution(e.to_string()))?;
    let next = instance
        .recolored(after.coloring().to_vec())
        .map_err(|e| ReductionError::Internal(e.to_string()))?;
    let opt = |inst: &ColoredInstance| -> Result<usize, ReductionError> {
        let r = match mode {
            Mode::Free | Mode::SubsetFree => solve_free_exact(inst, budget)?,
            Mode::Fixed | Mode::SubsetFixed => {
                let p = inst
                    .pivot()
                    .ok_or(crate::solver::SolveError::InvalidPivot(usize::MAX))?;
                solve_fixed_exact(inst, p, budget)?
            }
        };
        match (r.is_optimal(), r.value) {
            (true, Some(v)) => Ok(v),
            _ => Err(ReductionError::BudgetExhausted),
        }
    };
    if mode.is_pivot_restricted() && instance.pivot() != Some(mv.vertex) {
        return Err(ReductionError::NotPivotMove(mv));
    }
    Ok(opt(&next)? as i64 - opt(instance)? as i64)
}
