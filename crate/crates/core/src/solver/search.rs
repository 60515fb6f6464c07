use std::collections::{HashMap, VecDeque};
use std::time::Instant;

use super::bounds::count_bound;
use super::budget::{Decision, SearchBudget, SolveResult, SolveStatus, SolverOptions};
use super::heuristics::{approx_free, greedy_fixed, module_heuristic};
use super::{check_pivot, check_solvable, SolveError};
use crate::game::{Color, ColoredInstance, Graph, Mode, Move, Solution, Vertex};
use crate::kernel::twin_partition;

/// Transposition entries beyond this count are not stored.
const TT_CAPACITY: usize = 1 << 22;

/// Flat adjacency for the search loop.
pub(crate) struct Board {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    c_max: Color,
}

impl Board {
    pub(crate) fn new(graph: &Graph, c_max: Color) -> Self {
        let mut offsets = Vec::with_capacity(graph.vertex_count() + 1);
        let mut targets = Vec::with_capacity(2 * graph.edge_count());
        offsets.push(0);
        for v in 0..graph.vertex_count() {
            targets.extend(graph.neighbors(v).iter().map(|&w| w as u32));
            offsets.push(targets.len());
        }
        Board {
            offsets,
            targets,
            c_max,
        }
    }

    fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Components in order of their smallest vertex, members stored
    /// contiguously, plus per-component neighbor color masks.
    pub(crate) fn label(&self, coloring: &[Color], out: &mut Labeling) {
        let n = self.n();
        out.comp_of.clear();
        out.comp_of.resize(n, u32::MAX);
        out.order.clear();
        out.start.clear();
        out.color.clear();
        out.per_color.clear();
        out.per_color.resize(self.c_max as usize + 1, 0);
        for s in 0..n {
            if out.comp_of[s] != u32::MAX {
                continue;
            }
            let id = out.color.len() as u32;
            let c = coloring[s];
            out.start.push(out.order.len() as u32);
            out.color.push(c);
            out.per_color[c as usize] += 1;
            out.comp_of[s] = id;
            out.order.push(s as u32);
            let mut head = out.order.len() - 1;
            while head < out.order.len() {
                let v = out.order[head] as usize;
                head += 1;
                for &w in self.neighbors(v) {
                    let w = w as usize;
                    if out.comp_of[w] == u32::MAX && coloring[w] == c {
                        out.comp_of[w] = id;
                        out.order.push(w as u32);
                    }
                }
            }
        }
        out.start.push(n as u32);
        out.masks.clear();
        out.masks.resize(out.color.len(), [0; 4]);
        for v in 0..n {
            let cv = out.comp_of[v];
            for &w in self.neighbors(v) {
                let cw = out.comp_of[w as usize];
                if cw != cv {
                    let c = coloring[w as usize] as usize;
                    out.masks[cv as usize][c >> 6] |= 1 << (c & 63);
                }
            }
        }
    }

    /// Pivot-game lower bound over a labeling; mirrors `fixed_lower_bound`.
    fn fixed_bound(&self, lab: &Labeling, pivot: Vertex) -> usize {
        let k = lab.count();
        let start = lab.comp_of[pivot] as usize;
        let mut outside = lab.per_color.clone();
        outside[lab.color[start] as usize] -= 1;
        let colors = outside.iter().filter(|&&x| x > 0).count();
        let mut dist = vec![u32::MAX; k];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        let mut ecc = 0;
        while let Some(t) = queue.pop_front() {
            ecc = ecc.max(dist[t]);
            for &v in lab.members(t) {
                for &w in self.neighbors(v as usize) {
                    let u = lab.comp_of[w as usize] as usize;
                    if dist[u] == u32::MAX {
                        dist[u] = dist[t] + 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        lab.bound().max(colors).max(ecc as usize)
    }
}

#[derive(Default)]
pub(crate) struct Labeling {
    comp_of: Vec<u32>,
    order: Vec<u32>,
    start: Vec<u32>,
    color: Vec<Color>,
    per_color: Vec<usize>,
    masks: Vec<[u64; 4]>,
}

impl Labeling {
    pub(crate) fn count(&self) -> usize {
        self.color.len()
    }

    pub(crate) fn color(&self, t: usize) -> Color {
        self.color[t]
    }

    pub(crate) fn members(&self, t: usize) -> &[u32] {
        &self.order[self.start[t] as usize..self.start[t + 1] as usize]
    }

    fn bound(&self) -> usize {
        count_bound(&self.per_color)
    }

    fn touches(&self, t: usize, c: Color) -> bool {
        let c = c as usize;
        self.masks[t][c >> 6] & (1 << (c & 63)) != 0
    }
}

enum Step {
    Found,
    Fail,
    Abort,
}

struct Search<'a> {
    board: Board,
    budget: &'a SearchBudget,
    opts: SolverOptions,
    pivot: Option<Vertex>,
    started: Instant,
    expanded: u64,
    /// Coloring -> largest remaining depth proven insufficient.
    failed: HashMap<Vec<Color>, u32>,
    path: Vec<Move>,
    labels: Vec<Labeling>,
    scratch: Vec<Vec<Color>>,
}

impl<'a> Search<'a> {
    fn new(
        instance: &ColoredInstance,
        pivot: Option<Vertex>,
        budget: &'a SearchBudget,
        opts: SolverOptions,
    ) -> Self {
        Search {
            board: Board::new(instance.graph(), instance.c_max()),
            budget,
            opts,
            pivot,
            started: Instant::now(),
            expanded: 0,
            failed: HashMap::new(),
            path: Vec::new(),
            labels: Vec::new(),
            scratch: Vec::new(),
        }
    }

    fn tick(&mut self) -> bool {
        self.expanded += 1;
        if self
            .budget
            .max_expanded_states
            .is_some_and(|m| self.expanded > m)
        {
            return false;
        }
        if let Some(limit) = self.budget.time_limit {
            if self.expanded.is_multiple_of(256) && self.started.elapsed() > limit {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, coloring: &[Color], remaining: u32, depth: usize) -> Step {
        if !self.tick() {
            return Step::Abort;
        }
        if self.labels.len() <= depth {
            self.labels.push(Labeling::default());
            self.scratch.push(Vec::new());
        }
        let mut lab = std::mem::take(&mut self.labels[depth]);
        self.board.label(coloring, &mut lab);
        let step = self.expand(coloring, &lab, remaining, depth);
        self.labels[depth] = lab;
        step
    }

    fn expand(&mut self, coloring: &[Color], lab: &Labeling, remaining: u32, depth: usize) -> Step {
        if lab.count() == 1 {
            return Step::Found;
        }
        if remaining == 0 {
            return Step::Fail;
        }
        let lb = match self.pivot {
            None => lab.bound(),
            Some(p) => self.board.fixed_bound(lab, p),
        };
        if lb > remaining as usize {
            return Step::Fail;
        }
        if self.failed.get(coloring).is_some_and(|&r| r >= remaining) {
            return Step::Fail;
        }
        let comps = match self.pivot {
            Some(p) => {
                let t = lab.comp_of[p] as usize;
                t..t + 1
            }
            None => 0..lab.count(),
        };
        let mut child = std::mem::take(&mut self.scratch[depth]);
        let mut result = Step::Fail;
        // merging moves first; they are the likelier solutions
        'search: for merging_pass in [true, false] {
            if !merging_pass && self.opts.prune_nonmerging {
                break;
            }
            for t in comps.clone() {
                for c in 1..=self.board.c_max {
                    if c == lab.color[t] || lab.touches(t, c) != merging_pass {
                        continue;
                    }
                    child.clear();
                    child.extend_from_slice(coloring);
                    for &v in lab.members(t) {
                        child[v as usize] = c;
                    }
                    let vertex = self.pivot.unwrap_or(lab.members(t)[0] as usize);
                    self.path.push(Move::new(vertex, c));
                    match self.dfs(&child, remaining - 1, depth + 1) {
                        Step::Found => {
                            result = Step::Found;
                            break 'search;
                        }
                        Step::Abort => {
                            self.path.pop();
                            result = Step::Abort;
                            break 'search;
                        }
                        Step::Fail => {
                            self.path.pop();
                        }
                    }
                }
            }
        }
        self.scratch[depth] = child;
        if matches!(result, Step::Fail) {
            if let Some(r) = self.failed.get_mut(coloring) {
                *r = (*r).max(remaining);
            } else if self.failed.len() < TT_CAPACITY {
                self.failed.insert(coloring.to_vec(), remaining);
            }
        }
        result
    }
}

fn flooded_result() -> SolveResult {
    SolveResult {
        status: SolveStatus::Optimal,
        value: Some(0),
        solution: None,
        expanded: 0,
        lower_bound: 0,
        upper_bound: Some(0),
    }
}

/// Iterative deepening from `lb` up to (excluding) the incumbent's length.
fn deepen(
    instance: &ColoredInstance,
    pivot: Option<Vertex>,
    mode: Mode,
    lb: usize,
    incumbent: Solution,
    budget: &SearchBudget,
    opts: SolverOptions,
) -> SolveResult {
    let ub = incumbent.len();
    let mut search = Search::new(instance, pivot, budget, opts);
    let start = instance.coloring().to_vec();
    let mut proved = lb;
    for d in lb..ub {
        if budget.max_depth.is_some_and(|m| d > m) {
            return SolveResult {
                status: SolveStatus::BoundProved,
                value: Some(proved),
                solution: Some(incumbent),
                expanded: search.expanded,
                lower_bound: proved,
                upper_bound: Some(ub),
            };
        }
        match search.dfs(&start, d as u32, 0) {
            Step::Found => {
                let moves = std::mem::take(&mut search.path);
                return SolveResult {
                    status: SolveStatus::Optimal,
                    value: Some(d),
                    solution: Some(Solution::from_moves(mode, moves)),
                    expanded: search.expanded,
                    lower_bound: d,
                    upper_bound: Some(d),
                };
            }
            Step::Fail => proved = d + 1,
            Step::Abort => {
                return SolveResult {
                    status: SolveStatus::BudgetExhausted,
                    value: None,
                    solution: Some(incumbent),
                    expanded: search.expanded,
                    lower_bound: proved,
                    upper_bound: Some(ub),
                };
            }
        }
    }
    SolveResult {
        status: SolveStatus::Optimal,
        value: Some(ub),
        solution: Some(incumbent),
        expanded: search.expanded,
        lower_bound: ub,
        upper_bound: Some(ub),
    }
}

/// Shortest of the greedy and module-based solutions, used to seed the
/// deepening upper bound.
fn free_incumbent(instance: &ColoredInstance) -> Result<Solution, SolveError> {
    let greedy = approx_free(instance)?;
    let module = module_heuristic(instance, &twin_partition(instance.graph()))?;
    Ok(if module.len() < greedy.len() {
        module
    } else {
        greedy
    })
}

pub fn solve_free_exact(
    instance: &ColoredInstance,
    budget: &SearchBudget,
) -> Result<SolveResult, SolveError> {
    solve_free_exact_with(instance, budget, SolverOptions::default())
}

pub fn solve_free_exact_with(
    instance: &ColoredInstance,
    budget: &SearchBudget,
    opts: SolverOptions,
) -> Result<SolveResult, SolveError> {
    check_solvable(instance)?;
    let state = instance.initial_state();
    if state.is_flooded() {
        return Ok(SolveResult {
            solution: Some(Solution::new(Mode::Free, vec![])),
            ..flooded_result()
        });
    }
    let lb = super::lower_bound(&state);
    let incumbent = free_incumbent(instance)?;
    Ok(deepen(
        instance,
        None,
        Mode::Free,
        lb,
        incumbent,
        budget,
        opts,
    ))
}

pub fn solve_fixed_exact(
    instance: &ColoredInstance,
    pivot: Vertex,
    budget: &SearchBudget,
) -> Result<SolveResult, SolveError> {
    solve_fixed_exact_with(instance, pivot, budget, SolverOptions::default())
}

pub fn solve_fixed_exact_with(
    instance: &ColoredInstance,
    pivot: Vertex,
    budget: &SearchBudget,
    opts: SolverOptions,
) -> Result<SolveResult, SolveError> {
    check_solvable(instance)?;
    check_pivot(instance, pivot)?;
    let state = instance.initial_state();
    if state.is_flooded() {
        return Ok(SolveResult {
            solution: Some(Solution::new(Mode::Fixed, vec![])),
            ..flooded_result()
        });
    }
    let lb = super::fixed_lower_bound(&state, pivot);
    let incumbent = greedy_fixed(instance, pivot)?;
    Ok(deepen(
        instance,
        Some(pivot),
        Mode::Fixed,
        lb,
        incumbent,
        budget,
        opts,
    ))
}

/// Is there a free flooding sequence of at most `k` moves?
pub fn decide_free_at_most(
    instance: &ColoredInstance,
    k: usize,
    budget: &SearchBudget,
) -> Result<Decision, SolveError> {
    decide_free_at_most_with(instance, k, budget, SolverOptions::default())
}

pub fn decide_free_at_most_with(
    instance: &ColoredInstance,
    k: usize,
    budget: &SearchBudget,
    opts: SolverOptions,
) -> Result<Decision, SolveError> {
    if !budget.has_limit() {
        return Err(SolveError::UnboundedBudget);
    }
    check_solvable(instance)?;
    let state = instance.initial_state();
    if state.is_flooded() {
        return Ok(Decision::Yes(Solution::new(Mode::Free, vec![])));
    }
    if super::lower_bound(&state) > k {
        return Ok(Decision::No);
    }
    let incumbent = free_incumbent(instance)?;
    if incumbent.len() <= k {
        return Ok(Decision::Yes(incumbent));
    }
    let depth = budget.max_depth.map_or(k, |m| m.min(k));
    let mut search = Search::new(instance, None, budget, opts);
    Ok(match search.dfs(instance.coloring(), depth as u32, 0) {
        Step::Found => Decision::Yes(Solution::from_moves(Mode::Free, search.path)),
        Step::Fail if depth == k => Decision::No,
        Step::Fail | Step::Abort => Decision::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::validate_sequence;

    fn tight(n: usize) -> ColoredInstance {
        let col = (0..2 * n + 1).map(|i| 1 + (i % 2) as u8).collect();
        ColoredInstance::new(Graph::path(2 * n + 1), col)
            .unwrap()
            .with_pivot(0)
            .unwrap()
    }

    #[test]
    fn labeling_groups_components() {
        let board = Board::new(&Graph::path(5), 2);
        let mut lab = Labeling::default();
        board.label(&[1, 1, 2, 2, 1], &mut lab);
        assert_eq!(lab.count(), 3);
        assert_eq!(lab.members(1), &[2, 3]);
        assert!(lab.touches(0, 2) && !lab.touches(0, 1));
        assert_eq!(lab.bound(), 1);
    }

    #[test]
    fn tight_paths() {
        for n in 1..=3 {
            let inst = tight(n);
            let free = solve_free_exact(&inst, &SearchBudget::unlimited()).unwrap();
            assert_eq!(free.value, Some(n));
            let fixed = solve_fixed_exact(&inst, 0, &SearchBudget::unlimited()).unwrap();
            assert_eq!(fixed.value, Some(2 * n));
            for r in [free, fixed] {
                let sol = r.solution.unwrap();
                assert!(validate_sequence(&inst, &sol).valid);
                assert_eq!(Some(sol.len()), r.value);
            }
        }
    }

    #[test]
    fn flooded_is_zero() {
        let inst = ColoredInstance::new(Graph::cycle(4), vec![2; 4]).unwrap();
        let r = solve_free_exact(&inst, &SearchBudget::unlimited()).unwrap();
        assert_eq!((r.status, r.value), (SolveStatus::Optimal, Some(0)));
        let r = solve_fixed_exact(&inst, 3, &SearchBudget::unlimited()).unwrap();
        assert_eq!(r.value, Some(0));
        let d = decide_free_at_most(&inst, 0, &SearchBudget::states(10)).unwrap();
        assert_eq!(d, Decision::Yes(Solution::new(Mode::Free, vec![])));
    }

    #[test]
    fn decide_below_optimum() {
        let inst = tight(2);
        assert_eq!(
            decide_free_at_most(&inst, 1, &SearchBudget::states(1_000_000)).unwrap(),
            Decision::No
        );
        assert!(matches!(
            decide_free_at_most(&inst, 2, &SearchBudget::states(1_000_000)).unwrap(),
            Decision::Yes(_)
        ));
        assert_eq!(
            decide_free_at_most(&inst, 2, &SearchBudget::unlimited()),
            Err(SolveError::UnboundedBudget)
        );
    }

    #[test]
    fn disconnected_rejected() {
        let inst = ColoredInstance::new(Graph::empty(2), vec![1, 2]).unwrap();
        assert_eq!(
            solve_free_exact(&inst, &SearchBudget::unlimited()),
            Err(SolveError::Disconnected)
        );
    }

    #[test]
    fn budget_exhaustion_keeps_bounds() {
        let col = vec![1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3];
        let inst = ColoredInstance::new(Graph::cycle(12), col).unwrap();
        let r = solve_free_exact(&inst, &SearchBudget::states(3)).unwrap();
        assert_eq!(r.status, SolveStatus::BudgetExhausted);
        assert!(r.lower_bound <= r.upper_bound.unwrap());
        assert!(validate_sequence(&inst, &r.solution.unwrap()).valid);
    }

    #[test]
    fn max_depth_proves_bound() {
        let inst = tight(3);
        let r = solve_fixed_exact(&inst, 0, &SearchBudget::unlimited().with_max_depth(2)).unwrap();
        // the distance bound already gives 6, so the incumbent is optimal at once
        assert_eq!(r.status, SolveStatus::Optimal);
        let col = vec![1, 2, 3, 1, 2, 3, 1, 2, 3];
        let inst = ColoredInstance::new(Graph::cycle(9), col).unwrap();
        let r = solve_free_exact(&inst, &SearchBudget::unlimited().with_max_depth(3)).unwrap();
        assert_eq!(r.status, SolveStatus::BoundProved);
        assert_eq!(r.value, Some(4));
    }
}
