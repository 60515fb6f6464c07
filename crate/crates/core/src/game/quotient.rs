use std::collections::VecDeque;
use std::sync::Arc;

use super::{Color, ColoredInstance, Graph, Move, MoveError, SetMove, Vertex};

/// A coloring contracted into its monochromatic components.
///
/// Components are numbered by their smallest vertex, so two states over the
/// same graph are equal exactly when their colorings are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientState {
    graph: Arc<Graph>,
    c_max: Color,
    coloring: Vec<Color>,
    component_of: Vec<u32>,
    component_color: Vec<Color>,
    members: Vec<Vec<Vertex>>,
    adjacency: Vec<Vec<u32>>,
}

/// Which legal form a set-move takes.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SetMoveKind {
    /// The set is a whole monochromatic component.
    Component,
    /// A proper, pivot-containing, connected subset of the pivot component.
    PivotSubset,
}

impl QuotientState {
    pub fn new(instance: &ColoredInstance) -> Self {
        Self::from_coloring(
            Arc::clone(instance.graph_arc()),
            instance.c_max(),
            instance.coloring().to_vec(),
        )
    }

    /// Contracts `coloring`. Colors are assumed to lie in `[1, c_max]`.
    pub fn from_coloring(graph: Arc<Graph>, c_max: Color, coloring: Vec<Color>) -> Self {
        let n = graph.vertex_count();
        debug_assert_eq!(coloring.len(), n);
        let mut component_of = vec![u32::MAX; n];
        let mut component_color = Vec::new();
        let mut members: Vec<Vec<Vertex>> = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if component_of[s] != u32::MAX {
                continue;
            }
            let id = members.len() as u32;
            let color = coloring[s];
            let mut group = vec![s];
            component_of[s] = id;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in graph.neighbors(v) {
                    if component_of[w] == u32::MAX && coloring[w] == color {
                        component_of[w] = id;
                        group.push(w);
                        queue.push_back(w);
                    }
                }
            }
            group.sort_unstable();
            members.push(group);
            component_color.push(color);
        }
        let mut adjacency = vec![Vec::new(); members.len()];
        for (a, b) in graph.edges() {
            let (ca, cb) = (component_of[a], component_of[b]);
            if ca != cb {
                adjacency[ca as usize].push(cb);
                adjacency[cb as usize].push(ca);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        QuotientState {
            graph,
            c_max,
            coloring,
            component_of,
            component_color,
            members,
            adjacency,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn c_max(&self) -> Color {
        self.c_max
    }

    pub fn coloring(&self) -> &[Color] {
        &self.coloring
    }

    pub fn vertex_count(&self) -> usize {
        self.coloring.len()
    }

    pub fn component_count(&self) -> usize {
        self.members.len()
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.component_of[v] as usize
    }

    pub fn component_color(&self, id: usize) -> Color {
        self.component_color[id]
    }

    pub fn component_members(&self, id: usize) -> &[Vertex] {
        &self.members[id]
    }

    pub fn component_neighbors(&self, id: usize) -> &[u32] {
        &self.adjacency[id]
    }

    /// `Comp(col, u)`, sorted.
    pub fn component(&self, u: Vertex) -> &[Vertex] {
        &self.members[self.component_of[u] as usize]
    }

    /// Exactly one component. An empty or disconnected graph is never flooded.
    pub fn is_flooded(&self) -> bool {
        self.members.len() == 1
    }

    /// Serialized coloring. Distinct colorings never share a key.
    pub fn canonical_key(&self) -> Vec<u8> {
        self.coloring.clone()
    }

    /// Distinct colors present, ascending.
    pub fn colors_present(&self) -> Vec<Color> {
        let mut seen = [false; 256];
        for &c in &self.component_color {
            seen[c as usize] = true;
        }
        (1..=self.c_max).filter(|&c| seen[c as usize]).collect()
    }

    /// Number of components of each color, indexed by color id.
    pub fn components_per_color(&self) -> Vec<usize> {
        let mut counts = vec![0; self.c_max as usize + 1];
        for &c in &self.component_color {
            counts[c as usize] += 1;
        }
        counts
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), MoveError> {
        if v >= self.vertex_count() {
            return Err(MoveError::InvalidVertex {
                vertex: v,
                count: self.vertex_count(),
            });
        }
        Ok(())
    }

    fn check_color(&self, c: Color) -> Result<(), MoveError> {
        if c == 0 || c > self.c_max {
            return Err(MoveError::InvalidColor {
                color: c,
                c_max: self.c_max,
            });
        }
        Ok(())
    }

    /// Recolors `Comp(col, m.vertex)` and merges it with every adjacent
    /// component of the new color. Recoloring to the current color is a no-op.
    pub fn apply_move(&self, m: Move) -> Result<QuotientState, MoveError> {
        self.check_vertex(m.vertex)?;
        self.check_color(m.color)?;
        let target = self.component_of[m.vertex] as usize;
        if self.component_color[target] == m.color {
            return Ok(self.clone());
        }
        let k = self.members.len();
        let mut merged = vec![false; k];
        merged[target] = true;
        for &nb in &self.adjacency[target] {
            if self.component_color[nb as usize] == m.color {
                merged[nb as usize] = true;
            }
        }
        let first = merged.iter().position(|&b| b).expect("target is merged");
        let mut new_id = vec![0u32; k];
        let mut next = 0u32;
        for old in 0..k {
            if merged[old] && old != first {
                new_id[old] = new_id[first];
            } else {
                new_id[old] = next;
                next += 1;
            }
        }
        let count = next as usize;
        let mut component_color = vec![0; count];
        let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); count];
        let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); count];
        let hub = new_id[first] as usize;
        for old in 0..k {
            let id = new_id[old] as usize;
            if merged[old] {
                members[hub].extend_from_slice(&self.members[old]);
                adjacency[hub].extend(
                    self.adjacency[old]
                        .iter()
                        .filter(|&&nb| !merged[nb as usize])
                        .map(|&nb| new_id[nb as usize]),
                );
            } else {
                component_color[id] = self.component_color[old];
                members[id] = self.members[old].clone();
                adjacency[id] = self.adjacency[old]
                    .iter()
                    .map(|&nb| new_id[nb as usize])
                    .collect();
            }
        }
        component_color[hub] = m.color;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        members[hub].sort_unstable();
        let mut coloring = self.coloring.clone();
        for &v in &self.members[target] {
            coloring[v] = m.color;
        }
        let component_of = self
            .component_of
            .iter()
            .map(|&c| new_id[c as usize])
            .collect();
        Ok(QuotientState {
            graph: Arc::clone(&self.graph),
            c_max: self.c_max,
            coloring,
            component_of,
            component_color,
            members,
            adjacency,
        })
    }

    /// Checks the set-move legality clauses against this state.
    pub fn classify_set_move(
        &self,
        m: &SetMove,
        pivot: Option<Vertex>,
    ) -> Result<SetMoveKind, MoveError> {
        let first = *m.vertices.first().ok_or(MoveError::EmptySet)?;
        for &v in &m.vertices {
            self.check_vertex(v)?;
        }
        self.check_color(m.color)?;
        let color = self.coloring[first];
        if m.vertices.iter().any(|&v| self.coloring[v] != color) {
            return Err(MoveError::NotMonochromatic);
        }
        // connectivity inside the set
        let mut seen = vec![false; m.vertices.len()];
        let index = |v: Vertex| m.vertices.binary_search(&v).ok();
        let mut queue = VecDeque::from([first]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in self.graph.neighbors(v) {
                if let Some(i) = index(w) {
                    if !seen[i] {
                        seen[i] = true;
                        reached += 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        if reached != m.vertices.len() {
            return Err(MoveError::NotConnected);
        }
        if self.component(first).len() == m.vertices.len() {
            return Ok(SetMoveKind::Component);
        }
        match pivot {
            Some(p) if m.contains(p) => Ok(SetMoveKind::PivotSubset),
            _ => Err(MoveError::NotLegalForm),
        }
    }

    /// Recolors exactly `m.vertices` and recomputes the quotient.
    pub fn apply_set_move(
        &self,
        m: &SetMove,
        pivot: Option<Vertex>,
    ) -> Result<QuotientState, MoveError> {
        self.classify_set_move(m, pivot)?;
        let mut coloring = self.coloring.clone();
        for &v in &m.vertices {
            coloring[v] = m.color;
        }
        Ok(Self::from_coloring(
            Arc::clone(&self.graph),
            self.c_max,
            coloring,
        ))
    }

    /// A standalone instance holding this state's coloring.
    pub fn to_instance(&self, pivot: Option<Vertex>) -> ColoredInstance {
        let inst = ColoredInstance::with_palette(
            Arc::clone(&self.graph),
            self.coloring.clone(),
            self.c_max,
        )
        .expect("state colorings stay within the palette");
        match pivot {
            Some(p) => inst.with_pivot(p).expect("pivot is a vertex"),
            None => inst,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn state(graph: Graph, coloring: Vec<Color>) -> QuotientState {
        QuotientState::new(&ColoredInstance::new(graph, coloring).unwrap())
    }

    fn random_instance(rng: &mut ChaCha8Rng, n: usize, colors: Color) -> ColoredInstance {
        let mut edges = Vec::new();
        for b in 1..n {
            edges.push((rng.gen_range(0..b), b));
        }
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.15) && !edges.contains(&(a, b)) {
                    edges.push((a, b));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        let coloring = (0..n).map(|_| rng.gen_range(1..=colors)).collect();
        ColoredInstance::with_palette(Arc::new(g), coloring, colors).unwrap()
    }

    fn check_invariants(s: &QuotientState) {
        for id in 0..s.component_count() {
            for &nb in s.component_neighbors(id) {
                assert_ne!(s.component_color(id), s.component_color(nb as usize));
                assert!(s.component_neighbors(nb as usize).contains(&(id as u32)));
                assert_ne!(nb as usize, id);
            }
            for &v in s.component_members(id) {
                assert_eq!(s.component_of(v), id);
                assert_eq!(s.coloring()[v], s.component_color(id));
            }
        }
    }

    #[test]
    fn path_merge() {
        let s = state(Graph::path(3), vec![1, 2, 1]);
        assert_eq!(s.component_count(), 3);
        assert!(!s.is_flooded());
        let t = s.apply_move(Move::new(1, 1)).unwrap();
        assert!(t.is_flooded());
        assert_eq!(t.coloring(), &[1, 1, 1]);
        assert!(t.apply_move(Move::new(0, 2)).unwrap().is_flooded());
    }

    #[test]
    fn single_vertex_is_flooded() {
        assert!(state(Graph::empty(1), vec![1]).is_flooded());
        assert!(!state(Graph::empty(2), vec![1, 1]).is_flooded());
    }

    #[test]
    fn set_move_splits_pivot_component() {
        let s = state(Graph::path(3), vec![1, 1, 2]);
        let t = s
            .apply_set_move(&SetMove::new(vec![0], 2), Some(0))
            .unwrap();
        assert_eq!(t.coloring(), &[2, 1, 2]);
        assert_eq!(t.component_count(), 3);
        assert_eq!(
            s.apply_set_move(&SetMove::new(vec![1], 2), Some(0)),
            Err(MoveError::NotLegalForm)
        );
        assert_eq!(
            s.apply_set_move(&SetMove::new(vec![0, 2], 2), Some(0)),
            Err(MoveError::NotMonochromatic)
        );
        let g = state(Graph::path(3), vec![1, 2, 1]);
        assert_eq!(
            g.apply_set_move(&SetMove::new(vec![0, 2], 2), Some(0)),
            Err(MoveError::NotConnected)
        );
    }

    #[test]
    fn full_component_set_move_equals_plain_move() {
        let s = state(Graph::path(4), vec![1, 1, 2, 1]);
        let a = s
            .apply_set_move(&SetMove::new(vec![0, 1], 2), None)
            .unwrap();
        let b = s.apply_move(Move::new(0, 2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn incremental_move_matches_recomputation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let inst = {
                let n = rng.gen_range(1..=15);
                random_instance(&mut rng, n, 3)
            };
            let s = QuotientState::new(&inst);
            let m = Move::new(rng.gen_range(0..inst.vertex_count()), rng.gen_range(1..=3));
            let t = s.apply_move(m).unwrap();
            let mut naive = inst.coloring().to_vec();
            for &v in s.component(m.vertex) {
                naive[v] = m.color;
            }
            let expected = QuotientState::from_coloring(Arc::clone(inst.graph_arc()), 3, naive);
            assert_eq!(t, expected);
            check_invariants(&t);
            assert!(t.component_count() <= s.component_count());
            // repeating the same move changes nothing
            assert_eq!(t.apply_move(m).unwrap(), t);
        }
    }

    #[test]
    fn random_subset_move_matches_recomputation() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut tried = 0;
        while tried < 200 {
            let inst = {
                let n = rng.gen_range(2..=12);
                random_instance(&mut rng, n, 3)
            };
            let s = QuotientState::new(&inst);
            let p = rng.gen_range(0..inst.vertex_count());
            let comp = s.component(p).to_vec();
            if comp.len() < 2 {
                continue;
            }
            // grow a random connected subset of the pivot component from p
            let mut set = vec![p];
            for _ in 0..rng.gen_range(0..comp.len() - 1) {
                let frontier: Vec<Vertex> = comp
                    .iter()
                    .copied()
                    .filter(|v| !set.contains(v))
                    .filter(|&v| set.iter().any(|&u| inst.graph().has_edge(u, v)))
                    .collect();
                if frontier.is_empty() {
                    break;
                }
                set.push(frontier[rng.gen_range(0..frontier.len())]);
            }
            let m = SetMove::new(set, rng.gen_range(1..=3));
            let t = s.apply_set_move(&m, Some(p)).unwrap();
            let mut naive = inst.coloring().to_vec();
            for &v in &m.vertices {
                naive[v] = m.color;
            }
            assert_eq!(t.coloring(), &naive[..]);
            check_invariants(&t);
            tried += 1;
        }
    }

    #[test]
    fn canonical_key_tracks_coloring() {
        let a = state(Graph::path(3), vec![1, 2, 1]);
        let b = state(Graph::path(3), vec![2, 1, 2]);
        assert_ne!(a.canonical_key(), b.canonical_key());
        let c = state(Graph::path(3), vec![1, 2, 1]);
        assert_eq!(a.canonical_key(), c.canonical_key());
    }
}
