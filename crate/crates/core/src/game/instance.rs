use std::collections::VecDeque;
use std::sync::Arc;

use super::{Color, Graph, InstanceError, QuotientState, Vertex};

/// The game board: an immutable graph, a vertex coloring with ids in
/// `[1, c_max]`, and an optional pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredInstance {
    graph: Arc<Graph>,
    coloring: Vec<Color>,
    c_max: Color,
    pivot: Option<Vertex>,
}

impl ColoredInstance {
    /// Palette size is taken to be the largest color id present.
    pub fn new(graph: Graph, coloring: Vec<Color>) -> Result<Self, InstanceError> {
        let c_max = coloring.iter().copied().max().unwrap_or(1).max(1);
        Self::with_palette(Arc::new(graph), coloring, c_max)
    }

    pub fn with_palette(
        graph: Arc<Graph>,
        coloring: Vec<Color>,
        c_max: Color,
    ) -> Result<Self, InstanceError> {
        if coloring.len() != graph.vertex_count() {
            return Err(InstanceError::ColorCountMismatch {
                expected: graph.vertex_count(),
                found: coloring.len(),
            });
        }
        for (v, &c) in coloring.iter().enumerate() {
            if c == 0 || c > c_max {
                return Err(InstanceError::ColorOutOfRange {
                    vertex: v,
                    color: c as i64,
                    c_max: c_max as usize,
                });
            }
        }
        Ok(ColoredInstance {
            graph,
            coloring,
            c_max: c_max.max(1),
            pivot: None,
        })
    }

    pub fn with_pivot(mut self, pivot: Vertex) -> Result<Self, InstanceError> {
        if pivot >= self.graph.vertex_count() {
            return Err(InstanceError::InvalidPivot(pivot));
        }
        self.pivot = Some(pivot);
        Ok(self)
    }

    pub fn without_pivot(mut self) -> Self {
        self.pivot = None;
        self
    }

    /// Same graph, palette and pivot with a different coloring.
    pub fn recolored(&self, coloring: Vec<Color>) -> Result<Self, InstanceError> {
        let mut out = Self::with_palette(Arc::clone(&self.graph), coloring, self.c_max)?;
        out.pivot = self.pivot;
        Ok(out)
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    #[inline]
    pub fn coloring(&self) -> &[Color] {
        &self.coloring
    }

    #[inline]
    pub fn c_max(&self) -> Color {
        self.c_max
    }

    #[inline]
    pub fn pivot(&self) -> Option<Vertex> {
        self.pivot
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.coloring.len()
    }

    /// Number of distinct colors that actually appear.
    pub fn colors_used(&self) -> usize {
        let mut seen = [false; 256];
        let mut count = 0;
        for &c in &self.coloring {
            if !seen[c as usize] {
                seen[c as usize] = true;
                count += 1;
            }
        }
        count
    }

    /// SHA-256 over vertex count, edge list, coloring and pivot.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(format!("n={};", self.vertex_count()));
        for (a, b) in self.graph.edges() {
            h.update(format!("{a}-{b},"));
        }
        h.update(";col=");
        h.update(&self.coloring);
        h.update(format!(";pivot={:?}", self.pivot));
        hex::encode(h.finalize())
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    pub fn initial_state(&self) -> QuotientState {
        QuotientState::new(self)
    }

    /// Deletes `v`, shifting higher ids down. A deleted pivot is dropped.
    pub fn without_vertex(&self, v: Vertex) -> Self {
        let graph = self.graph.without_vertex(v);
        let coloring: Vec<Color> = self
            .coloring
            .iter()
            .enumerate()
            .filter(|&(w, _)| w != v)
            .map(|(_, &c)| c)
            .collect();
        let pivot = match self.pivot {
            Some(p) if p == v => None,
            Some(p) if p > v => Some(p - 1),
            other => other,
        };
        ColoredInstance {
            graph: Arc::new(graph),
            coloring,
            c_max: self.c_max,
            pivot,
        }
    }
}

/// `Comp(col, u)`: the maximal connected set containing `u` whose vertices
/// all share `coloring[u]`. Sorted ascending.
pub fn component(
    graph: &Graph,
    coloring: &[Color],
    u: Vertex,
) -> Result<Vec<Vertex>, InstanceError> {
    let n = graph.vertex_count();
    if u >= n || coloring.len() != n {
        return Err(InstanceError::VertexOutOfRange {
            vertex: u,
            count: n,
        });
    }
    let color = coloring[u];
    let mut seen = vec![false; n];
    let mut out = vec![u];
    let mut queue = VecDeque::from([u]);
    seen[u] = true;
    while let Some(v) = queue.pop_front() {
        for &w in graph.neighbors(v) {
            if !seen[w] && coloring[w] == color {
                seen[w] = true;
                out.push(w);
                queue.push_back(w);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}
