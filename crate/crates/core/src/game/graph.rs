use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{InstanceError, Vertex};

/// A simple undirected graph stored as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Vertex>>", into = "Vec<Vec<Vertex>>")]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, InstanceError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(InstanceError::VertexOutOfRange {
                        vertex: v,
                        count: n,
                    });
                }
            }
            if a == b {
                return Err(InstanceError::SelfLoop(a));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(InstanceError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
            }
        }
        Ok(Graph {
            adjacency,
            edge_count: edges.len(),
        })
    }

    /// Builds a graph from explicit neighbor lists, rejecting anything that
    /// is not symmetric, irreflexive and duplicate-free.
    pub fn from_adjacency(mut adjacency: Vec<Vec<Vertex>>) -> Result<Self, InstanceError> {
        let n = adjacency.len();
        let mut half_edges = 0;
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            for w in list.windows(2) {
                if w[0] == w[1] {
                    return Err(InstanceError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
                }
            }
            for &w in list.iter() {
                if w >= n {
                    return Err(InstanceError::VertexOutOfRange {
                        vertex: w,
                        count: n,
                    });
                }
                if w == v {
                    return Err(InstanceError::SelfLoop(v));
                }
            }
            half_edges += list.len();
        }
        for (v, list) in adjacency.iter().enumerate() {
            for &w in list {
                if adjacency[w].binary_search(&v).is_err() {
                    return Err(InstanceError::AsymmetricAdjacency(v, w));
                }
            }
        }
        Ok(Graph {
            adjacency,
            edge_count: half_edges / 2,
        })
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Self::from_edges(n, &edges).expect("complete graph edges are valid")
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &edges).expect("star edges are valid")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for x in 0..a {
            for y in a..a + b {
                edges.push((x, y));
            }
        }
        Self::from_edges(a + b, &edges).expect("bipartite edges are valid")
    }

    /// Row-major 4-neighbor grid.
    pub fn grid(width: usize, height: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..height {
            for c in 0..width {
                let v = r * width + c;
                if c + 1 < width {
                    edges.push((v, v + 1));
                }
                if r + 1 < height {
                    edges.push((v, v + width));
                }
            }
        }
        Self::from_edges(width * height, &edges).expect("grid edges are valid")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == n
    }

    /// The graph with `removed` deleted; vertices above it shift down by one.
    pub fn without_vertex(&self, removed: Vertex) -> Graph {
        let shift = |w: Vertex| if w > removed { w - 1 } else { w };
        let adjacency: Vec<Vec<Vertex>> = self
            .adjacency
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != removed)
            .map(|(_, list)| {
                list.iter()
                    .filter(|&&w| w != removed)
                    .map(|&w| shift(w))
                    .collect()
            })
            .collect();
        let edge_count = self.edge_count - self.adjacency[removed].len();
        Graph {
            adjacency,
            edge_count,
        }
    }
}

impl TryFrom<Vec<Vec<Vertex>>> for Graph {
    type Error = InstanceError;

    fn try_from(value: Vec<Vec<Vertex>>) -> Result<Self, Self::Error> {
        Graph::from_adjacency(value)
    }
}

impl From<Graph> for Vec<Vec<Vertex>> {
    fn from(g: Graph) -> Self {
        g.adjacency
    }
}
