use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Graph, Vertex};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwinKind {
    /// Pairwise adjacent, equal closed neighborhoods.
    TrueTwin,
    /// Pairwise non-adjacent, equal open neighborhoods.
    FalseTwin,
    Singleton,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinClass {
    pub vertices: Vec<Vertex>,
    pub kind: TwinKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition covers {found} vertices, graph has {expected}")]
    WrongSize { expected: usize, found: usize },
    #[error("vertex {0} is missing or appears twice")]
    NotAPartition(Vertex),
    #[error("vertices {0} and {1} share a class but are not twins of the declared kind")]
    NotTwins(Vertex, Vertex),
    #[error("classes containing {0} and {1} could be merged")]
    NotMinimal(Vertex, Vertex),
}

/// Partition of the vertex set into twin classes; `nd()` is the
/// neighborhood diversity of the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinPartition {
    classes: Vec<TwinClass>,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl TwinPartition {
    /// Builds a partition from explicit classes. Use [`TwinPartition::validate`]
    /// to check it against a graph.
    pub fn from_classes(classes: Vec<TwinClass>) -> Self {
        let n = classes.iter().map(|c| c.vertices.len()).sum();
        let mut class_of = vec![usize::MAX; n];
        for (i, class) in classes.iter().enumerate() {
            for &v in &class.vertices {
                if v < n {
                    class_of[v] = i;
                }
            }
        }
        TwinPartition { classes, class_of }
    }

    pub fn nd(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[TwinClass] {
        &self.classes
    }

    pub fn class_of(&self, v: Vertex) -> usize {
        self.class_of[v]
    }

    pub fn validate(&self, graph: &Graph) -> Result<(), PartitionError> {
        let n = graph.vertex_count();
        let found: usize = self.classes.iter().map(|c| c.vertices.len()).sum();
        if found != n {
            return Err(PartitionError::WrongSize { expected: n, found });
        }
        let mut seen = vec![false; n];
        for class in &self.classes {
            for &v in &class.vertices {
                if v >= n || seen[v] {
                    return Err(PartitionError::NotAPartition(v));
                }
                seen[v] = true;
            }
        }
        for class in &self.classes {
            let vs = &class.vertices;
            if vs.is_empty() {
                return Err(PartitionError::WrongSize { expected: n, found });
            }
            for &v in &vs[1..] {
                let ok = match class.kind {
                    TwinKind::TrueTwin => true_twins(graph, vs[0], v),
                    TwinKind::FalseTwin => false_twins(graph, vs[0], v),
                    TwinKind::Singleton => false,
                };
                if !ok {
                    return Err(PartitionError::NotTwins(vs[0], v));
                }
            }
        }
        // twinhood is an equivalence relation, so comparing representatives suffices
        for (i, a) in self.classes.iter().enumerate() {
            for b in &self.classes[i + 1..] {
                let (x, y) = (a.vertices[0], b.vertices[0]);
                if true_twins(graph, x, y) || false_twins(graph, x, y) {
                    return Err(PartitionError::NotMinimal(x, y));
                }
            }
        }
        Ok(())
    }
}

/// `N[u] = N[v]` for distinct vertices.
pub fn true_twins(graph: &Graph, u: Vertex, v: Vertex) -> bool {
    u != v && graph.has_edge(u, v) && closed(graph, u) == closed(graph, v)
}

/// `N(u) = N(v)` for distinct vertices.
pub fn false_twins(graph: &Graph, u: Vertex, v: Vertex) -> bool {
    u != v && !graph.has_edge(u, v) && graph.neighbors(u) == graph.neighbors(v)
}

fn closed(graph: &Graph, v: Vertex) -> Vec<Vertex> {
    let mut out = graph.neighbors(v).to_vec();
    let at = out.binary_search(&v).unwrap_err();
    out.insert(at, v);
    out
}

/// Groups vertices by open and closed neighborhood signatures. A vertex can
/// have false twins or true twins but not both, so first match wins.
pub fn twin_partition(graph: &Graph) -> TwinPartition {
    let n = graph.vertex_count();
    let mut by_open: HashMap<&[Vertex], usize> = HashMap::new();
    let mut by_closed: HashMap<Vec<Vertex>, usize> = HashMap::new();
    let mut members: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..n {
        let open = graph.neighbors(v);
        let cl = closed(graph, v);
        if let Some(&c) = by_open.get(open) {
            members[c].push(v);
        } else if let Some(&c) = by_closed.get(&cl) {
            members[c].push(v);
        } else {
            let id = members.len();
            members.push(vec![v]);
            by_open.insert(open, id);
            by_closed.insert(cl, id);
        }
    }
    let classes = members
        .into_iter()
        .map(|vertices| {
            let kind = match vertices.as_slice() {
                [_] => TwinKind::Singleton,
                [a, b, ..] if graph.has_edge(*a, *b) => TwinKind::TrueTwin,
                _ => TwinKind::FalseTwin,
            };
            TwinClass { vertices, kind }
        })
        .collect();
    TwinPartition::from_classes(classes)
}
