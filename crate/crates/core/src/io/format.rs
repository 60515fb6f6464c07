use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Color, ColoredInstance, Graph, InstanceError, Vertex};

/// On-disk instance. Either `grid`, or `vertices` with `edges` or
/// `adjacency`, plus `colors`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(Vertex, Vertex)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjacency: Option<Vec<Vec<Vertex>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<i64>>,
    /// When present, colors are taken verbatim in `[1, c_max]`; otherwise
    /// they are renumbered densely in increasing order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_max: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot: Option<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("invalid instance shape: {0}")]
    InvalidShape(String),
    #[error("asymmetric adjacency: {0} lists {1} but not vice versa")]
    AsymmetricEdges(Vertex, Vertex),
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("color {color} at vertex {vertex} is out of range")]
    ColorOutOfRange { vertex: Vertex, color: i64 },
    #[error("{found} colors given for {expected} vertices")]
    ColorCount { expected: usize, found: usize },
    #[error("grid rows have different lengths")]
    RaggedGrid,
    #[error("pivot {0} is not a vertex")]
    InvalidPivot(Vertex),
    #[error("{0} distinct colors exceed the supported 255")]
    PaletteTooLarge(usize),
}

impl FormatError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::MalformedJson(_) => "malformed-json",
            FormatError::InvalidShape(_) => "invalid-shape",
            FormatError::AsymmetricEdges(..) => "asymmetric-edges",
            FormatError::InvalidEdge(_) => "invalid-edge",
            FormatError::ColorOutOfRange { .. } => "color-out-of-range",
            FormatError::ColorCount { .. } => "color-count",
            FormatError::RaggedGrid => "ragged-grid",
            FormatError::InvalidPivot(_) => "invalid-pivot",
            FormatError::PaletteTooLarge(_) => "palette-too-large",
        }
    }
}

impl From<InstanceError> for FormatError {
    fn from(e: InstanceError) -> Self {
        match e {
            InstanceError::AsymmetricAdjacency(a, b) => FormatError::AsymmetricEdges(a, b),
            InstanceError::VertexOutOfRange { .. }
            | InstanceError::SelfLoop(_)
            | InstanceError::DuplicateEdge(..) => FormatError::InvalidEdge(e.to_string()),
            InstanceError::ColorCountMismatch { expected, found } => {
                FormatError::ColorCount { expected, found }
            }
            InstanceError::ColorOutOfRange { vertex, color, .. } => {
                FormatError::ColorOutOfRange { vertex, color }
            }
            InstanceError::PaletteTooLarge(n) => FormatError::PaletteTooLarge(n),
            InstanceError::InvalidPivot(p) => FormatError::InvalidPivot(p),
        }
    }
}

/// A parsed instance and the original label of each dense color id
/// (`palette[c - 1]` is the label of color `c`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedInstance {
    pub instance: ColoredInstance,
    pub palette: Vec<String>,
    /// Grid dimensions when the grid shorthand was used.
    pub grid: Option<(usize, usize)>,
}

pub fn parse_instance(bytes: &[u8]) -> Result<LoadedInstance, FormatError> {
    let file: InstanceFile = serde_json::from_slice(bytes).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => FormatError::InvalidShape(e.to_string()),
            _ => FormatError::MalformedJson(e.to_string()),
        }
    })?;
    from_file(file)
}

pub fn from_file(file: InstanceFile) -> Result<LoadedInstance, FormatError> {
    let loaded = match &file.grid {
        Some(rows) => {
            if file.vertices.is_some() || file.edges.is_some() || file.adjacency.is_some() {
                return Err(FormatError::InvalidShape(
                    "grid cannot be combined with vertices, edges or adjacency".into(),
                ));
            }
            from_grid(rows)?
        }
        None => from_explicit(&file)?,
    };
    match file.pivot {
        Some(p) => {
            let LoadedInstance {
                instance,
                palette,
                grid,
            } = loaded;
            Ok(LoadedInstance {
                instance: instance.with_pivot(p)?,
                palette,
                grid,
            })
        }
        None => Ok(loaded),
    }
}

fn from_grid(rows: &[String]) -> Result<LoadedInstance, FormatError> {
    let cells: Vec<Vec<char>> = rows.iter().map(|r| r.chars().collect()).collect();
    let width = cells.first().map_or(0, |r| r.len());
    if cells.iter().any(|r| r.len() != width) {
        return Err(FormatError::RaggedGrid);
    }
    let height = cells.len();
    let mut labels: BTreeMap<char, Color> = BTreeMap::new();
    for (i, &ch) in cells.iter().flatten().enumerate() {
        if !ch.is_ascii_alphanumeric() {
            return Err(FormatError::ColorOutOfRange {
                vertex: i,
                color: ch as i64,
            });
        }
        labels.insert(ch, 0);
    }
    if labels.len() > Color::MAX as usize {
        return Err(FormatError::PaletteTooLarge(labels.len()));
    }
    for (i, id) in labels.values_mut().enumerate() {
        *id = (i + 1) as Color;
    }
    let coloring = cells.iter().flatten().map(|ch| labels[ch]).collect();
    let instance = ColoredInstance::new(Graph::grid(width, height), coloring)?;
    Ok(LoadedInstance {
        instance,
        palette: labels.keys().map(|c| c.to_string()).collect(),
        grid: Some((width, height)),
    })
}

fn from_explicit(file: &InstanceFile) -> Result<LoadedInstance, FormatError> {
    let graph = match (&file.edges, &file.adjacency) {
        (Some(_), Some(_)) => {
            return Err(FormatError::InvalidShape(
                "give either edges or adjacency, not both".into(),
            ))
        }
        (Some(edges), None) => {
            let n = file.vertices.ok_or_else(|| {
                FormatError::InvalidShape("edge lists need a vertex count".into())
            })?;
            Graph::from_edges(n, edges)?
        }
        (None, Some(adj)) => {
            if file.vertices.is_some_and(|n| n != adj.len()) {
                return Err(FormatError::InvalidShape(
                    "vertex count disagrees with adjacency length".into(),
                ));
            }
            Graph::from_adjacency(adj.clone())?
        }
        (None, None) => match file.vertices {
            Some(n) => Graph::empty(n),
            None => {
                return Err(FormatError::InvalidShape(
                    "expected grid, or vertices with edges or adjacency".into(),
                ))
            }
        },
    };
    let raw = file
        .colors
        .as_ref()
        .ok_or_else(|| FormatError::InvalidShape("missing colors".into()))?;
    if raw.len() != graph.vertex_count() {
        return Err(FormatError::ColorCount {
            expected: graph.vertex_count(),
            found: raw.len(),
        });
    }
    if let Some((v, &c)) = raw.iter().enumerate().find(|(_, &c)| c < 1) {
        return Err(FormatError::ColorOutOfRange {
            vertex: v,
            color: c,
        });
    }
    match file.c_max {
        Some(c_max) => {
            if !(1..=Color::MAX as i64).contains(&c_max) {
                return Err(FormatError::PaletteTooLarge(c_max.max(0) as usize));
            }
            if let Some((v, &c)) = raw.iter().enumerate().find(|(_, &c)| c > c_max) {
                return Err(FormatError::ColorOutOfRange {
                    vertex: v,
                    color: c,
                });
            }
            let coloring = raw.iter().map(|&c| c as Color).collect();
            let instance =
                ColoredInstance::with_palette(Arc::new(graph), coloring, c_max as Color)?;
            Ok(LoadedInstance {
                instance,
                palette: (1..=c_max).map(|c| c.to_string()).collect(),
                grid: None,
            })
        }
        None => {
            let mut labels: BTreeMap<i64, Color> = raw.iter().map(|&c| (c, 0)).collect();
            if labels.len() > Color::MAX as usize {
                return Err(FormatError::PaletteTooLarge(labels.len()));
            }
            for (i, id) in labels.values_mut().enumerate() {
                *id = (i + 1) as Color;
            }
            let coloring = raw.iter().map(|c| labels[c]).collect();
            let instance = ColoredInstance::new(graph, coloring)?;
            Ok(LoadedInstance {
                instance,
                palette: labels.keys().map(|c| c.to_string()).collect(),
                grid: None,
            })
        }
    }
}

/// Explicit form with `c_max`, so that `parse_instance` restores the exact
/// instance including unused palette colors.
pub fn to_file(instance: &ColoredInstance) -> InstanceFile {
    InstanceFile {
        vertices: Some(instance.vertex_count()),
        edges: Some(instance.graph().edges().collect()),
        colors: Some(instance.coloring().iter().map(|&c| c as i64).collect()),
        c_max: Some(instance.c_max() as i64),
        pivot: instance.pivot(),
        ..InstanceFile::default()
    }
}

pub fn serialize_instance(instance: &ColoredInstance) -> String {
    serde_json::to_string(&to_file(instance)).expect("instance files always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<LoadedInstance, FormatError> {
        parse_instance(s.as_bytes())
    }

    #[test]
    fn grid_shorthand() {
        let l = parse(r#"{"grid":["12","21"]}"#).unwrap();
        assert_eq!(l.instance.vertex_count(), 4);
        assert_eq!(l.instance.graph().edge_count(), 4);
        assert_eq!(l.instance.colors_used(), 2);
        assert_eq!(l.grid, Some((2, 2)));

        let one = parse(r#"{"grid":["1"]}"#).unwrap();
        assert!(one.instance.initial_state().is_flooded());

        let letters = parse(r#"{"grid":["ab","ca"], "pivot": 3}"#).unwrap();
        assert_eq!(letters.instance.coloring(), &[1, 2, 3, 1]);
        assert_eq!(letters.palette, vec!["a", "b", "c"]);
        assert_eq!(letters.instance.pivot(), Some(3));
    }

    #[test]
    fn sparse_palette_is_renumbered() {
        let l = parse(r#"{"vertices":3,"edges":[[0,1],[1,2]],"colors":[7,3,7]}"#).unwrap();
        assert_eq!(l.instance.coloring(), &[2, 1, 2]);
        assert_eq!(l.palette, vec!["3", "7"]);
    }

    #[test]
    fn error_codes_are_distinct() {
        let cases = [
            (r#"{"vertices":2,"edges":[[0,1]"#, "malformed-json"),
            (r#"{"vertices":"two"}"#, "invalid-shape"),
            (r#"{"colors":[1]}"#, "invalid-shape"),
            (
                r#"{"adjacency":[[1],[]],"colors":[1,2]}"#,
                "asymmetric-edges",
            ),
            (
                r#"{"vertices":2,"edges":[[0,0]],"colors":[1,2]}"#,
                "invalid-edge",
            ),
            (
                r#"{"vertices":2,"edges":[[0,1]],"colors":[1,0]}"#,
                "color-out-of-range",
            ),
            (
                r#"{"vertices":2,"edges":[[0,1]],"colors":[1,3],"c_max":2}"#,
                "color-out-of-range",
            ),
            (
                r#"{"vertices":2,"edges":[[0,1]],"colors":[1]}"#,
                "color-count",
            ),
            (r#"{"grid":["12","1"]}"#, "ragged-grid"),
            (r#"{"grid":["12"],"pivot":5}"#, "invalid-pivot"),
        ];
        for (text, code) in cases {
            let err = parse(text).unwrap_err();
            assert_eq!(err.code(), code, "{text}: {err}");
        }
    }

    #[test]
    fn round_trip_keeps_palette() {
        let inst = ColoredInstance::with_palette(Arc::new(Graph::path(3)), vec![1, 3, 1], 4)
            .unwrap()
            .with_pivot(2)
            .unwrap();
        let back = parse(&serialize_instance(&inst)).unwrap().instance;
        assert_eq!(back, inst);
    }
}
