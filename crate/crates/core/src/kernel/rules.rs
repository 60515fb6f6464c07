use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::twins::{false_twins, twin_partition, TwinKind, TwinPartition};
use crate::game::{validate_sequence, Color, ColoredInstance, Mode, Move, Solution, Vertex};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// Drop one of two same-colored true twins.
    #[serde(rename = "TT")]
    TrueTwin,
    /// Drop one vertex of a same-colored false-twin group of size at least
    /// `nd + c`.
    #[serde(rename = "FT")]
    FalseTwin,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Removal {
    pub rule: Rule,
    /// Id in the instance the rule was applied to.
    pub removed: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelStep {
    pub rule: Rule,
    pub removed: Vertex,
    /// Id of the removed vertex in the input instance.
    pub original: Vertex,
    /// Fingerprint of the instance after this step.
    pub graph_hash: String,
}

/// Size accounting for a fully reduced instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCertificate {
    pub nd: usize,
    pub colors: usize,
    pub vertices: usize,
    /// `nd * c * (nd + c - 1)`.
    pub bound: usize,
    /// Largest same-colored group inside one twin class.
    pub largest_group: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub kernel: ColoredInstance,
    pub trace: Vec<KernelStep>,
    /// `original_ids[v]` is the input id of kernel vertex `v`.
    pub original_ids: Vec<Vertex>,
    pub certificate: KernelCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Same-colored groups inside classes of `kind`, as (color, members).
fn groups(
    instance: &ColoredInstance,
    partition: &TwinPartition,
    kind: TwinKind,
) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for class in partition.classes().iter().filter(|c| c.kind == kind) {
        let mut by_color: Vec<(Color, Vec<Vertex>)> = Vec::new();
        for &v in &class.vertices {
            let c = instance.coloring()[v];
            match by_color.iter_mut().find(|(k, _)| *k == c) {
                Some((_, vs)) => vs.push(v),
                None => by_color.push((c, vec![v])),
            }
        }
        out.extend(by_color.into_iter().map(|(_, vs)| vs));
    }
    out
}

fn smallest_removable(
    groups: &[Vec<Vertex>],
    min_size: usize,
    pivot: Option<Vertex>,
) -> Option<Vertex> {
    groups
        .iter()
        .filter(|g| g.len() >= min_size)
        .flat_map(|g| g.iter().copied().filter(|&v| Some(v) != pivot))
        .min()
}

fn apply(
    instance: &ColoredInstance,
    rule: Rule,
    v: Option<Vertex>,
) -> (ColoredInstance, Option<Removal>) {
    match v {
        Some(v) => (
            instance.without_vertex(v),
            Some(Removal { rule, removed: v }),
        ),
        None => (instance.clone(), None),
    }
}

/// Removes the smallest-id vertex that has a same-colored true twin. The
/// pivot, if any, is never removed.
pub fn rule_tt(instance: &ColoredInstance) -> (ColoredInstance, Option<Removal>) {
    let partition = twin_partition(instance.graph());
    let groups = groups(instance, &partition, TwinKind::TrueTwin);
    let v = smallest_removable(&groups, 2, instance.pivot());
    apply(instance, Rule::TrueTwin, v)
}

/// Removes the smallest-id vertex of a same-colored false-twin group with at
/// least `nd + c` members, `nd` and `c` (colors in use) measured on the
/// instance as given.
pub fn rule_ft(instance: &ColoredInstance) -> (ColoredInstance, Option<Removal>) {
    let partition = twin_partition(instance.graph());
    let threshold = partition.nd() + instance.colors_used();
    let groups = groups(instance, &partition, TwinKind::FalseTwin);
    let v = smallest_removable(&groups, threshold, instance.pivot());
    apply(instance, Rule::FalseTwin, v)
}

/// TT to a fixpoint, then one FT step, repeated until neither applies.
pub fn kernelize(instance: &ColoredInstance) -> Kernel {
    let mut current = instance.clone();
    let mut ids: Vec<Vertex> = (0..instance.vertex_count()).collect();
    let mut trace = Vec::new();
    loop {
        let (next, removal) = match rule_tt(&current) {
            (next, Some(r)) => (next, r),
            (_, None) => match rule_ft(&current) {
                (next, Some(r)) => (next, r),
                (_, None) => break,
            },
        };
        let original = ids.remove(removal.removed);
        trace.push(KernelStep {
            rule: removal.rule,
            removed: removal.removed,
            original,
            graph_hash: next.fingerprint(),
        });
        current = next;
    }
    let certificate = certify(&current);
    Kernel {
        kernel: current,
        trace,
        original_ids: ids,
        certificate,
    }
}

fn certify(instance: &ColoredInstance) -> KernelCertificate {
    let partition = twin_partition(instance.graph());
    let nd = partition.nd();
    let colors = instance.colors_used();
    let bound = nd * colors * (nd + colors).saturating_sub(1);
    let largest_group = [TwinKind::TrueTwin, TwinKind::FalseTwin, TwinKind::Singleton]
        .into_iter()
        .flat_map(|k| groups(instance, &partition, k))
        .map(|g| g.len())
        .max()
        .unwrap_or(0);
    let vertices = instance.vertex_count();
    KernelCertificate {
        nd,
        colors,
        vertices,
        bound,
        largest_group,
        holds: vertices <= bound && largest_group < nd + colors,
    }
}

/// Replays `seq` on `G` and on `G - x` and reports whether the two verdicts
/// agree. `x` and `y` must be same-colored false twins that `seq` never plays.
pub fn check_unplayed_twin_lemma(
    instance: &ColoredInstance,
    x: Vertex,
    y: Vertex,
    seq: &[Move],
) -> Result<bool, KernelError> {
    let n = instance.vertex_count();
    let pre = |msg: String| Err(KernelError::Precondition(msg));
    if x >= n || y >= n {
        return pre(format!("vertices {x}, {y} must be below {n}"));
    }
    if !false_twins(instance.graph(), x, y) {
        return pre(format!("{x} and {y} are not false twins"));
    }
    if instance.coloring()[x] != instance.coloring()[y] {
        return pre(format!("{x} and {y} have different colors"));
    }
    if let Some(m) = seq.iter().find(|m| m.vertex == x || m.vertex == y) {
        return pre(format!("move {m} plays one of the twins"));
    }
    let whole = instance.clone().without_pivot();
    let reduced = whole.without_vertex(x);
    let on_whole = Solution::from_moves(Mode::Free, seq.iter().copied());
    let shifted = seq
        .iter()
        .map(|m| Move::new(if m.vertex > x { m.vertex - 1 } else { m.vertex }, m.color));
    let on_reduced = Solution::from_moves(Mode::Free, shifted);
    Ok(
        validate_sequence(&whole, &on_whole).valid
            == validate_sequence(&reduced, &on_reduced).valid,
    )
}
