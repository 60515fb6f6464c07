//! Independent reference implementations used by the integration tests.
//! Nothing here goes through the quotient state or the search code.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use floodlab_core::{Color, ColoredInstance, Graph, Move, Vertex};
use rand::Rng;

pub type Adj = Vec<Vec<Vertex>>;

pub fn adjacency(g: &Graph) -> Adj {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).to_vec())
        .collect()
}

/// Monochromatic component of `u` by plain BFS.
pub fn comp(adj: &Adj, col: &[Color], u: Vertex) -> Vec<Vertex> {
    let mut seen = vec![false; adj.len()];
    let mut out = vec![u];
    seen[u] = true;
    let mut i = 0;
    while i < out.len() {
        let v = out[i];
        i += 1;
        for &w in &adj[v] {
            if !seen[w] && col[w] == col[u] {
                seen[w] = true;
                out.push(w);
            }
        }
    }
    out
}

pub fn recolor(adj: &Adj, col: &[Color], u: Vertex, c: Color) -> Vec<Color> {
    let mut next = col.to_vec();
    for v in comp(adj, col, u) {
        next[v] = c;
    }
    next
}

pub fn flooded(col: &[Color]) -> bool {
    col.windows(2).all(|w| w[0] == w[1])
}

/// Every legal vertex move with a color different from the played vertex.
pub fn moves(
    adj: &Adj,
    col: &[Color],
    palette: Color,
    pivot: Option<Vertex>,
) -> Vec<(Vertex, Color)> {
    let vs: Vec<Vertex> = match pivot {
        Some(p) => vec![p],
        None => (0..adj.len()).collect(),
    };
    let mut out = Vec::new();
    for v in vs {
        for c in 1..=palette {
            if c != col[v] {
                out.push((v, c));
            }
        }
    }
    out
}

/// Unpruned breadth-first search over colorings. `None` if no flooding
/// sequence exists (disconnected graph).
pub fn bfs_opt(adj: &Adj, col: &[Color], palette: Color, pivot: Option<Vertex>) -> Option<usize> {
    if flooded(col) {
        return Some(0);
    }
    let mut seen: HashSet<Vec<Color>> = HashSet::new();
    seen.insert(col.to_vec());
    let mut queue = VecDeque::from([(col.to_vec(), 0usize)]);
    while let Some((cur, d)) = queue.pop_front() {
        for (v, c) in moves(adj, &cur, palette, pivot) {
            let next = recolor(adj, &cur, v, c);
            if flooded(&next) {
                return Some(d + 1);
            }
            if seen.insert(next.clone()) {
                queue.push_back((next, d + 1));
            }
        }
    }
    None
}

pub fn opt_free(inst: &ColoredInstance) -> Option<usize> {
    bfs_opt(
        &adjacency(inst.graph()),
        inst.coloring(),
        inst.c_max(),
        None,
    )
}

pub fn opt_fixed(inst: &ColoredInstance, pivot: Vertex) -> Option<usize> {
    bfs_opt(
        &adjacency(inst.graph()),
        inst.coloring(),
        inst.c_max(),
        Some(pivot),
    )
}

/// Free optimum of every coloring of `adj` over `palette`, by value
/// iteration. Index: vertex 0 is the most significant digit.
pub fn opt_table(adj: &Adj, palette: Color) -> Vec<Option<u8>> {
    let n = adj.len();
    let total = (palette as usize).pow(n as u32);
    let decode = |mut idx: usize| {
        let mut col = vec![0; n];
        for v in (0..n).rev() {
            col[v] = (idx % palette as usize) as Color + 1;
            idx /= palette as usize;
        }
        col
    };
    let encode = |col: &[Color]| {
        col.iter()
            .fold(0, |a, &c| a * palette as usize + (c - 1) as usize)
    };
    let succ: Vec<Vec<usize>> = (0..total)
        .map(|i| {
            let col = decode(i);
            let mut s: Vec<usize> = moves(adj, &col, palette, None)
                .into_iter()
                .map(|(v, c)| encode(&recolor(adj, &col, v, c)))
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let mut opt: Vec<Option<u8>> = (0..total)
        .map(|i| flooded(&decode(i)).then_some(0))
        .collect();
    let mut level = 0u8;
    loop {
        let mut changed = false;
        let snapshot = opt.clone();
        for i in 0..total {
            if opt[i].is_none() && succ[i].iter().any(|&j| snapshot[j] == Some(level)) {
                opt[i] = Some(level + 1);
                changed = true;
            }
        }
        if !changed {
            return opt;
        }
        level += 1;
    }
}

pub fn table_index(col: &[Color], palette: Color) -> usize {
    col.iter()
        .fold(0, |a, &c| a * palette as usize + (c - 1) as usize)
}

/// Number of moves in `seq` whose played component misses `pivot`.
pub fn bad_moves(adj: &Adj, col: &[Color], pivot: Vertex, seq: &[Move]) -> usize {
    let mut cur = col.to_vec();
    let mut bad = 0;
    for m in seq {
        let c = comp(adj, &cur, m.vertex);
        if !c.contains(&pivot) {
            bad += 1;
        }
        cur = recolor(adj, &cur, m.vertex, m.color);
    }
    bad
}

/// Random flooding sequence: mostly merging moves, sometimes an arbitrary
/// recolor, capped so that it always terminates.
pub fn random_flooding<R: Rng>(rng: &mut R, adj: &Adj, col: &[Color], palette: Color) -> Vec<Move> {
    let mut cur = col.to_vec();
    let mut seq = Vec::new();
    while !flooded(&cur) {
        let v = rng.gen_range(0..adj.len());
        let c = comp(adj, &cur, v);
        let mut nbr: Vec<Color> = c
            .iter()
            .flat_map(|&u| adj[u].iter().map(|&w| cur[w]))
            .filter(|&x| x != cur[v])
            .collect();
        nbr.sort_unstable();
        nbr.dedup();
        let color = if seq.len() < 2 * adj.len() && rng.gen_bool(0.15) {
            let x = rng.gen_range(1..=palette);
            if x == cur[v] {
                continue;
            }
            x
        } else {
            nbr[rng.gen_range(0..nbr.len())]
        };
        seq.push(Move::new(v, color));
        cur = recolor(adj, &cur, v, color);
    }
    seq
}

/// Number of twin classes by pairwise neighborhood comparison.
pub fn neighborhood_diversity(adj: &Adj) -> usize {
    let n = adj.len();
    let open: Vec<HashSet<Vertex>> = adj.iter().map(|a| a.iter().copied().collect()).collect();
    let twins = |u: Vertex, v: Vertex| {
        let mut a = open[u].clone();
        let mut b = open[v].clone();
        a.remove(&v);
        b.remove(&u);
        a == b
    };
    let mut rep: Vec<Vertex> = Vec::new();
    for v in 0..n {
        if !rep.iter().any(|&r| twins(r, v)) {
            rep.push(v);
        }
    }
    rep.len()
}

/// One representative of every isomorphism class of connected graphs on
/// `n` vertices, by minimum adjacency bitmask over all permutations.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let perms = permutations(n);
    let pair_index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut seen: HashSet<u32> = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                edges.iter().fold(0u32, |acc, &(a, b)| {
                    let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                    acc | 1 << pair_index[&(x, y)]
                })
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every coloring of `g` over `palette`, palette kept even if unused.
pub fn all_colorings(g: &Graph, palette: Color) -> Vec<ColoredInstance> {
    let n = g.vertex_count();
    let graph = Arc::new(g.clone());
    (0..(palette as usize).pow(n as u32))
        .map(|mut idx| {
            let mut col = vec![0; n];
            for v in (0..n).rev() {
                col[v] = (idx % palette as usize) as Color + 1;
                idx /= palette as usize;
            }
            ColoredInstance::with_palette(graph.clone(), col, palette).unwrap()
        })
        .collect()
}

/// Graph blown up from a random connected quotient: each of `q` classes
/// becomes a clique or an independent set. Yields many twins.
pub fn random_module_instance<R: Rng>(
    rng: &mut R,
    q: usize,
    max_class: usize,
    palette: Color,
) -> ColoredInstance {
    let quotient = floodlab_core::io::random_connected_graph(rng, q, 0.4);
    let sizes: Vec<usize> = (0..q).map(|_| rng.gen_range(1..=max_class)).collect();
    let clique: Vec<bool> = (0..q).map(|_| rng.gen_bool(0.5)).collect();
    let mut start = vec![0; q + 1];
    for i in 0..q {
        start[i + 1] = start[i] + sizes[i];
    }
    let n = start[q];
    let mut edges = Vec::new();
    for i in 0..q {
        for a in start[i]..start[i + 1] {
            for b in a + 1..start[i + 1] {
                if clique[i] {
                    edges.push((a, b));
                }
            }
            for &j in quotient.neighbors(i) {
                if j > i {
                    for b in start[j]..start[j + 1] {
                        edges.push((a, b));
                    }
                }
            }
        }
    }
    let g = Graph::from_edges(n, &edges).unwrap();
    // few colors per class so same-colored groups get large
    let mut col = Vec::with_capacity(n);
    for &size in &sizes {
        let main = rng.gen_range(1..=palette);
        for _ in 0..size {
            col.push(if rng.gen_bool(0.7) {
                main
            } else {
                rng.gen_range(1..=palette)
            });
        }
    }
    ColoredInstance::with_palette(Arc::new(g), col, palette).unwrap()
}
