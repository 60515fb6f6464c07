//! Fixed benchmark inputs, shared by the bench targets.

use floodlab_core::io::{generate, random_instance, GeneratorSpec};
use floodlab_core::{ColoredInstance, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn grid(width: usize, height: usize, colors: u8, seed: u64) -> ColoredInstance {
    let spec = GeneratorSpec::Grid {
        width,
        height,
        colors,
        seed,
    };
    generate(&spec).expect("grid specs are valid").instance
}

pub fn random(n: usize, p: f64, colors: u8, seed: u64) -> ColoredInstance {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), n, p, colors)
}

/// Complete multipartite-like blow-up: `classes` twin classes of `size`
/// vertices each, alternating cliques and independent sets, joined along a
/// path. Rich in twins, so the kernel rules fire often.
pub fn blown_up_path(classes: usize, size: usize, colors: u8, seed: u64) -> ColoredInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = classes * size;
    let class = |v: usize| v / size;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = (class(u), class(v));
            if (a == b && a % 2 == 0) || a + 1 == b {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::from_edges(n, &edges).expect("blow-up is simple");
    let coloring = (0..n).map(|_| rng.gen_range(1..=colors)).collect();
    ColoredInstance::new(graph, coloring).expect("colors are in range")
}
