use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

use crate::game::{Color, ColoredInstance, Graph, InstanceError};
use crate::reductions::{
    find_witness, mcsc_to_floodit, tight_path, McscInstance, ReductionError, ReductionLayout,
    WitnessQuery,
};

/// Reproducible instance recipe. The same spec always yields the same
/// instance (ChaCha8 seeded from `seed`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeneratorSpec {
    Grid {
        width: usize,
        height: usize,
        colors: Color,
        seed: u64,
    },
    RandomGraph {
        vertices: usize,
        edge_probability: f64,
        colors: Color,
        seed: u64,
    },
    TightPath {
        n: usize,
    },
    /// Random set-cover instance pushed through the reduction.
    Reduction {
        k: usize,
        universe: usize,
        sets_per_collection: usize,
        #[serde(default)]
        padding: Option<usize>,
        seed: u64,
    },
    Witness {
        max_path_len: usize,
        #[serde(default)]
        merging_only: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid generator parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub instance: ColoredInstance,
    /// Set for `reduction` specs.
    pub mcsc: Option<McscInstance>,
    pub layout: Option<ReductionLayout>,
}

impl Generated {
    fn plain(instance: ColoredInstance) -> Self {
        Generated {
            instance,
            mcsc: None,
            layout: None,
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated, GenerateError> {
    match *spec {
        GeneratorSpec::Grid {
            width,
            height,
            colors,
            seed,
        } => {
            if width == 0 || height == 0 || colors == 0 {
                return Err(GenerateError::Parameters(
                    "grid needs positive width, height and colors".into(),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let coloring = random_coloring(&mut rng, width * height, colors);
            let inst = ColoredInstance::with_palette(
                Arc::new(Graph::grid(width, height)),
                coloring,
                colors,
            )?;
            Ok(Generated::plain(inst))
        }
        GeneratorSpec::RandomGraph {
            vertices,
            edge_probability,
            colors,
            seed,
        } => {
            if vertices == 0 || colors == 0 || !(0.0..=1.0).contains(&edge_probability) {
                return Err(GenerateError::Parameters(
                    "random graph needs vertices > 0, colors > 0 and p in [0, 1]".into(),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Generated::plain(random_instance(
                &mut rng,
                vertices,
                edge_probability,
                colors,
            )))
        }
        GeneratorSpec::TightPath { n } => Ok(Generated::plain(tight_path(n)?)),
        GeneratorSpec::Reduction {
            k,
            universe,
            sets_per_collection,
            padding,
            seed,
        } => {
            if k == 0 || sets_per_collection == 0 {
                return Err(GenerateError::Parameters(
                    "reduction needs k > 0 and at least one set per collection".into(),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_mcsc(&mut rng, k, universe, sets_per_collection);
            let (instance, layout) = mcsc_to_floodit(&m, padding.unwrap_or(3 * k))?;
            Ok(Generated {
                instance,
                mcsc: Some(m),
                layout: Some(layout),
            })
        }
        GeneratorSpec::Witness {
            max_path_len,
            merging_only,
        } => {
            let query = WitnessQuery {
                merging_only,
                ..WitnessQuery::classic(max_path_len)
            };
            Ok(Generated::plain(find_witness(query)?.instance()))
        }
    }
}

pub fn random_coloring<R: Rng>(rng: &mut R, n: usize, colors: Color) -> Vec<Color> {
    (0..n).map(|_| rng.gen_range(1..=colors)).collect()
}

/// Random spanning tree (each vertex attaches to a uniformly chosen earlier
/// one, after shuffling labels) plus every other pair with probability `p`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut adj = vec![vec![false; n]; n];
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut edges = Vec::new();
    for (a, row) in adj.iter().enumerate() {
        for (b, &tree) in row.iter().enumerate().skip(a + 1) {
            if tree || rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are simple")
}

/// Connected random instance with palette `colors`; some colors may be unused.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, p: f64, colors: Color) -> ColoredInstance {
    let graph = random_connected_graph(rng, n, p);
    let coloring = random_coloring(rng, n, colors);
    ColoredInstance::with_palette(Arc::new(graph), coloring, colors)
        .expect("colors drawn from the palette")
}

/// Each set keeps each element with probability one half.
pub fn random_mcsc<R: Rng>(
    rng: &mut R,
    k: usize,
    universe: usize,
    sets_per_collection: usize,
) -> McscInstance {
    let collections = (0..k)
        .map(|_| {
            (0..sets_per_collection)
                .map(|_| (0..universe).filter(|_| rng.gen_bool(0.5)).collect())
                .collect()
        })
        .collect();
    McscInstance {
        universe,
        collections,
    }
}
