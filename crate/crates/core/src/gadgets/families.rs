//! Plain graph families for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{encode_undirected, DataGraph, DataValue, GraphBuilder};

/// Parameters of a seeded random data graph.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomSpec {
    pub nodes: usize,
    /// Probability of each (src, label, dst) edge, self-loops included.
    pub edge_prob: f64,
    pub labels: Vec<String>,
    /// Number of distinct data values; `None` gives every node its own.
    pub values: Option<usize>,
    /// Add every edge in both directions.
    pub symmetric: bool,
    pub seed: u64,
}

impl RandomSpec {
    pub fn new(nodes: usize, seed: u64) -> Self {
        RandomSpec { nodes, edge_prob: 0.3, labels: vec!["a".into()], values: None, symmetric: false, seed }
    }
}

pub fn random_graph(spec: &RandomSpec) -> DataGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut b = GraphBuilder::new();
    for l in &spec.labels {
        b.symbol(l);
    }
    for i in 0..spec.nodes {
        let v = match spec.values {
            Some(k) => rng.gen_range(0..k.max(1)) as i64,
            None => i as i64,
        };
        b.node(&format!("v{i}"), Some(DataValue::Int(v))).unwrap();
    }
    for s in 0..spec.nodes {
        for d in 0..spec.nodes {
            if spec.symmetric && d < s {
                continue;
            }
            for l in &spec.labels {
                if rng.gen_bool(spec.edge_prob.clamp(0.0, 1.0)) {
                    b.edge(s, l, d);
                    if spec.symmetric {
                        b.edge(d, l, s);
                    }
                }
            }
        }
    }
    b.build()
}

/// The undirected cycle on n nodes (a single node or edge for n < 3).
pub fn cycle_graph(n: usize) -> DataGraph {
    let edges: Vec<(usize, usize)> = match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    };
    encode_undirected(n, &edges)
}

pub fn complete_graph(n: usize) -> DataGraph {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    encode_undirected(n, &edges)
}

/// Every simple undirected graph on nodes 0..n, as edge lists, in order of
/// the bitmask over the pairs (i, j), i < j.
pub fn undirected_graphs(n: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    assert!(pairs.len() < 32, "too many node pairs to enumerate");
    (0u32..1 << pairs.len()).map(move |mask| pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::save_graph;

    #[test]
    fn seeded_graphs_are_reproducible() {
        let spec = RandomSpec::new(6, 7);
        assert_eq!(save_graph(&random_graph(&spec)), save_graph(&random_graph(&spec)));
        let other = RandomSpec { seed: 8, ..spec.clone() };
        assert_ne!(save_graph(&random_graph(&spec)), save_graph(&random_graph(&other)));
        assert!(random_graph(&spec).is_graph_database());
    }

    #[test]
    fn symmetric_option() {
        let spec = RandomSpec { symmetric: true, edge_prob: 0.5, ..RandomSpec::new(5, 3) };
        assert!(random_graph(&spec).is_symmetric());
    }

    #[test]
    fn families() {
        assert_eq!(cycle_graph(5).edge_count(), 10);
        assert_eq!(complete_graph(4).edge_count(), 12);
        assert_eq!(undirected_graphs(3).count(), 8);
    }
}
