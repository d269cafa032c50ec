//! Seeded generator for large distribution-shaped dependency graphs.
//!
//! Generated graphs are acyclic (every edge points from a newer package to an
//! older one) and have a heavy-tailed in-degree distribution, so a handful of
//! early packages act as the hubs everything else links against.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DependencyGraph, LoadMode, PackageNode};

/// Node count of the full distribution export used as the scale reference.
pub const DISTRIBUTION_NODES: usize = 82_011;
/// Edge count of the full distribution export used as the scale reference.
pub const DISTRIBUTION_EDGES: usize = 273_681;

pub fn synthetic_id(i: usize) -> String {
    format!("pkg-{i:06}")
}

/// Generates a graph with exactly `nodes` nodes and `edges` distinct edges.
///
/// Panics if `edges` exceeds the number of possible acyclic edges.
pub fn generate(nodes: usize, edges: usize, seed: u64) -> DependencyGraph {
    assert!(nodes >= 2 || edges == 0, "need at least two nodes for edges");
    let capacity = nodes.saturating_mul(nodes.saturating_sub(1)) / 2;
    assert!(edges <= capacity, "{edges} edges do not fit in {nodes} nodes");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(edges);
    let mut targets: Vec<usize> = Vec::with_capacity(edges);
    let mut pairs = Vec::with_capacity(edges);
    while pairs.len() < edges {
        let from = rng.gen_range(1..nodes);
        let to = if targets.is_empty() || rng.gen_bool(0.5) {
            rng.gen_range(0..from)
        } else {
            let t = targets[rng.gen_range(0..targets.len())];
            if t >= from {
                continue;
            }
            t
        };
        if seen.insert((from, to)) {
            targets.push(to);
            pairs.push((from, to));
        }
    }

    let node_list = (0..nodes)
        .map(|i| PackageNode {
            id: synthetic_id(i),
            name: synthetic_id(i),
            version: "1.0".into(),
            licenses: Vec::new(),
            attributes: BTreeMap::new(),
        })
        .collect();
    let (graph, _) = DependencyGraph::from_nodes_and_edges(
        node_list,
        pairs
            .into_iter()
            .map(|(f, t)| (synthetic_id(f), synthetic_id(t))),
        LoadMode::Strict,
    )
    .expect("generated graph is valid");
    graph
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_counts_and_deterministic() {
        let a = generate(500, 1500, 7);
        let b = generate(500, 1500, 7);
        assert_eq!(a.node_count(), 500);
        assert_eq!(a.edge_count(), 1500);
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        assert!(a.edge_indices().iter().all(|&(f, t)| t < f));
    }
}
