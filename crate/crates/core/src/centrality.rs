//! Katz centrality over the dependency graph.
//!
//! Score flows along `DEPENDS_ON` edges, from a dependent into each of its
//! dependencies, so packages that many (important) packages depend on score
//! highest:
//!
//! ```text
//! x_i = alpha * sum_{(j -> i)} x_j + beta
//! ```
//!
//! Solved by power iteration from `x = 0`, which makes iterate `t` the walk
//! series truncated at length `t`. Iteration stops once the L1 change falls
//! below `n * tolerance`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::depgraph::DependencyGraph;

#[derive(Debug, Error, PartialEq)]
pub enum CentralityError {
    #[error("cannot compute centrality of an empty graph")]
    EmptyGraph,
    #[error("invalid centrality parameter: {0}")]
    InvalidParams(String),
    #[error(
        "power iteration did not converge after {iterations} iterations (residual {residual:e}); \
         alpha is likely at or above 1/spectral radius, try a smaller --alpha"
    )]
    Diverged { iterations: usize, residual: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralityParams {
    /// Per-hop attenuation. Must stay below the reciprocal spectral radius.
    pub alpha: f64,
    /// Constant base weight every node receives.
    pub beta: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Scale the final vector to unit L2 norm.
    pub normalize: bool,
}

impl Default for CentralityParams {
    fn default() -> Self {
        Self {
            alpha: 0.1,
            beta: 1.0,
            tolerance: 1e-6,
            max_iterations: 1000,
            normalize: true,
        }
    }
}

impl CentralityParams {
    pub fn validate(&self) -> Result<(), CentralityError> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(CentralityError::InvalidParams(format!(
                    "{name} must be a positive finite number, got {v}"
                )))
            }
        };
        positive("alpha", self.alpha)?;
        positive("beta", self.beta)?;
        positive("tolerance", self.tolerance)?;
        if self.max_iterations == 0 {
            return Err(CentralityError::InvalidParams(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Per-node Katz scores and the run that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityScores {
    pub scores: BTreeMap<String, f64>,
    pub params: CentralityParams,
    pub iterations: usize,
    pub converged: bool,
    /// L1 change of the final iteration.
    pub residual: f64,
}

impl CentralityScores {
    pub fn get(&self, id: &str) -> Option<f64> {
        self.scores.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// Upper bound on the spectral radius of the adjacency matrix: the maximum
/// in-degree.
pub fn spectral_radius_upper_bound(g: &DependencyGraph) -> f64 {
    (0..g.node_count())
        .map(|i| g.in_degree(i))
        .max()
        .unwrap_or(0) as f64
}

/// Predecessor lists in a node order that depends only on node ids, so the
/// floating-point summation order (and hence every bit of the result) is
/// independent of the order of the input document.
struct CanonicalGraph {
    ids: Vec<String>,
    predecessors: Vec<Vec<u32>>,
}

impl CanonicalGraph {
    fn new(g: &DependencyGraph) -> Self {
        let mut order: Vec<usize> = (0..g.node_count()).collect();
        order.sort_unstable_by(|&a, &b| g.nodes()[a].id.cmp(&g.nodes()[b].id));
        let mut position = vec![0u32; order.len()];
        for (canon, &orig) in order.iter().enumerate() {
            position[orig] = canon as u32;
        }
        let predecessors = order
            .iter()
            .map(|&orig| {
                let mut preds: Vec<u32> =
                    g.predecessors(orig).iter().map(|&p| position[p]).collect();
                preds.sort_unstable();
                preds
            })
            .collect();
        let ids = order.iter().map(|&i| g.nodes()[i].id.clone()).collect();
        Self { ids, predecessors }
    }
}

/// Computes Katz centrality by power iteration.
pub fn katz_centrality(
    g: &DependencyGraph,
    params: &CentralityParams,
) -> Result<CentralityScores, CentralityError> {
    params.validate()?;
    if g.is_empty() {
        return Err(CentralityError::EmptyGraph);
    }
    let bound = spectral_radius_upper_bound(g);
    if params.alpha * bound >= 1.0 {
        log::warn!(
            "alpha {} times the spectral radius bound {} is >= 1; convergence is not guaranteed",
            params.alpha,
            bound
        );
    }

    let canon = CanonicalGraph::new(g);
    let n = canon.ids.len();
    let threshold = n as f64 * params.tolerance;
    let mut x = vec![0.0f64; n];
    let mut next = vec![0.0f64; n];
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < params.max_iterations {
        iterations += 1;
        next.par_iter_mut()
            .zip(canon.predecessors.par_iter())
            .for_each(|(slot, preds)| {
                let inflow: f64 = preds.iter().map(|&p| x[p as usize]).sum();
                *slot = params.alpha * inflow + params.beta;
            });
        residual = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if !residual.is_finite() {
            break;
        }
        if residual < threshold {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(CentralityError::Diverged {
            iterations,
            residual,
        });
    }

    if params.normalize {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut x {
            *v /= norm;
        }
    }

    Ok(CentralityScores {
        scores: canon.ids.into_iter().zip(x).collect(),
        params: *params,
        iterations,
        converged,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedNode {
    pub id: String,
    pub score: f64,
    /// 1-based position in the ranking.
    pub rank: usize,
}

/// Orders by score descending, then id ascending (bytewise). Returns at most
/// `k` entries.
pub fn rank(scores: &CentralityScores, k: usize) -> Vec<RankedNode> {
    let mut entries: Vec<(&String, f64)> = scores.scores.iter().map(|(id, &s)| (id, s)).collect();
    entries.sort_by(|a, b| match b.1.total_cmp(&a.1) {
        Ordering::Equal => a.0.as_bytes().cmp(b.0.as_bytes()),
        other => other,
    });
    entries
        .into_iter()
        .take(k)
        .enumerate()
        .map(|(i, (id, score))| RankedNode {
            id: id.clone(),
            score,
            rank: i + 1,
        })
        .collect()
}

/// `id,score,rank` CSV with shortest round-trip float formatting.
pub fn ranking_csv(ranking: &[RankedNode]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "score", "rank"]).expect("in-memory write");
    for r in ranking {
        w.write_record([r.id.clone(), r.score.to_string(), r.rank.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

#[derive(Serialize)]
struct ScoresDocument<'a> {
    params: &'a CentralityParams,
    iterations: usize,
    converged: bool,
    residual: f64,
    ranking: &'a [RankedNode],
}

/// JSON export with the full parameter set as a provenance header.
pub fn ranking_json(scores: &CentralityScores, ranking: &[RankedNode]) -> String {
    let doc = ScoresDocument {
        params: &scores.params,
        iterations: scores.iterations,
        converged: scores.converged,
        residual: scores.residual,
        ranking,
    };
    serde_json::to_string_pretty(&doc).expect("scores serialize")
}
