//! Distribution-wide package dependency graph.
//!
//! The graph is ingested from a JSON export of the form
//!
//! ```text
//! {"nodes":[{"id":..,"name":..,"version":..,"licenses":[..]}, ..],
//!  "edges":[{"from":..,"to":..,"label":"DEPENDS_ON"}, ..]}
//! ```
//!
//! An edge `from -> to` means `from` depends on `to`. Node identity is the
//! export's `id` string, verbatim.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod synthetic;

/// The only edge label the loader keeps.
pub const DEPENDS_ON: &str = "DEPENDS_ON";

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed graph document at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid node at position {position}: {reason}")]
    InvalidNode { position: usize, reason: String },
    #[error("duplicate node id {0:?}")]
    DuplicateNode(String),
    #[error("self-loop on node {0:?}: a package cannot depend on itself")]
    SelfLoop(String),
    #[error("{} dangling edge(s): {}", .0.len(), format_dangling(.0))]
    Dangling(Vec<(String, String)>),
    #[error("unknown node id {0:?}")]
    NotFound(String),
    #[error("I/O error reading graph: {0}")]
    Io(#[from] std::io::Error),
}

fn format_dangling(edges: &[(String, String)]) -> String {
    let shown: Vec<String> = edges
        .iter()
        .take(10)
        .map(|(f, t)| format!("{f} -> {t}"))
        .collect();
    let mut s = shown.join(", ");
    if edges.len() > 10 {
        s.push_str(&format!(", ... ({} more)", edges.len() - 10));
    }
    s
}

/// How to treat edges whose endpoints are not declared as nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LoadMode {
    /// Dangling edges are a validation error.
    Strict,
    /// Dangling edges are dropped and counted.
    #[default]
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackageNode {
    pub id: String,
    pub name: String,
    #[serde(default)]
    pub version: String,
    #[serde(default)]
    pub licenses: Vec<String>,
    /// Any export fields not modelled above.
    #[serde(flatten)]
    pub attributes: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EdgeDoc {
    from: String,
    to: String,
    #[serde(default = "default_label")]
    label: String,
}

fn default_label() -> String {
    DEPENDS_ON.to_string()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphDocument {
    nodes: Vec<PackageNode>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
}

/// Counters describing what ingestion collapsed or dropped.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadReport {
    pub duplicate_edges: usize,
    pub dangling_edges: usize,
    pub ignored_edges: usize,
}

/// Direction of traversal relative to `DEPENDS_ON` edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Follow edges from dependent to dependency.
    Forward,
    /// Follow edges from dependency back to its dependents.
    Reverse,
}

/// Immutable, validated dependency graph.
#[derive(Debug, Clone)]
pub struct DependencyGraph {
    nodes: Vec<PackageNode>,
    edges: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
    successors: Vec<Vec<usize>>,
    predecessors: Vec<Vec<usize>>,
}

impl DependencyGraph {
    /// Builds a graph from nodes and index-based edges. Edges must already be
    /// unique, in range, and loop-free.
    fn from_parts(nodes: Vec<PackageNode>, edges: Vec<(usize, usize)>) -> Self {
        let index = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.clone(), i))
            .collect();
        let mut successors = vec![Vec::new(); nodes.len()];
        let mut predecessors = vec![Vec::new(); nodes.len()];
        for &(from, to) in &edges {
            successors[from].push(to);
            predecessors[to].push(from);
        }
        Self {
            nodes,
            edges,
            index,
            successors,
            predecessors,
        }
    }

    /// Builds a graph from in-memory nodes and `(from, to)` id pairs, applying
    /// the same validation as [`load_graph`].
    pub fn from_nodes_and_edges<I, S>(
        nodes: Vec<PackageNode>,
        edges: I,
        mode: LoadMode,
    ) -> Result<(Self, LoadReport), GraphError>
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let doc = GraphDocument {
            nodes,
            edges: edges
                .into_iter()
                .map(|(from, to)| EdgeDoc {
                    from: from.into(),
                    to: to.into(),
                    label: default_label(),
                })
                .collect(),
        };
        build(doc, mode)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[PackageNode] {
        &self.nodes
    }

    pub fn node(&self, id: &str) -> Option<&PackageNode> {
        self.index.get(id).map(|&i| &self.nodes[i])
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Edges as `(from, to)` dense indices, in first-seen export order.
    pub fn edge_indices(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges as `(from, to)` id pairs, in first-seen export order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(f, t)| (self.nodes[f].id.as_str(), self.nodes[t].id.as_str()))
    }

    /// Dense indices of the direct dependents of node `i`.
    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.predecessors[i]
    }

    /// Dense indices of the direct dependencies of node `i`.
    pub fn successors(&self, i: usize) -> &[usize] {
        &self.successors[i]
    }

    pub fn in_degree(&self, i: usize) -> usize {
        self.predecessors[i].len()
    }

    fn require(&self, id: &str) -> Result<usize, GraphError> {
        self.index_of(id)
            .ok_or_else(|| GraphError::NotFound(id.to_string()))
    }

    /// Direct dependents of `id`: every `u` with an edge `u -> id`.
    pub fn reverse_dependencies(&self, id: &str) -> Result<BTreeSet<&str>, GraphError> {
        let i = self.require(id)?;
        Ok(self.predecessors[i]
            .iter()
            .map(|&p| self.nodes[p].id.as_str())
            .collect())
    }

    /// Every node with a directed path to `id`, excluding `id` itself.
    pub fn transitive_reverse_dependencies(
        &self,
        id: &str,
    ) -> Result<BTreeSet<&str>, GraphError> {
        let start = self.require(id)?;
        let reached = self.bfs(&[start], Direction::Reverse, usize::MAX);
        Ok(reached
            .into_iter()
            .filter(|&(i, _)| i != start)
            .map(|(i, _)| self.nodes[i].id.as_str())
            .collect())
    }

    /// Breadth-first search from `starts`; returns every visited node with
    /// its hop distance.
    fn bfs(&self, starts: &[usize], direction: Direction, depth: usize) -> Vec<(usize, usize)> {
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::new();
        let mut out = Vec::new();
        for &s in starts {
            if !seen[s] {
                seen[s] = true;
                queue.push_back((s, 0usize));
            }
        }
        while let Some((i, d)) = queue.pop_front() {
            out.push((i, d));
            if d >= depth {
                continue;
            }
            let next = match direction {
                Direction::Forward => &self.successors[i],
                Direction::Reverse => &self.predecessors[i],
            };
            for &j in next {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back((j, d + 1));
                }
            }
        }
        out
    }

    /// Induced subgraph over the nodes reachable from `roots` within `depth`
    /// hops. Node and edge order follow the parent graph.
    pub fn subgraph<S: AsRef<str>>(
        &self,
        roots: &[S],
        direction: Direction,
        depth: usize,
    ) -> Result<DependencyGraph, GraphError> {
        let starts = roots
            .iter()
            .map(|r| self.require(r.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let mut keep = vec![false; self.nodes.len()];
        for (i, _) in self.bfs(&starts, direction, depth) {
            keep[i] = true;
        }
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if keep[i] {
                remap[i] = nodes.len();
                nodes.push(node.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(f, t)| keep[f] && keep[t])
            .map(|&(f, t)| (remap[f], remap[t]))
            .collect();
        Ok(DependencyGraph::from_parts(nodes, edges))
    }

    /// Number of weakly connected components.
    pub fn weak_component_count(&self) -> usize {
        let mut seen = vec![false; self.nodes.len()];
        let mut components = 0;
        let mut stack = Vec::new();
        for s in 0..self.nodes.len() {
            if seen[s] {
                continue;
            }
            components += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(i) = stack.pop() {
                for &j in self.successors[i].iter().chain(&self.predecessors[i]) {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        components
    }

    /// Serializes back into the export format.
    pub fn to_json(&self) -> String {
        let doc = GraphDocument {
            nodes: self.nodes.clone(),
            edges: self
                .edges()
                .map(|(f, t)| EdgeDoc {
                    from: f.to_string(),
                    to: t.to_string(),
                    label: default_label(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("graph document serializes")
    }
}

/// Parses and validates a graph export document.
pub fn load_graph(document: &str, mode: LoadMode) -> Result<(DependencyGraph, LoadReport), GraphError> {
    let doc: GraphDocument = serde_json::from_str(document).map_err(|e| GraphError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    build(doc, mode)
}

/// Reads a graph export from any reader.
pub fn load_graph_from_reader<R: Read>(
    mut reader: R,
    mode: LoadMode,
) -> Result<(DependencyGraph, LoadReport), GraphError> {
    let mut buf = String::new();
    reader.read_to_string(&mut buf)?;
    load_graph(&buf, mode)
}

fn build(doc: GraphDocument, mode: LoadMode) -> Result<(DependencyGraph, LoadReport), GraphError> {
    let mut index: HashMap<&str, usize> = HashMap::with_capacity(doc.nodes.len());
    for (position, node) in doc.nodes.iter().enumerate() {
        if node.id.is_empty() {
            return Err(GraphError::InvalidNode {
                position,
                reason: "empty id".into(),
            });
        }
        if node.name.is_empty() {
            return Err(GraphError::InvalidNode {
                position,
                reason: format!("node {:?} has an empty name", node.id),
            });
        }
        if index.insert(node.id.as_str(), position).is_some() {
            return Err(GraphError::DuplicateNode(node.id.clone()));
        }
    }

    let mut report = LoadReport::default();
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(doc.edges.len());
    let mut edges = Vec::with_capacity(doc.edges.len());
    let mut dangling = Vec::new();
    for edge in &doc.edges {
        if edge.label != DEPENDS_ON {
            report.ignored_edges += 1;
            continue;
        }
        let (Some(&from), Some(&to)) = (index.get(edge.from.as_str()), index.get(edge.to.as_str()))
        else {
            dangling.push((edge.from.clone(), edge.to.clone()));
            continue;
        };
        if from == to {
            return Err(GraphError::SelfLoop(edge.from.clone()));
        }
        if seen.insert((from, to)) {
            edges.push((from, to));
        } else {
            report.duplicate_edges += 1;
        }
    }
    if !dangling.is_empty() {
        if mode == LoadMode::Strict {
            return Err(GraphError::Dangling(dangling));
        }
        report.dangling_edges = dangling.len();
        log::warn!("dropped {} dangling edge(s)", dangling.len());
    }
    if report.ignored_edges > 0 {
        log::warn!(
            "ignored {} edge(s) with a label other than {DEPENDS_ON}",
            report.ignored_edges
        );
    }
    drop(index);
    Ok((DependencyGraph::from_parts(doc.nodes, edges), report))
}
