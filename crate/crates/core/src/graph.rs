//! Undirected simple graphs and the generator family the process runs on.
//!
//! Graphs are immutable once built: adjacency lists are sorted, vertex ids
//! are `0..vertex_count`, and generators may attach role labels that seed
//! constructors and wave bookkeeping consult. The dynamics itself never
//! reads labels; it depends only on structure and configuration.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("invalid vertex {vertex}: graph has {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected; diameter is infinite")]
    Disconnected,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Role within the column cliques of an `hnl` graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HnlRole {
    /// Vertex on one of the two rings.
    Cycle,
    /// Pendant vertex joining a ring vertex to its clique.
    Pendant,
    /// Remaining clique vertex (for cliques of size 3 these are the two
    /// degree-2 vertices).
    Extra(u8),
}

/// Optional role tag a generator attaches to a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexLabel {
    /// Level within a doubling clique chain; level 0 is the smallest clique.
    CliqueLevel { level: usize },
    /// Position inside an `hnl` graph: ring column, row (1 or 2), and role.
    Hnl { col: usize, row: u8, role: HnlRole },
    /// Layer of a clique prism, `0..=3`, cyclically adjacent.
    Layer { layer: u8 },
    /// Coordinates in a cartesian product.
    Pair { a: usize, b: usize },
}

/// Immutable undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: BTreeMap<usize, VertexLabel>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicates
    /// and out-of-range endpoints.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::InvalidVertex {
                    vertex: u.max(v),
                    vertex_count,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        for (u, list) in adjacency.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            adjacency,
            labels: BTreeMap::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Size of the closed neighbourhood `N[v]`, i.e. `degree(v) + 1`.
    pub fn closed_size(&self, v: usize) -> usize {
        self.degree(v) + 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// All edges, each listed once with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn label(&self, v: usize) -> Option<&VertexLabel> {
        self.labels.get(&v)
    }

    pub fn labels(&self) -> &BTreeMap<usize, VertexLabel> {
        &self.labels
    }

    pub(crate) fn with_labels(mut self, labels: BTreeMap<usize, VertexLabel>) -> Self {
        self.labels = labels;
        self
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Maximum BFS distance over all vertex pairs.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        if self.vertex_count() == 0 {
            return Err(GraphError::InvalidSize("empty graph".into()));
        }
        let mut best = 0;
        for source in 0..self.vertex_count() {
            for d in self.bfs_distances(source) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Err(GraphError::Disconnected),
                }
            }
        }
        Ok(best)
    }

    /// Multiset of vertex degrees, sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        degrees.sort_unstable();
        degrees
    }
}

pub fn make_path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidSize("path needs at least 1 vertex".into()));
    }
    Graph::from_edges(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)))
}

pub fn make_cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidSize(
            "cycle needs at least 3 vertices".into(),
        ));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn make_complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidSize(
            "complete graph needs at least 1 vertex".into(),
        ));
    }
    Graph::from_edges(n, clique_edges(0, n))
}

pub fn make_complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    if a == 0 || b == 0 {
        return Err(GraphError::InvalidSize(
            "both sides of a complete bipartite graph must be nonempty".into(),
        ));
    }
    Graph::from_edges(
        a + b,
        (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))),
    )
}

/// The Petersen graph: outer 5-cycle, inner pentagram, five spokes.
pub fn make_petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, edges).expect("petersen edges are simple")
}

/// Cartesian product: `(a, x) ~ (b, y)` iff `a = b, x ~ y` or `a ~ b, x = y`.
///
/// Vertex `(a, x)` gets id `a * h.vertex_count() + x` and a `Pair` label.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    if g.vertex_count() == 0 || h.vertex_count() == 0 {
        return Err(GraphError::InvalidSize(
            "cartesian product factors must be nonempty".into(),
        ));
    }
    let nh = h.vertex_count();
    let id = |a: usize, x: usize| a * nh + x;
    let mut edges = Vec::new();
    for a in 0..g.vertex_count() {
        for (x, y) in h.edges() {
            edges.push((id(a, x), id(a, y)));
        }
    }
    for (a, b) in g.edges() {
        for x in 0..nh {
            edges.push((id(a, x), id(b, x)));
        }
    }
    let mut labels = BTreeMap::new();
    for a in 0..g.vertex_count() {
        for x in 0..nh {
            labels.insert(id(a, x), VertexLabel::Pair { a, b: x });
        }
    }
    Ok(Graph::from_edges(g.vertex_count() * nh, edges)?.with_labels(labels))
}

/// Chain of `n + 1` cliques with doubling sizes `j, 2j, ..., j*2^n`.
///
/// Vertex `t` of level `i` is joined to vertices `2t` and `2t + 1` of level
/// `i + 1`, so every vertex has exactly two neighbours one level up and
/// (above level 0) exactly one neighbour one level down.
pub fn make_gjn(j: usize, n: usize) -> Result<Graph, GraphError> {
    if j == 0 || n == 0 {
        return Err(GraphError::InvalidSize(
            "clique chain needs j >= 1 and n >= 1".into(),
        ));
    }
    make_gjn_wired(j, n, |_, children| children)
}

/// Same clique chain but with a seeded random assignment of the two
/// up-neighbours; every degree count matches `make_gjn` exactly.
pub fn make_gjn_shuffled(j: usize, n: usize, rng_seed: u64) -> Result<Graph, GraphError> {
    if j == 0 || n == 0 {
        return Err(GraphError::InvalidSize(
            "clique chain needs j >= 1 and n >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    make_gjn_wired(j, n, move |_, mut children| {
        children.shuffle(&mut rng);
        children
    })
}

fn make_gjn_wired(
    j: usize,
    n: usize,
    mut arrange: impl FnMut(usize, Vec<usize>) -> Vec<usize>,
) -> Result<Graph, GraphError> {
    let sizes: Vec<usize> = (0..=n).map(|i| j << i).collect();
    let mut offsets = vec![0usize];
    for s in &sizes {
        offsets.push(offsets.last().unwrap() + s);
    }
    let total = *offsets.last().unwrap();

    let mut edges = Vec::new();
    for (level, &size) in sizes.iter().enumerate() {
        edges.extend(clique_edges(offsets[level], size));
    }
    for level in 0..n {
        let children = arrange(level, (0..sizes[level + 1]).collect());
        for t in 0..sizes[level] {
            let u = offsets[level] + t;
            edges.push((u, offsets[level + 1] + children[2 * t]));
            edges.push((u, offsets[level + 1] + children[2 * t + 1]));
        }
    }

    let mut labels = BTreeMap::new();
    for (level, &size) in sizes.iter().enumerate() {
        for t in 0..size {
            labels.insert(offsets[level] + t, VertexLabel::CliqueLevel { level });
        }
    }
    Ok(Graph::from_edges(total, edges)?.with_labels(labels))
}

/// Clique prism `K_{j-1} x C_4`: four clique layers, cyclically adjacent.
/// The result is `j`-regular; layer labels run `0..=3`.
pub fn make_prism(j: usize) -> Result<Graph, GraphError> {
    if j < 3 {
        return Err(GraphError::InvalidSize("prism needs j >= 3".into()));
    }
    let product = cartesian_product(&make_complete(j - 1)?, &make_cycle(4)?)?;
    let labels = (0..product.vertex_count())
        .map(|v| (v, VertexLabel::Layer { layer: (v % 4) as u8 }))
        .collect();
    Ok(product.with_labels(labels))
}

/// Two `n`-rings joined rung-wise, with a pendant clique `K_ell` hung off
/// every ring vertex through its pendant vertex.
///
/// Per column `i` and row `j` the block is `[cycle, pendant, extras...]`,
/// so `vertex_count = 2 * n * (ell + 1)`.
pub fn make_hnl(n: usize, ell: usize) -> Result<Graph, GraphError> {
    if n < 4 || n % 2 != 0 {
        return Err(GraphError::InvalidSize(
            "ring length must be even and at least 4".into(),
        ));
    }
    if ell < 3 {
        return Err(GraphError::InvalidSize(
            "pendant cliques need ell >= 3".into(),
        ));
    }
    let block = ell + 1;
    let cycle_id = |i: usize, row: usize| (2 * i + (row - 1)) * block;
    let total = 2 * n * block;

    let mut edges = Vec::new();
    let mut labels = BTreeMap::new();
    for i in 0..n {
        for row in 1..=2usize {
            let v = cycle_id(i, row);
            let z = v + 1;
            edges.push((v, cycle_id((i + 1) % n, row)));
            edges.push((v, z));
            // K_ell on the pendant vertex plus the extras.
            edges.extend(clique_edges(z, ell));
            labels.insert(
                v,
                VertexLabel::Hnl {
                    col: i,
                    row: row as u8,
                    role: HnlRole::Cycle,
                },
            );
            labels.insert(
                z,
                VertexLabel::Hnl {
                    col: i,
                    row: row as u8,
                    role: HnlRole::Pendant,
                },
            );
            for k in 0..ell - 1 {
                labels.insert(
                    z + 1 + k,
                    VertexLabel::Hnl {
                        col: i,
                        row: row as u8,
                        role: HnlRole::Extra(k as u8),
                    },
                );
            }
        }
        edges.push((cycle_id(i, 1), cycle_id(i, 2)));
    }
    Ok(Graph::from_edges(total, edges)?.with_labels(labels))
}

/// Disjoint union of `host` and `attachment` plus one bridge edge.
///
/// Host vertices keep their ids; attachment ids are shifted by
/// `host.vertex_count()`. Labels from both sides are preserved.
pub fn attach_graph(
    host: &Graph,
    attachment: &Graph,
    attachment_anchor: usize,
    host_anchor: usize,
) -> Result<Graph, GraphError> {
    host.check_vertex(host_anchor)?;
    attachment.check_vertex(attachment_anchor)?;
    let shift = host.vertex_count();
    let edges = host
        .edges()
        .chain(attachment.edges().map(|(u, v)| (u + shift, v + shift)))
        .chain(std::iter::once((host_anchor, attachment_anchor + shift)));
    let mut labels = host.labels.clone();
    for (&v, label) in &attachment.labels {
        labels.insert(v + shift, label.clone());
    }
    Ok(Graph::from_edges(shift + attachment.vertex_count(), edges)?.with_labels(labels))
}

fn clique_edges(offset: usize, size: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(size * size.saturating_sub(1) / 2);
    for a in 0..size {
        for b in a + 1..size {
            edges.push((offset + a, offset + b));
        }
    }
    edges
}
