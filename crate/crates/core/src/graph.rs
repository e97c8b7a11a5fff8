//! Simple connected graphs, trees, distances and vertex status values.
//!
//! Vertices are dense `0..n` ids. Every [`Graph`] is simple and connected;
//! a [`Tree`] additionally has exactly `n - 1` edges.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::Deref;

use serde::Serialize;
use thiserror::Error;

pub type Vertex = usize;

/// Status (transmission) value of a vertex. Statuses grow like `n^2 / 2`.
pub type Status = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("a tree on {n} vertices needs {} edges, got {edges}", n - 1)]
    NotATree { n: usize, edges: usize },
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("graph too large: {0} vertices")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices, rejecting loops, repeated edges and
    /// disconnected input.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > u32::MAX as usize {
            return Err(GraphError::TooLarge(n));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        let graph = Graph {
            adjacency,
            edge_count: edges.len(),
        };
        if graph.bfs_distances(0).contains(&UNREACHED) {
            return Err(GraphError::Disconnected);
        }
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    /// Applies a relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length mismatch");
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::from_edges(self.n(), &edges).expect("relabeling preserves validity")
    }

    /// Hop distances from `source`; unreachable vertices get `u32::MAX`.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &v in &self.adjacency[u] {
                if dist[v] == UNREACHED {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let n = self.n();
        let mut data = Vec::with_capacity(n * n);
        for v in 0..n {
            data.extend(self.bfs_distances(v));
        }
        DistanceMatrix { n, data }
    }

    pub fn status(&self, v: Vertex) -> Result<Status, GraphError> {
        if v >= self.n() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            });
        }
        Ok(self.bfs_distances(v).iter().map(|&d| d as Status).sum())
    }

    /// Status of every vertex, indexed by vertex id.
    pub fn statuses(&self) -> Vec<Status> {
        (0..self.n())
            .map(|v| self.bfs_distances(v).iter().map(|&d| d as Status).sum())
            .collect()
    }

    pub fn status_sequence(&self) -> StatusSequence {
        StatusSequence::new(self.statuses())
    }

    /// Number of different status values, `k(G)`.
    pub fn distinct_status_count(&self) -> usize {
        self.status_sequence().distinct_count()
    }

    pub fn is_status_injective(&self) -> bool {
        self.distinct_status_count() == self.n()
    }

    pub fn eccentricities(&self) -> Vec<u32> {
        (0..self.n())
            .map(|v| self.bfs_distances(v).into_iter().max().unwrap_or(0))
            .collect()
    }
}

const UNREACHED: u32 = u32::MAX;

/// Row-major matrix of hop counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn row_sum(&self, u: Vertex) -> Status {
        self.row(u).iter().map(|&d| d as Status).sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|u| self.row(u).to_vec()).collect()
    }
}

/// Status values in nondecreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct StatusSequence(Vec<Status>);

impl StatusSequence {
    pub fn new(mut values: Vec<Status>) -> Self {
        values.sort_unstable();
        StatusSequence(values)
    }

    pub fn as_slice(&self) -> &[Status] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distinct_count(&self) -> usize {
        let mut count = 0;
        let mut last = None;
        for &v in &self.0 {
            if last != Some(v) {
                count += 1;
                last = Some(v);
            }
        }
        count
    }

    pub fn is_injective(&self) -> bool {
        self.distinct_count() == self.len()
    }

    pub fn multiplicities(&self) -> BTreeMap<Status, usize> {
        let mut out = BTreeMap::new();
        for &v in &self.0 {
            *out.entry(v).or_insert(0) += 1;
        }
        out
    }

    pub fn sum(&self) -> u128 {
        self.0.iter().map(|&v| v as u128).sum()
    }

    pub fn into_vec(self) -> Vec<Status> {
        self.0
    }
}

impl fmt::Display for StatusSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeMetrics {
    pub diameter: u32,
    pub radius: u32,
    /// Smallest `k` such that some vertex reaches every other within `k` hops.
    pub depth: u32,
    pub center: Vec<Vertex>,
    pub median: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    graph: Graph,
}

impl Tree {
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if n > 0 && edges.len() != n - 1 {
            return Err(GraphError::NotATree {
                n,
                edges: edges.len(),
            });
        }
        Tree::try_from(Graph::from_edges(n, edges)?)
    }

    /// Builds a tree from a parent array; `None` marks the root.
    pub fn from_parents(parents: &[Option<Vertex>]) -> Result<Self, GraphError> {
        let edges: Vec<_> = parents
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
            .collect();
        Tree::from_edges(parents.len(), &edges)
    }

    pub fn single_vertex() -> Self {
        Tree::from_edges(1, &[]).expect("K_1 is a tree")
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Tree::from_edges(n, &edges)
    }

    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Tree::from_edges(leaves + 1, &edges).expect("stars are trees")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn relabel(&self, perm: &[Vertex]) -> Tree {
        Tree {
            graph: self.graph.relabel(perm),
        }
    }

    pub fn leaves(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.degree(v) <= 1).collect()
    }

    /// Parent of every vertex when the tree hangs from `root`.
    pub fn parents_from(&self, root: Vertex) -> Vec<Option<Vertex>> {
        let mut parent = vec![None; self.n()];
        let mut seen = vec![false; self.n()];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    stack.push(v);
                }
            }
        }
        parent
    }

    pub fn metrics(&self) -> TreeMetrics {
        let ecc = self.eccentricities();
        let diameter = ecc.iter().copied().max().unwrap_or(0);
        let radius = ecc.iter().copied().min().unwrap_or(0);
        let center = (0..self.n()).filter(|&v| ecc[v] == radius).collect();
        let statuses = self.statuses();
        let best = statuses.iter().copied().min().unwrap_or(0);
        let median = (0..self.n()).filter(|&v| statuses[v] == best).collect();
        TreeMetrics {
            diameter,
            radius,
            depth: radius,
            center,
            median,
        }
    }

    /// Component sizes after deleting edge `v1-v2`, the `v1` side first.
    pub fn edge_split(&self, v1: Vertex, v2: Vertex) -> Result<(usize, usize), GraphError> {
        if !self.has_edge(v1, v2) {
            return Err(GraphError::NotAnEdge(v1, v2));
        }
        let size2 = self.side_size(v2, v1);
        Ok((self.n() - size2, size2))
    }

    /// Number of vertices reachable from `start` without crossing to `blocked`.
    fn side_size(&self, start: Vertex, blocked: Vertex) -> usize {
        let mut count = 0;
        let mut stack = vec![(start, blocked)];
        while let Some((u, from)) = stack.pop() {
            count += 1;
            stack.extend(
                self.neighbors(u)
                    .iter()
                    .filter(|&&w| w != from)
                    .map(|&w| (w, u)),
            );
        }
        count
    }

    /// Status of every vertex in linear time: `s(root)` is the depth sum and
    /// crossing an edge towards a subtree of size `k` changes status by `n - 2k`.
    pub fn statuses_by_rerooting(&self) -> Vec<Status> {
        let n = self.n();
        let parent = self.parents_from(0);
        let order = self.preorder_from(0);
        let mut size = vec![1u64; n];
        let mut depth = vec![0u64; n];
        for &v in &order[1..] {
            depth[v] = depth[parent[v].unwrap()] + 1;
        }
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        let mut status = vec![0u64; n];
        status[0] = depth.iter().sum();
        for &v in &order[1..] {
            status[v] = status[parent[v].unwrap()] + n as u64 - 2 * size[v];
        }
        status
    }

    /// Vertices in depth-first preorder from `root`.
    pub fn preorder_from(&self, root: Vertex) -> Vec<Vertex> {
        let mut order = Vec::with_capacity(self.n());
        let mut stack = vec![(root, usize::MAX)];
        while let Some((u, from)) = stack.pop() {
            order.push(u);
            stack.extend(
                self.neighbors(u)
                    .iter()
                    .rev()
                    .filter(|&&w| w != from)
                    .map(|&w| (w, u)),
            );
        }
        order
    }

    /// Checks that statuses strictly increase along every path that leaves
    /// a median vertex through a non-median neighbour.
    pub fn median_path_is_increasing(&self) -> bool {
        let statuses = self.statuses();
        let best = statuses.iter().copied().min().unwrap_or(0);
        let is_median = |v: Vertex| statuses[v] == best;
        for m in (0..self.n()).filter(|&v| is_median(v)) {
            for &first in self.neighbors(m).iter().filter(|&&v| !is_median(v)) {
                let mut stack = vec![(first, m)];
                while let Some((u, from)) = stack.pop() {
                    if statuses[u] <= statuses[from] {
                        return false;
                    }
                    stack.extend(
                        self.neighbors(u)
                            .iter()
                            .filter(|&&w| w != from)
                            .map(|&w| (w, u)),
                    );
                }
            }
        }
        true
    }
}

impl TryFrom<Graph> for Tree {
    type Error = GraphError;

    fn try_from(graph: Graph) -> Result<Self, Self::Error> {
        if graph.edge_count() != graph.n() - 1 {
            return Err(GraphError::NotATree {
                n: graph.n(),
                edges: graph.edge_count(),
            });
        }
        Ok(Tree { graph })
    }
}

impl Deref for Tree {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

/// Cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges).expect("Petersen graph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Tree {
        Tree::path(4).unwrap()
    }

    #[test]
    fn distances_of_small_graphs() {
        let p3 = Tree::path(3).unwrap();
        assert_eq!(
            p3.all_pairs_distances().to_rows(),
            vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]
        );
        assert_eq!(
            Tree::single_vertex().all_pairs_distances().to_rows(),
            vec![vec![0]]
        );
        let star = Tree::star(3);
        let d = star.all_pairs_distances();
        assert_eq!(d.get(1, 2), 2);
        assert_eq!(d.get(0, 3), 1);
    }

    #[test]
    fn status_values() {
        let p4 = p4();
        assert_eq!(p4.status(0).unwrap(), 6);
        assert_eq!(p4.status(1).unwrap(), 4);
        assert_eq!(Tree::single_vertex().status(0).unwrap(), 0);
        let star = Tree::star(3);
        assert_eq!(star.status(0).unwrap(), 3);
        assert_eq!(star.status(1).unwrap(), 5);
        assert_eq!(
            p4.status(7),
            Err(GraphError::VertexOutOfRange { vertex: 7, n: 4 })
        );
    }

    #[test]
    fn status_sequences_of_paths() {
        assert_eq!(p4().status_sequence().as_slice(), &[4, 4, 6, 6]);
        let p5 = Tree::path(5).unwrap().status_sequence();
        assert_eq!(p5.as_slice(), &[6, 7, 7, 10, 10]);
        assert_eq!(*p5.as_slice().last().unwrap(), 5 * 4 / 2);
    }

    #[test]
    fn distinct_counts() {
        assert_eq!(p4().distinct_status_count(), 2);
        assert_eq!(cycle(5).unwrap().distinct_status_count(), 1);
        assert_eq!(Tree::path(5).unwrap().distinct_status_count(), 3);
    }

    #[test]
    fn metrics_of_small_trees() {
        let m = Tree::path(5).unwrap().metrics();
        assert_eq!((m.diameter, m.depth, m.radius), (4, 2, 2));
        assert_eq!(m.median, vec![2]);
        assert_eq!(m.center, vec![2]);
        let k2 = Tree::path(2).unwrap().metrics();
        assert_eq!((k2.diameter, k2.depth), (1, 1));
        assert_eq!(k2.median.len(), 2);
        assert_eq!(k2.center.len(), 2);
    }

    #[test]
    fn edge_split_examples() {
        let p4 = p4();
        assert_eq!(p4.edge_split(1, 2).unwrap(), (2, 2));
        assert_eq!(p4.edge_split(0, 1).unwrap(), (1, 3));
        let s = p4.statuses();
        assert_eq!(s[0] - s[1], 3 - 1);
        assert_eq!(p4.edge_split(0, 2), Err(GraphError::NotAnEdge(0, 2)));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::from_edges(0, &[]), Err(GraphError::Empty));
        assert_eq!(
            Graph::from_edges(2, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1)]),
            Err(GraphError::Disconnected)
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert!(matches!(
            Tree::try_from(cycle(4).unwrap()),
            Err(GraphError::NotATree { n: 4, edges: 4 })
        ));
    }

    #[test]
    fn rerooting_matches_bfs() {
        let t = Tree::from_edges(7, &[(0, 3), (1, 4), (2, 6), (3, 5), (4, 6), (5, 6)]).unwrap();
        assert_eq!(t.statuses_by_rerooting(), t.statuses());
        assert_eq!(Tree::single_vertex().statuses_by_rerooting(), vec![0]);
    }

    #[test]
    fn median_monotone_on_small_trees() {
        assert!(Tree::path(5).unwrap().median_path_is_increasing());
        assert!(Tree::star(4).median_path_is_increasing());
    }

    #[test]
    fn petersen_is_cubic_and_transmission_regular() {
        let g = petersen();
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert_eq!(g.status_sequence().as_slice(), &[15; 10]);
    }
}
