//! Status, orbit, distance and equitable partitions, and quotient matrices.
//!
//! Quotient matrices are exact rationals over a chosen base matrix: the
//! adjacency matrix (neighbour counts) or the distance matrix.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::automorphism::{self, AutomorphismError};
use crate::graph::{Graph, GraphError, Status, Vertex};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("vertex {0} appears in more than one part")]
    Overlap(Vertex),
    #[error("vertex {0} is not covered")]
    Uncovered(Vertex),
    #[error("vertex {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("G_m needs m >= 3, got {0}")]
    GmTooSmall(usize),
    #[error(transparent)]
    Automorphism(#[from] AutomorphismError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Disjoint nonempty parts covering `0..n`, each part sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    parts: Vec<Vec<Vertex>>,
    #[serde(skip)]
    part_of: Vec<usize>,
}

impl Partition {
    /// Validates and orders parts by their smallest member.
    pub fn new(n: usize, mut parts: Vec<Vec<Vertex>>) -> Result<Self, PartitionError> {
        if let Some(i) = parts.iter().position(Vec::is_empty) {
            return Err(PartitionError::EmptyPart(i));
        }
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort_by_key(|p| p.first().copied());
        Partition::ordered(n, parts)
    }

    /// Validates but keeps the given part order.
    pub fn ordered(n: usize, mut parts: Vec<Vec<Vertex>>) -> Result<Self, PartitionError> {
        let mut part_of = vec![usize::MAX; n];
        for (i, part) in parts.iter_mut().enumerate() {
            if part.is_empty() {
                return Err(PartitionError::EmptyPart(i));
            }
            part.sort_unstable();
            for &v in part.iter() {
                if v >= n {
                    return Err(PartitionError::OutOfRange { vertex: v, n });
                }
                if part_of[v] != usize::MAX {
                    return Err(PartitionError::Overlap(v));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(PartitionError::Uncovered(v));
        }
        Ok(Partition { parts, part_of })
    }

    /// Groups vertices by key; parts ordered by smallest member.
    pub fn from_keys<K: Ord + Clone>(keys: &[K]) -> Self {
        let mut sorted: Vec<K> = keys.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut parts = vec![Vec::new(); sorted.len()];
        for (v, k) in keys.iter().enumerate() {
            parts[sorted.binary_search(k).unwrap()].push(v);
        }
        Partition::new(keys.len(), parts).expect("grouping covers every vertex once")
    }

    pub fn discrete(n: usize) -> Self {
        Partition::new(n, (0..n).map(|v| vec![v]).collect()).expect("singletons partition")
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn n(&self) -> usize {
        self.part_of.len()
    }

    pub fn part_of(&self, v: Vertex) -> usize {
        self.part_of[v]
    }

    pub fn is_discrete(&self) -> bool {
        self.parts.len() == self.part_of.len()
    }

    /// Same parts irrespective of order.
    pub fn same_parts(&self, other: &Partition) -> bool {
        let canon = |p: &Partition| {
            let mut parts = p.parts.clone();
            parts.sort();
            parts
        };
        canon(self) == canon(other)
    }
}

/// True iff every part of `fine` lies inside a part of `coarse`.
pub fn refines(fine: &Partition, coarse: &Partition) -> bool {
    fine.n() == coarse.n()
        && fine
            .parts()
            .iter()
            .all(|p| p.iter().all(|&v| coarse.part_of(v) == coarse.part_of(p[0])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    Adjacency,
    Distance,
}

impl std::str::FromStr for Base {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "adjacency" => Ok(Base::Adjacency),
            "distance" => Ok(Base::Distance),
            other => Err(format!(
                "unknown base `{other}` (expected adjacency or distance)"
            )),
        }
    }
}

/// Dense base matrix of `g`.
fn base_matrix(g: &Graph, base: Base) -> Vec<Vec<i64>> {
    match base {
        Base::Adjacency => (0..g.n())
            .map(|u| (0..g.n()).map(|v| g.has_edge(u, v) as i64).collect())
            .collect(),
        Base::Distance => g
            .all_pairs_distances()
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(i64::from).collect())
            .collect(),
    }
}

/// `block_sums[u][j]`: sum of row `u` of the base matrix over part `j`.
fn block_row_sums(matrix: &[Vec<i64>], p: &Partition) -> Vec<Vec<i64>> {
    matrix
        .iter()
        .map(|row| {
            let mut sums = vec![0i64; p.len()];
            for (w, &x) in row.iter().enumerate() {
                sums[p.part_of(w)] += x;
            }
            sums
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub base: Base,
    pub entries: Vec<Vec<Rational>>,
}

impl QuotientMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

impl fmt::Display for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `b_ij = (1/|V_i|) * sum of base entries from V_i rows to V_j columns`.
pub fn quotient_matrix(g: &Graph, p: &Partition, base: Base) -> QuotientMatrix {
    let sums = block_row_sums(&base_matrix(g, base), p);
    let entries = p
        .parts()
        .iter()
        .map(|part| {
            (0..p.len())
                .map(|j| {
                    let total: i64 = part.iter().map(|&u| sums[u][j]).sum();
                    Rational::new(total, part.len() as i64)
                })
                .collect()
        })
        .collect();
    QuotientMatrix { base, entries }
}

/// Every block of the base matrix has constant row sums.
pub fn is_equitable(g: &Graph, p: &Partition, base: Base) -> bool {
    let sums = block_row_sums(&base_matrix(g, base), p);
    p.parts()
        .iter()
        .all(|part| part.iter().all(|&u| sums[u] == sums[part[0]]))
}

/// The same property checked as `S B = M S` with `S` the characteristic
/// matrix and `B` the quotient matrix.
pub fn is_equitable_by_reconstruction(g: &Graph, p: &Partition, base: Base) -> bool {
    let m = base_matrix(g, base);
    let b = quotient_matrix(g, p, base);
    (0..g.n()).all(|u| {
        (0..p.len()).all(|j| {
            let ms: i64 = p.parts()[j].iter().map(|&w| m[u][w]).sum();
            b.entries[p.part_of(u)][j] == Rational::from_integer(ms)
        })
    })
}

pub fn status_partition(g: &Graph) -> Partition {
    Partition::from_keys(&g.statuses())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroupOrbits {
    pub partition: Partition,
    pub group_order: Option<u128>,
}

impl AutomorphismGroupOrbits {
    pub fn is_trivial(&self) -> bool {
        self.partition.is_discrete()
    }
}

pub fn orbit_partition(g: &Graph) -> Result<AutomorphismGroupOrbits, PartitionError> {
    let o = automorphism::orbits(g)?;
    Ok(AutomorphismGroupOrbits {
        partition: Partition::from_keys(&o.orbit_of),
        group_order: o.group_order,
    })
}

/// Parts `V_0 = {v}, V_1, ..., V_ecc(v)` in distance order.
pub fn distance_partition(g: &Graph, v: Vertex) -> Result<Partition, PartitionError> {
    if v >= g.n() {
        return Err(PartitionError::OutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    let dist = g.bfs_distances(v);
    let ecc = dist.iter().copied().max().unwrap_or(0) as usize;
    let mut parts = vec![Vec::new(); ecc + 1];
    for (w, &d) in dist.iter().enumerate() {
        parts[d as usize].push(w);
    }
    Partition::ordered(g.n(), parts)
}

/// Outcome of comparing distance-partition quotient matrices over all pairs
/// of equal-status vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop45Report {
    pub pairs_checked: usize,
    /// Equal-status pairs whose quotient matrices differ, including pairs
    /// with different eccentricities.
    pub mismatched_pairs: Vec<(Vertex, Vertex)>,
    pub all_pairs_match: bool,
    pub status_partition_equitable: bool,
    /// `all_pairs_match == status_partition_equitable`.
    pub consistent: bool,
}

/// Distance-base quotient matrices of the distance partitions of every pair
/// of equal-status vertices, against adjacency-equitability of the status
/// partition.
pub fn prop45_report(g: &Graph) -> Prop45Report {
    let statuses: Vec<Status> = g.statuses();
    let quotients: Vec<QuotientMatrix> = (0..g.n())
        .map(|v| {
            let p = distance_partition(g, v).expect("vertex in range");
            quotient_matrix(g, &p, Base::Distance)
        })
        .collect();
    let mut pairs_checked = 0;
    let mut mismatched_pairs = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if statuses[u] != statuses[v] {
                continue;
            }
            pairs_checked += 1;
            if quotients[u] != quotients[v] {
                mismatched_pairs.push((u, v));
            }
        }
    }
    let all_pairs_match = mismatched_pairs.is_empty();
    let status_partition_equitable = is_equitable(g, &status_partition(g), Base::Adjacency);
    Prop45Report {
        pairs_checked,
        mismatched_pairs,
        all_pairs_match,
        status_partition_equitable,
        consistent: all_pairs_match == status_partition_equitable,
    }
}

/// For every `u` and distance `h`, the averages of `|G_i(u) ∩ G_j(v)|` over
/// the vertices `v` at distance `h` from `u`, compared across all `u`.
pub fn is_distance_mean_regular(g: &Graph) -> bool {
    let d = g.all_pairs_distances();
    let n = g.n();
    let diam = (0..n)
        .flat_map(|u| d.row(u).iter().copied())
        .max()
        .unwrap_or(0) as usize;
    let profile = |u: Vertex| -> Vec<Option<Vec<Rational>>> {
        (0..=diam)
            .map(|h| {
                let at_h: Vec<Vertex> = (0..n).filter(|&v| d.get(u, v) as usize == h).collect();
                if at_h.is_empty() {
                    return None;
                }
                let mut counts = vec![0i64; (diam + 1) * (diam + 1)];
                for &v in &at_h {
                    for w in 0..n {
                        counts[d.get(u, w) as usize * (diam + 1) + d.get(v, w) as usize] += 1;
                    }
                }
                Some(
                    counts
                        .into_iter()
                        .map(|c| Rational::new(c, at_h.len() as i64))
                        .collect(),
                )
            })
            .collect()
    };
    let first = profile(0);
    (1..n).all(|u| profile(u) == first)
}

/// The graph `G_m` on `2m^2 + 2` vertices: hubs `a` and `b`, an `m^2`-cycle
/// `A` joined to `a`, `m` disjoint `m`-cycles `B` joined to `b`, and a
/// matching between `A` and `B` twisted on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gm {
    pub m: usize,
    pub graph: Graph,
}

impl Gm {
    pub fn a(&self) -> Vertex {
        0
    }

    pub fn b(&self) -> Vertex {
        2 * self.m * self.m + 1
    }

    pub fn a_ij(&self, i: usize, j: usize) -> Vertex {
        1 + i * self.m + j
    }

    pub fn b_ij(&self, i: usize, j: usize) -> Vertex {
        1 + self.m * self.m + i * self.m + j
    }

    pub fn a_set(&self) -> Vec<Vertex> {
        (1..=self.m * self.m).collect()
    }

    pub fn b_set(&self) -> Vec<Vertex> {
        (1 + self.m * self.m..=2 * self.m * self.m).collect()
    }

    /// `{{a}, A, B, {b}}`.
    pub fn hub_partition(&self) -> Partition {
        Partition::new(
            self.graph.n(),
            vec![vec![self.a()], self.a_set(), self.b_set(), vec![self.b()]],
        )
        .expect("hub partition covers G_m")
    }

    /// Vertex label such as `a`, `b`, `a_{1,2}`.
    pub fn label(&self, v: Vertex) -> String {
        let m2 = self.m * self.m;
        match v {
            0 => "a".into(),
            v if v == self.b() => "b".into(),
            v if v <= m2 => format!("a_{{{},{}}}", (v - 1) / self.m, (v - 1) % self.m),
            v => format!("b_{{{},{}}}", (v - 1 - m2) / self.m, (v - 1 - m2) % self.m),
        }
    }
}

pub fn generate_gm(m: usize) -> Result<Gm, PartitionError> {
    if m < 3 {
        return Err(PartitionError::GmTooSmall(m));
    }
    let mut gm = Gm {
        m,
        graph: Graph::from_edges(1, &[])?,
    };
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            edges.push((gm.a(), gm.a_ij(i, j)));
            edges.push((gm.b(), gm.b_ij(i, j)));
            let next_a = if j != m - 1 {
                gm.a_ij(i, j + 1)
            } else {
                gm.a_ij((i + 1) % m, 0)
            };
            edges.push((gm.a_ij(i, j), next_a));
            edges.push((gm.b_ij(i, j), gm.b_ij(i, (j + 1) % m)));
            let partner = if i != j || i == m - 1 {
                gm.b_ij(i, j)
            } else {
                let k = (i + 1) % (m - 1);
                gm.b_ij(k, k)
            };
            edges.push((gm.a_ij(i, j), partner));
        }
    }
    gm.graph = Graph::from_edges(2 * m * m + 2, &edges)?;
    Ok(gm)
}
