//! Realizability by trees of depth at most 3 around a low-degree root.
//!
//! Fix the root status `s_r` and the statuses `I` of the root's neighbours.
//! Every vertex at distance 2 from the root together with its leaf children
//! forms an `(i, j)`-branch, and the edge-split identity forces the branch
//! shape from the two statuses alone. Counting branches of each kind gives a
//! small integer feasibility system, solved here by depth-first
//! branch-and-bound.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Status, StatusSequence, Tree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SrtError {
    #[error("delta must be at least 1")]
    ZeroDelta,
    #[error("invalid branch: {0}")]
    InvalidBranch(String),
    #[error("inconsistent center configuration: {0}")]
    InconsistentConfig(String),
}

/// Shape of a branch hanging below a root neighbour of status `parent_status`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchProfile {
    pub parent_status: Status,
    pub child_status: Status,
    pub leaf_status: Status,
    pub leaf_count: u64,
    /// Number of branch vertices of each status (the child and its leaves).
    pub coefficients: BTreeMap<Status, u64>,
}

impl BranchProfile {
    /// Vertices in the branch.
    pub fn size(&self) -> u64 {
        1 + self.leaf_count
    }

    /// Contribution to the root's status: the child at distance 2 and its
    /// leaves at distance 3.
    pub fn root_distance_sum(&self) -> u64 {
        2 + 3 * self.leaf_count
    }
}

/// The branch below a vertex of status `s_i` through a child of status `s_j`
/// in an `n`-vertex tree. Deleting edge `i-j` leaves `1 + L` vertices on the
/// child side, so `s_j - s_i = n - 2(1 + L)`; each leaf sits at `s_j + n - 2`.
pub fn branch_profile(
    n: u64,
    parent_status: Status,
    child_status: Status,
) -> Result<BranchProfile, SrtError> {
    let twice_side = n as i128 + parent_status as i128 - child_status as i128;
    if twice_side % 2 != 0 {
        return Err(SrtError::InvalidBranch(format!(
            "n + s_i - s_j = {twice_side} is odd"
        )));
    }
    let leaf_count = twice_side / 2 - 1;
    if leaf_count < 0 || twice_side / 2 >= n as i128 {
        return Err(SrtError::InvalidBranch(format!(
            "child side would hold {} of {n} vertices",
            twice_side / 2
        )));
    }
    let leaf_count = leaf_count as u64;
    let leaf_status = child_status + n - 2;
    let mut coefficients = BTreeMap::new();
    coefficients.insert(child_status, 1);
    if leaf_count > 0 {
        *coefficients.entry(leaf_status).or_insert(0) += leaf_count;
    }
    Ok(BranchProfile {
        parent_status,
        child_status,
        leaf_status,
        leaf_count,
        coefficients,
    })
}

/// Root status plus the multiset of root-neighbour statuses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CenterConfig {
    pub n: u64,
    pub root_status: Status,
    /// Sorted ascending.
    pub neighbor_statuses: Vec<Status>,
}

impl CenterConfig {
    pub fn new(n: u64, root_status: Status, mut neighbor_statuses: Vec<Status>) -> Self {
        neighbor_statuses.sort_unstable();
        CenterConfig {
            n,
            root_status,
            neighbor_statuses,
        }
    }

    /// Vertices in the subtree of a root neighbour of status `s`,
    /// `(n + s_r - s) / 2`, if that is a positive integer.
    pub fn subtree_size(&self, s: Status) -> Option<u64> {
        let twice = self.n as i128 + self.root_status as i128 - s as i128;
        (twice > 0 && twice % 2 == 0).then_some((twice / 2) as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ConstraintKind {
    /// Vertices of this status outside the root and its neighbours.
    Multiplicity(Status),
    /// Descendants of the root neighbour at this position of `I`.
    SubtreeSize(usize),
    /// Distances from the root beyond its neighbours.
    RootStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub kind: ConstraintKind,
    /// One coefficient per variable.
    pub coefficients: Vec<u64>,
    pub target: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Variable {
    /// Position in the config's neighbour list.
    pub neighbor: usize,
    pub profile: BranchProfile,
}

/// `sum_v coefficient * x_v = target` for every constraint, `x_v >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilitySystem {
    pub config: CenterConfig,
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
}

pub fn build_system(
    seq: &StatusSequence,
    config: &CenterConfig,
) -> Result<FeasibilitySystem, SrtError> {
    let n = seq.len() as u64;
    if config.n != n {
        return Err(SrtError::InconsistentConfig(format!(
            "config order {} but sequence has {n} values",
            config.n
        )));
    }
    let mut remaining = seq.multiplicities();
    let mut take = |s: Status| match remaining.get_mut(&s) {
        Some(c) if *c > 0 => {
            *c -= 1;
            Ok(())
        }
        _ => Err(SrtError::InconsistentConfig(format!(
            "status {s} not available"
        ))),
    };
    take(config.root_status)?;
    for &s in &config.neighbor_statuses {
        take(s)?;
    }
    remaining.retain(|_, c| *c > 0);

    let mut descendants = Vec::with_capacity(config.neighbor_statuses.len());
    for &s in &config.neighbor_statuses {
        let size = config.subtree_size(s).ok_or_else(|| {
            SrtError::InconsistentConfig(format!("n + s_r - {s} is not a positive even number"))
        })?;
        descendants.push(size - 1);
    }
    let beyond = config
        .root_status
        .checked_sub(config.neighbor_statuses.len() as u64)
        .ok_or_else(|| SrtError::InconsistentConfig("root status below its degree".into()))?;

    let mut variables = Vec::new();
    for (p, &s_i) in config.neighbor_statuses.iter().enumerate() {
        for &s_j in remaining.keys() {
            let Ok(profile) = branch_profile(n, s_i, s_j) else {
                continue;
            };
            let fits = profile.size() <= descendants[p]
                && profile
                    .coefficients
                    .iter()
                    .all(|(s, &c)| remaining.get(s).is_some_and(|&have| have as u64 >= c));
            if fits {
                variables.push(Variable {
                    neighbor: p,
                    profile,
                });
            }
        }
    }

    let mut constraints = Vec::new();
    for (&s, &count) in &remaining {
        constraints.push(Constraint {
            kind: ConstraintKind::Multiplicity(s),
            coefficients: variables
                .iter()
                .map(|v| v.profile.coefficients.get(&s).copied().unwrap_or(0))
                .collect(),
            target: count as u64,
        });
    }
    for (p, &d) in descendants.iter().enumerate() {
        constraints.push(Constraint {
            kind: ConstraintKind::SubtreeSize(p),
            coefficients: variables
                .iter()
                .map(|v| if v.neighbor == p { v.profile.size() } else { 0 })
                .collect(),
            target: d,
        });
    }
    constraints.push(Constraint {
        kind: ConstraintKind::RootStatus,
        coefficients: variables
            .iter()
            .map(|v| v.profile.root_distance_sum())
            .collect(),
        target: beyond,
    });
    Ok(FeasibilitySystem {
        config: config.clone(),
        variables,
        constraints,
    })
}

/// Lexicographically least nonnegative solution, or `None` when the search
/// is exhausted.
pub fn solve_system(sys: &FeasibilitySystem) -> Option<Vec<u64>> {
    let vars = sys.variables.len();
    let rows: Vec<&[u64]> = sys
        .constraints
        .iter()
        .map(|c| c.coefficients.as_slice())
        .collect();
    // suffix_gcd[c][k]: gcd of coefficients of variables k.. in row c
    let suffix_gcd: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            let mut g = vec![0u64; vars + 1];
            for k in (0..vars).rev() {
                g[k] = gcd(g[k + 1], row[k]);
            }
            g
        })
        .collect();
    let mut remaining: Vec<u64> = sys.constraints.iter().map(|c| c.target).collect();
    let mut x = vec![0u64; vars];
    if branch(0, &rows, &suffix_gcd, &mut remaining, &mut x) {
        Some(x)
    } else {
        None
    }
}

fn branch(
    k: usize,
    rows: &[&[u64]],
    suffix_gcd: &[Vec<u64>],
    remaining: &mut [u64],
    x: &mut [u64],
) -> bool {
    for (c, &r) in remaining.iter().enumerate() {
        let g = suffix_gcd[c][k];
        if (g == 0 && r != 0) || (g != 0 && r % g != 0) {
            return false;
        }
    }
    if k == x.len() {
        return true;
    }
    let upper = rows
        .iter()
        .zip(remaining.iter())
        .filter(|(row, _)| row[k] > 0)
        .map(|(row, &r)| r / row[k])
        .min()
        .unwrap_or(0);
    for value in 0..=upper {
        for (row, r) in rows.iter().zip(remaining.iter_mut()) {
            *r -= row[k] * value;
        }
        x[k] = value;
        let found = branch(k + 1, rows, suffix_gcd, remaining, x);
        for (row, r) in rows.iter().zip(remaining.iter_mut()) {
            *r += row[k] * value;
        }
        if found {
            return true;
        }
    }
    x[k] = 0;
    false
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Root vertex 0, neighbours `1..=|I|` in config order, then each branch
/// child followed by its leaves, branches in variable order.
pub fn assemble_tree(sys: &FeasibilitySystem, assignment: &[u64]) -> Tree {
    let degree = sys.config.neighbor_statuses.len();
    let mut parents: Vec<Option<Vertex>> = vec![None];
    parents.extend((0..degree).map(|_| Some(0)));
    for (var, &count) in sys.variables.iter().zip(assignment) {
        for _ in 0..count {
            let child = parents.len();
            parents.push(Some(1 + var.neighbor));
            parents.extend((0..var.profile.leaf_count).map(|_| Some(child)));
        }
    }
    Tree::from_parents(&parents).expect("branches form a tree")
}

/// Configurations with root degree `1..=delta` whose neighbour subtrees
/// account for all `n - 1` non-root vertices, in increasing order.
pub fn center_configs(seq: &StatusSequence, delta: usize) -> Vec<CenterConfig> {
    let n = seq.len() as u64;
    let counts: Vec<(Status, usize)> = seq.multiplicities().into_iter().collect();
    let mut out = Vec::new();
    for (ri, &(root, _)) in counts.iter().enumerate() {
        let probe = CenterConfig::new(n, root, Vec::new());
        let mut available: Vec<(Status, usize, u64)> = Vec::new();
        for (ci, &(s, c)) in counts.iter().enumerate() {
            let c = if ci == ri { c - 1 } else { c };
            if let (true, Some(size)) = (c > 0, probe.subtree_size(s)) {
                available.push((s, c, size));
            }
        }
        let mut chosen = Vec::new();
        collect_neighbor_sets(&available, 0, n - 1, delta, &mut chosen, &mut |set| {
            out.push(CenterConfig::new(n, root, set.to_vec()));
        });
    }
    out.sort();
    out
}

fn collect_neighbor_sets(
    available: &[(Status, usize, u64)],
    start: usize,
    left: u64,
    slots: usize,
    chosen: &mut Vec<Status>,
    emit: &mut dyn FnMut(&[Status]),
) {
    if left == 0 {
        if !chosen.is_empty() {
            emit(chosen);
        }
        return;
    }
    if slots == 0 {
        return;
    }
    for idx in start..available.len() {
        let (s, count, size) = available[idx];
        let already = chosen.iter().filter(|&&c| c == s).count();
        if already >= count || size > left {
            continue;
        }
        chosen.push(s);
        collect_neighbor_sets(available, idx, left - size, slots - 1, chosen, emit);
        chosen.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrtRealization {
    pub tree: Tree,
    pub config: CenterConfig,
    pub system: FeasibilitySystem,
    pub assignment: Vec<u64>,
}

/// First verified realization over configurations in increasing order, or
/// `None` when no tree of depth at most 3 around a root of degree at most
/// `delta` has this status sequence.
pub fn srt_d3_realize(
    seq: &StatusSequence,
    delta: usize,
) -> Result<Option<SrtRealization>, SrtError> {
    if delta == 0 {
        return Err(SrtError::ZeroDelta);
    }
    if seq.as_slice() == [0] {
        let config = CenterConfig::new(1, 0, Vec::new());
        let system = build_system(seq, &config)?;
        return Ok(Some(SrtRealization {
            tree: Tree::single_vertex(),
            config,
            system,
            assignment: Vec::new(),
        }));
    }
    for config in center_configs(seq, delta) {
        let Ok(system) = build_system(seq, &config) else {
            continue;
        };
        let Some(assignment) = solve_system(&system) else {
            continue;
        };
        let tree = assemble_tree(&system, &assignment);
        if tree.status_sequence() == *seq {
            return Ok(Some(SrtRealization {
                tree,
                config,
                system,
                assignment,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardness::{reduce_3partition, ThreePartitionInstance};
    use crate::oracle::is_isomorphic;

    fn reduced(v: &[u64]) -> StatusSequence {
        reduce_3partition(&ThreePartitionInstance::new(v.to_vec()).unwrap())
            .unwrap()
            .to_sequence()
    }

    #[test]
    fn branch_profile_examples() {
        let p = branch_profile(23, 40, 47).unwrap();
        assert_eq!((p.leaf_count, p.leaf_status), (7, 68));
        assert_eq!(p.coefficients, [(47, 1), (68, 7)].into_iter().collect());
        assert!(matches!(
            branch_profile(23, 40, 50),
            Err(SrtError::InvalidBranch(_))
        ));
        let leaf = branch_profile(23, 40, 40 + 21).unwrap();
        assert_eq!(leaf.leaf_count, 0);
        assert_eq!(leaf.coefficients.len(), 1);
        assert_eq!(branch_profile(23, 40, 47), branch_profile(23, 40, 47));
    }

    #[test]
    fn single_triple_system() {
        let seq = reduced(&[5, 6, 7]);
        let config = CenterConfig::new(23, 61, vec![40]);
        let sys = build_system(&seq, &config).unwrap();
        let x = solve_system(&sys).unwrap();
        let used: Vec<Status> = sys
            .variables
            .iter()
            .zip(&x)
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| {
                assert_eq!(c, 1);
                v.profile.child_status
            })
            .collect();
        assert_eq!(used, vec![47, 49, 51]);
    }

    #[test]
    fn inconsistent_configs() {
        let seq = reduced(&[5, 6, 7]);
        // 23 + 61 - 47 is odd
        assert!(matches!(
            build_system(&seq, &CenterConfig::new(23, 61, vec![47])),
            Err(SrtError::InconsistentConfig(_))
        ));
        assert!(matches!(
            build_system(&seq, &CenterConfig::new(23, 61, vec![40, 40])),
            Err(SrtError::InconsistentConfig(_))
        ));
    }

    #[test]
    fn empty_system_is_trivially_feasible() {
        let seq = StatusSequence::new(vec![3, 5, 5, 5]);
        let sys = build_system(&seq, &CenterConfig::new(4, 3, vec![5, 5, 5])).unwrap();
        assert!(sys.variables.is_empty());
        assert_eq!(solve_system(&sys), Some(vec![]));
    }

    #[test]
    fn parity_pruning() {
        let sys = FeasibilitySystem {
            config: CenterConfig::new(1, 0, vec![]),
            variables: Vec::new(),
            constraints: vec![Constraint {
                kind: ConstraintKind::RootStatus,
                coefficients: vec![],
                target: 3,
            }],
        };
        assert_eq!(solve_system(&sys), None);
        let profile = branch_profile(10, 5, 9).unwrap();
        let sys = FeasibilitySystem {
            config: CenterConfig::new(10, 0, vec![]),
            variables: vec![
                Variable {
                    neighbor: 0,
                    profile: profile.clone(),
                },
                Variable {
                    neighbor: 0,
                    profile,
                },
            ],
            constraints: vec![Constraint {
                kind: ConstraintKind::RootStatus,
                coefficients: vec![2, 4],
                target: 7,
            }],
        };
        assert_eq!(solve_system(&sys), None);
    }

    #[test]
    fn lexicographically_least_solution() {
        let profile = branch_profile(10, 5, 9).unwrap();
        let sys = FeasibilitySystem {
            config: CenterConfig::new(10, 0, vec![]),
            variables: vec![
                Variable {
                    neighbor: 0,
                    profile: profile.clone(),
                },
                Variable {
                    neighbor: 1,
                    profile,
                },
            ],
            constraints: vec![Constraint {
                kind: ConstraintKind::RootStatus,
                coefficients: vec![1, 1],
                target: 2,
            }],
        };
        assert_eq!(solve_system(&sys), Some(vec![0, 2]));
    }

    #[test]
    fn realizes_gadget_with_one_root_neighbour() {
        let seq = reduced(&[5, 6, 7]);
        let r = srt_d3_realize(&seq, 1).unwrap().unwrap();
        assert_eq!(r.tree.status_sequence(), seq);
        let gadget = Tree::from_edges(
            23,
            &[(0, 1), (1, 2), (1, 3), (1, 4)]
                .into_iter()
                .chain((5..10).map(|l| (2, l)))
                .chain((10..16).map(|l| (3, l)))
                .chain((16..23).map(|l| (4, l)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(is_isomorphic(&r.tree, &gadget));
    }

    #[test]
    fn realizes_star() {
        let seq = StatusSequence::new(vec![3, 5, 5, 5]);
        let r = srt_d3_realize(&seq, 3).unwrap().unwrap();
        assert!(is_isomorphic(&r.tree, &Tree::star(3)));
        assert!(
            srt_d3_realize(&seq, 2).unwrap().is_some(),
            "a leaf root of degree 1 also works"
        );
    }

    #[test]
    fn small_cases() {
        assert!(srt_d3_realize(&StatusSequence::new(vec![0]), 1)
            .unwrap()
            .is_some());
        assert!(srt_d3_realize(&StatusSequence::new(vec![1, 1]), 1)
            .unwrap()
            .is_some());
        assert!(srt_d3_realize(&StatusSequence::new(vec![3, 4, 5]), 2)
            .unwrap()
            .is_none());
        assert_eq!(
            srt_d3_realize(&StatusSequence::new(vec![0]), 0),
            Err(SrtError::ZeroDelta)
        );
    }
}
