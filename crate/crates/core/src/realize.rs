//! Reconstruction of the unique tree behind a status-injective sequence.
//!
//! Vertices are processed from the largest status down. The vertex with the
//! largest unprocessed status is a leaf of what remains, and the edge-split
//! identity pins its parent's status to `a_i - n + 2(c_i + 1)` where `c_i`
//! counts the descendants already attached below it. The last vertex is the
//! root.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Status, Tree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("empty sequence")]
    Empty,
    #[error("sequence is not injective: {0} occurs more than once")]
    NotInjective(Status),
    #[error("not realizable: {0}")]
    NotRealizable(NotRealizable),
}

/// Why a sequence has no realizing tree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotRealizable {
    #[error("the parent of the vertex with status {status} would need status {wanted}, which is not available")]
    MissingParent { status: Status, wanted: i128 },
    #[error("two vertices always have equal status")]
    TwoVertices,
    #[error("a single vertex has status 0, not {0}")]
    SingleVertex(Status),
    #[error("the assembled tree has status sequence different from the input")]
    VerificationFailed,
}

/// Distinct status values, stored strictly decreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectiveSequence(Vec<Status>);

impl InjectiveSequence {
    /// Accepts values in any order; duplicates are rejected.
    pub fn new(mut values: Vec<Status>) -> Result<Self, RealizeError> {
        if values.is_empty() {
            return Err(RealizeError::Empty);
        }
        values.sort_unstable_by(|a, b| b.cmp(a));
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            return Err(RealizeError::NotInjective(w[0]));
        }
        Ok(InjectiveSequence(values))
    }

    /// Values from largest to smallest.
    pub fn values(&self) -> &[Status] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    /// Vertex `i` carries the `i`-th largest input value.
    pub tree: Tree,
    /// `parent[i]` for every vertex but the root (the last vertex).
    pub parent: Vec<Option<Vertex>>,
    pub status_of: Vec<Status>,
}

impl Realization {
    pub fn root(&self) -> Vertex {
        self.parent.len() - 1
    }
}

pub fn realize_injective(seq: &InjectiveSequence) -> Result<Realization, RealizeError> {
    let a = seq.values();
    let n = a.len();
    let fail = |reason| Err(RealizeError::NotRealizable(reason));
    match n {
        1 if a[0] == 0 => {
            return Ok(Realization {
                tree: Tree::single_vertex(),
                parent: vec![None],
                status_of: vec![0],
            })
        }
        1 => return fail(NotRealizable::SingleVertex(a[0])),
        2 => return fail(NotRealizable::TwoVertices),
        _ => {}
    }

    let index: BTreeMap<Status, Vertex> = a.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut descendants = vec![0i128; n];
    let mut parent = vec![None; n];
    for i in 0..n - 1 {
        let wanted = a[i] as i128 - n as i128 + 2 * (descendants[i] + 1);
        let j = match u64::try_from(wanted).ok().and_then(|w| index.get(&w)) {
            Some(&j) if j > i => j,
            _ => {
                return fail(NotRealizable::MissingParent {
                    status: a[i],
                    wanted,
                })
            }
        };
        parent[i] = Some(j);
        descendants[j] += descendants[i] + 1;
    }

    let tree = Tree::from_parents(&parent).expect("parents point to later vertices");
    if !verify_realization(&tree, seq) {
        return fail(NotRealizable::VerificationFailed);
    }
    Ok(Realization {
        tree,
        parent,
        status_of: a.to_vec(),
    })
}

/// True iff the tree's status multiset equals `seq`.
pub fn verify_realization(tree: &Tree, seq: &InjectiveSequence) -> bool {
    if tree.n() != seq.len() {
        return false;
    }
    let mut got = tree.statuses_by_rerooting();
    got.sort_unstable_by(|a, b| b.cmp(a));
    got == seq.values()
}
