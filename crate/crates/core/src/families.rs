//! Named tree families and the structural tests for few distinct statuses.
//!
//! A double star is `K_2` with `a >= 1` pendants on one end and `b >= 1` on
//! the other, balanced when `a == b`. The family 𝒯 is obtained from a star
//! with at least two leaves, or from a balanced double star, by appending the
//! same number `b >= 1` of pendants to every leaf.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Tree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters for {kind}: {reason}")]
    InvalidParameters { kind: &'static str, reason: String },
    #[error("unknown family `{0}`")]
    UnknownKind(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FamilySpec {
    Path {
        n: usize,
    },
    Star {
        leaves: usize,
    },
    DoubleStar {
        a: usize,
        b: usize,
    },
    BalancedDoubleStar {
        a: usize,
    },
    /// Star with `leaves` leaves, `b` pendants appended to each leaf.
    FamilyTStar {
        leaves: usize,
        b: usize,
    },
    /// Balanced double star with `a` pendants per end, then `b` per leaf.
    FamilyTDoubleStar {
        a: usize,
        b: usize,
    },
    /// Legs of the given lengths glued at one vertex.
    Spider {
        legs: Vec<usize>,
    },
}

impl FamilySpec {
    pub const KINDS: [&'static str; 7] = [
        "path",
        "star",
        "double-star",
        "balanced-double-star",
        "family-t-star",
        "family-t-double-star",
        "spider",
    ];

    /// Builds a spec from a kind name (dashes or underscores) and its
    /// positional parameters.
    pub fn parse(kind: &str, params: &[usize]) -> Result<Self, FamilyError> {
        let kind_norm = kind.replace('_', "-").to_ascii_lowercase();
        let arity = |want: usize, name: &'static str| {
            if params.len() == want {
                Ok(())
            } else {
                Err(FamilyError::InvalidParameters {
                    kind: name,
                    reason: format!("expected {want} parameter(s), got {}", params.len()),
                })
            }
        };
        Ok(match kind_norm.as_str() {
            "path" => {
                arity(1, "path")?;
                FamilySpec::Path { n: params[0] }
            }
            "star" => {
                arity(1, "star")?;
                FamilySpec::Star { leaves: params[0] }
            }
            "double-star" => {
                arity(2, "double-star")?;
                FamilySpec::DoubleStar {
                    a: params[0],
                    b: params[1],
                }
            }
            "balanced-double-star" => {
                arity(1, "balanced-double-star")?;
                FamilySpec::BalancedDoubleStar { a: params[0] }
            }
            "family-t-star" => {
                arity(2, "family-t-star")?;
                FamilySpec::FamilyTStar {
                    leaves: params[0],
                    b: params[1],
                }
            }
            "family-t-double-star" => {
                arity(2, "family-t-double-star")?;
                FamilySpec::FamilyTDoubleStar {
                    a: params[0],
                    b: params[1],
                }
            }
            "spider" => FamilySpec::Spider {
                legs: params.to_vec(),
            },
            _ => return Err(FamilyError::UnknownKind(kind.to_string())),
        })
    }
}

fn invalid(kind: &'static str, reason: &str) -> FamilyError {
    FamilyError::InvalidParameters {
        kind,
        reason: reason.to_string(),
    }
}

/// Builder that appends vertices to a growing parent list.
struct Builder {
    parents: Vec<Option<Vertex>>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            parents: vec![None],
        }
    }

    fn add(&mut self, parent: Vertex) -> Vertex {
        self.parents.push(Some(parent));
        self.parents.len() - 1
    }

    fn pendants(&mut self, parent: Vertex, count: usize) -> Vec<Vertex> {
        (0..count).map(|_| self.add(parent)).collect()
    }

    fn finish(self) -> Tree {
        Tree::from_parents(&self.parents).expect("builder only appends tree edges")
    }
}

pub fn generate(spec: &FamilySpec) -> Result<Tree, FamilyError> {
    let mut t = Builder::new();
    match *spec {
        FamilySpec::Path { n } => {
            if n == 0 {
                return Err(invalid("path", "n must be at least 1"));
            }
            let mut last = 0;
            for _ in 1..n {
                last = t.add(last);
            }
        }
        FamilySpec::Star { leaves } => {
            if leaves == 0 {
                return Err(invalid("star", "needs at least one leaf"));
            }
            t.pendants(0, leaves);
        }
        FamilySpec::DoubleStar { a, b } => {
            if a == 0 || b == 0 {
                return Err(invalid("double-star", "a and b must be at least 1"));
            }
            let other = t.add(0);
            t.pendants(0, a);
            t.pendants(other, b);
        }
        FamilySpec::BalancedDoubleStar { a } => {
            if a == 0 {
                return Err(invalid("balanced-double-star", "a must be at least 1"));
            }
            return generate(&FamilySpec::DoubleStar { a, b: a });
        }
        FamilySpec::FamilyTStar { leaves, b } => {
            if leaves < 2 || b == 0 {
                return Err(invalid(
                    "family-t-star",
                    "needs at least 2 star leaves and b >= 1",
                ));
            }
            for leaf in t.pendants(0, leaves) {
                t.pendants(leaf, b);
            }
        }
        FamilySpec::FamilyTDoubleStar { a, b } => {
            if a == 0 || b == 0 {
                return Err(invalid(
                    "family-t-double-star",
                    "a and b must be at least 1",
                ));
            }
            let other = t.add(0);
            for hub in [0, other] {
                for leaf in t.pendants(hub, a) {
                    t.pendants(leaf, b);
                }
            }
        }
        FamilySpec::Spider { ref legs } => {
            if legs.len() < 3 || legs.contains(&0) {
                return Err(invalid(
                    "spider",
                    "needs at least 3 legs of positive length",
                ));
            }
            for &len in legs {
                let mut last = 0;
                for _ in 0..len {
                    last = t.add(last);
                }
            }
        }
    }
    Ok(t.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KBound {
    /// Number of distinct status values.
    pub k: usize,
    /// `ceil((diam + 1) / 2)`.
    pub lower_bound: usize,
    pub tight: bool,
}

impl KBound {
    pub fn holds(&self) -> bool {
        self.k >= self.lower_bound
    }
}

pub fn check_k_bound(t: &Tree) -> KBound {
    let k = t.distinct_status_count();
    let diameter = t.eccentricities().into_iter().max().unwrap_or(0) as usize;
    let lower_bound = (diameter + 2) / 2;
    KBound {
        k,
        lower_bound,
        tight: k == lower_bound,
    }
}

/// `K_{1,s}` with `s >= 2`.
pub fn is_star(t: &Tree) -> bool {
    t.n() >= 3 && (0..t.n()).any(|v| t.degree(v) == t.n() - 1)
}

/// Exactly two adjacent non-leaves carrying the same number of leaves.
pub fn is_balanced_double_star(t: &Tree) -> bool {
    let hubs: Vec<Vertex> = (0..t.n()).filter(|&v| t.degree(v) > 1).collect();
    matches!(hubs.as_slice(), [u, v] if t.has_edge(*u, *v) && t.degree(*u) == t.degree(*v))
}

/// Structural test for trees with exactly two distinct statuses.
pub fn classify_k2(t: &Tree) -> bool {
    is_star(t) || is_balanced_double_star(t)
}

/// Structural test for membership in 𝒯: stripping the leaves leaves a star
/// (at least two leaves) or a balanced double star; every leaf of that core
/// carries the same number `b >= 1` of original leaves and no other core
/// vertex touches an original leaf.
pub fn classify_k3(t: &Tree) -> bool {
    let n = t.n();
    if n < 5 {
        return false;
    }
    let is_leaf: Vec<bool> = (0..n).map(|v| t.degree(v) == 1).collect();
    let core: Vec<Vertex> = (0..n).filter(|&v| !is_leaf[v]).collect();
    let mut id = vec![usize::MAX; n];
    for (i, &v) in core.iter().enumerate() {
        id[v] = i;
    }
    let mut edges = Vec::new();
    for &u in &core {
        for &v in t.neighbors(u) {
            if !is_leaf[v] && u < v {
                edges.push((id[u], id[v]));
            }
        }
    }
    let Ok(core_tree) = Tree::from_edges(core.len(), &edges) else {
        return false;
    };
    if !classify_k2(&core_tree) {
        return false;
    }
    let leaf_count = |v: Vertex| t.neighbors(v).iter().filter(|&&w| is_leaf[w]).count();
    let mut b = None;
    for (i, &v) in core.iter().enumerate() {
        let hanging = leaf_count(v);
        if core_tree.degree(i) == 1 {
            if hanging == 0 || b.is_some_and(|b| b != hanging) {
                return false;
            }
            b = Some(hanging);
        } else if hanging != 0 {
            return false;
        }
    }
    true
}
