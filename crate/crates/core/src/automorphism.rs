//! Automorphism orbits.
//!
//! Trees of any size go through rooted subtree classes at the center. Other
//! graphs use a backtracking search over colour-refined candidate images,
//! limited to [`MAX_SEARCH_ORDER`] vertices.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, Tree, Vertex};
use crate::oracle::center;

/// Largest non-tree graph handled by the backtracking search.
pub const MAX_SEARCH_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomorphismError {
    #[error("automorphism search is limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

/// Orbit id per vertex (ids numbered by first occurrence) and the group
/// order when it fits in 128 bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbits {
    pub orbit_of: Vec<usize>,
    pub group_order: Option<u128>,
}

pub fn orbits(g: &Graph) -> Result<Orbits, AutomorphismError> {
    if g.edge_count() + 1 == g.n() {
        let tree = Tree::try_from(g.clone()).expect("connected with n - 1 edges");
        return Ok(tree_orbits(&tree));
    }
    if g.n() > MAX_SEARCH_ORDER {
        return Err(AutomorphismError::TooLarge {
            n: g.n(),
            max: MAX_SEARCH_ORDER,
        });
    }
    Ok(Search::new(g).orbits())
}

fn renumber(raw: &[usize]) -> Vec<usize> {
    let mut ids = HashMap::new();
    raw.iter()
        .map(|&r| {
            let next = ids.len();
            *ids.entry(r).or_insert(next)
        })
        .collect()
}

fn factorial(k: usize) -> Option<u128> {
    (1..=k as u128).try_fold(1u128, |acc, x| acc.checked_mul(x))
}

/// Orbits of a tree. A bicentral tree is handled by subdividing its central
/// edge, which leaves a unique center fixed by every automorphism.
pub fn tree_orbits(tree: &Tree) -> Orbits {
    let n = tree.n();
    let centers = center(tree);
    let mut children: Vec<Vec<Vertex>> = vec![Vec::new(); n + 1];
    let root = match centers.as_slice() {
        [c] => *c,
        [a, b] => {
            children[n] = vec![*a, *b];
            n
        }
        _ => unreachable!("a tree has one or two central vertices"),
    };
    // children lists for the rooted tree
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; n + 1];
    let mut head = 0;
    if root == n {
        for &c in &centers {
            parent[c] = n;
        }
    }
    while head < order.len() {
        let u = order[head];
        head += 1;
        if u == n {
            order.extend(children[n].iter().copied());
            continue;
        }
        for &w in tree.neighbors(u) {
            if w != parent[u] && !(root == n && parent[u] == n && centers.contains(&w)) {
                parent[w] = u;
                children[u].push(w);
                order.push(w);
            }
        }
    }

    let mut class = vec![0usize; n + 1];
    let mut interned: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut group_order = Some(1u128);
    for &u in order.iter().rev() {
        let mut key: Vec<usize> = children[u].iter().map(|&c| class[c]).collect();
        key.sort_unstable();
        let mut run = 1;
        for i in 1..=key.len() {
            if i < key.len() && key[i] == key[i - 1] {
                run += 1;
            } else {
                group_order =
                    group_order.and_then(|g| factorial(run).and_then(|f| g.checked_mul(f)));
                run = 1;
            }
        }
        let next = interned.len();
        class[u] = *interned.entry(key).or_insert(next);
    }

    let mut signature = vec![0usize; n + 1];
    let mut paths: HashMap<(usize, usize), usize> = HashMap::new();
    for &u in &order[1..] {
        let key = (signature[parent[u]], class[u]);
        let next = paths.len() + 1;
        signature[u] = *paths.entry(key).or_insert(next);
    }
    Orbits {
        orbit_of: renumber(&signature[..n]),
        group_order,
    }
}

/// Backtracking over vertex images with adjacency bitmasks.
struct Search {
    n: usize,
    adj: Vec<u64>,
    color: Vec<usize>,
    /// Mapping order: breadth-first from vertex 0.
    order: Vec<Vertex>,
}

impl Search {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let adj = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        let mut order: Vec<Vertex> = (0..n).collect();
        let dist = g.bfs_distances(0);
        order.sort_by_key(|&v| (dist[v], v));
        Search {
            n,
            adj,
            color: refined_colors(g),
            order,
        }
    }

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// An automorphism extending the pinned pairs, if any.
    fn find(&self, pinned: &[(Vertex, Vertex)]) -> Option<Vec<Vertex>> {
        let mut image = vec![usize::MAX; self.n];
        let mut used = 0u64;
        let mut sequence = Vec::with_capacity(self.n);
        for &(v, w) in pinned {
            if self.color[v] != self.color[w] || image[v] != usize::MAX || used >> w & 1 == 1 {
                return None;
            }
            if !sequence
                .iter()
                .all(|&u| self.adjacent(u, v) == self.adjacent(image[u], w))
            {
                return None;
            }
            image[v] = w;
            used |= 1 << w;
            sequence.push(v);
        }
        let rest: Vec<Vertex> = self
            .order
            .iter()
            .copied()
            .filter(|&v| image[v] == usize::MAX)
            .collect();
        if self.extend(&rest, &mut sequence, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    fn extend(
        &self,
        rest: &[Vertex],
        mapped: &mut Vec<Vertex>,
        image: &mut [Vertex],
        used: &mut u64,
    ) -> bool {
        let Some((&v, tail)) = rest.split_first() else {
            return true;
        };
        for w in 0..self.n {
            if *used >> w & 1 == 1 || self.color[w] != self.color[v] {
                continue;
            }
            if !mapped
                .iter()
                .all(|&u| self.adjacent(u, v) == self.adjacent(image[u], w))
            {
                continue;
            }
            image[v] = w;
            *used |= 1 << w;
            mapped.push(v);
            if self.extend(tail, mapped, image, used) {
                return true;
            }
            mapped.pop();
            *used &= !(1 << w);
            image[v] = usize::MAX;
        }
        false
    }

    fn orbits(&self) -> Orbits {
        let mut uf: Vec<usize> = (0..self.n).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            uf[x] = r;
            r
        }
        for v in 0..self.n {
            for w in v + 1..self.n {
                if self.color[v] != self.color[w] || find(&mut uf, v) == find(&mut uf, w) {
                    continue;
                }
                if let Some(perm) = self.find(&[(v, w)]) {
                    for (x, &y) in perm.iter().enumerate() {
                        let (a, b) = (find(&mut uf, x), find(&mut uf, y));
                        uf[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..self.n).map(|v| find(&mut uf, v)).collect();
        Orbits {
            orbit_of: renumber(&roots),
            group_order: Some(self.group_order()),
        }
    }

    /// Product of orbit sizes along a pointwise stabilizer chain.
    fn group_order(&self) -> u128 {
        let mut order = 1u128;
        let mut pinned: Vec<(Vertex, Vertex)> = Vec::new();
        for v in 0..self.n {
            let reachable = (0..self.n)
                .filter(|&w| self.color[w] == self.color[v])
                .filter(|&w| {
                    let mut attempt = pinned.clone();
                    attempt.push((v, w));
                    self.find(&attempt).is_some()
                })
                .count();
            order *= reachable as u128;
            pinned.push((v, v));
        }
        order
    }
}

/// Colour refinement seeded with (status, degree).
fn refined_colors(g: &Graph) -> Vec<usize> {
    let statuses = g.statuses();
    let mut color = renumber_keys(
        (0..g.n())
            .map(|v| (statuses[v], g.degree(v) as u64, Vec::new()))
            .collect(),
    );
    loop {
        let keys = (0..g.n())
            .map(|v| {
                let mut nbrs: Vec<u64> = g.neighbors(v).iter().map(|&w| color[w] as u64).collect();
                nbrs.sort_unstable();
                (color[v] as u64, 0, nbrs)
            })
            .collect();
        let next = renumber_keys(keys);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&color) {
            return next;
        }
        color = next;
    }
}

fn renumber_keys(keys: Vec<(u64, u64, Vec<u64>)>) -> Vec<usize> {
    let mut sorted: Vec<_> = keys.clone();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap())
        .collect()
}
