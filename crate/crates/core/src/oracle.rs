//! Brute-force ground truth over all free trees of a given order.
//!
//! Two independent generators are provided:
//!
//! * [`FreeTrees`] walks rooted level sequences in the Beyer–Hedetniemi order
//!   and keeps exactly the rootings that sit at the tree's canonical center,
//!   so every isomorphism class comes out once, lazily.
//! * [`prufer_free_trees`] decodes every Prüfer sequence and deduplicates by
//!   canonical form. It visits `n^(n-2)` labeled trees and only serves as a
//!   cross-check for small orders.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{StatusSequence, Tree, Vertex};

/// Largest order accepted by the lazy generator.
pub const MAX_ENUMERATION_ORDER: usize = 20;
/// Largest order accepted by the Prüfer generator.
pub const MAX_PRUFER_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("order {n} is outside the supported range 1..={max}")]
    OrderOutOfRange { n: usize, max: usize },
}

fn check_order(n: usize, max: usize) -> Result<(), OracleError> {
    if n == 0 || n > max {
        return Err(OracleError::OrderOutOfRange { n, max });
    }
    Ok(())
}

/// Parenthesis encoding of a tree rooted at its center; for bicentral trees
/// the smaller of the two rootings. Equal iff the trees are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).expect("ascii parentheses"))
    }
}

/// Center by repeated leaf removal: one vertex or two adjacent ones.
pub fn center(tree: &Tree) -> Vec<Vertex> {
    let n = tree.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut layer: Vec<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in tree.neighbors(leaf) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// AHU encoding of the tree hanging from `root`: each vertex is `(` followed
/// by its children's encodings in sorted order, then `)`.
pub fn rooted_encoding(tree: &Tree, root: Vertex) -> Vec<u8> {
    let order = tree.preorder_from(root);
    let parent = tree.parents_from(root);
    let mut codes: Vec<Vec<Vec<u8>>> = vec![Vec::new(); tree.n()];
    let mut result = Vec::new();
    for &v in order.iter().rev() {
        let mut children = std::mem::take(&mut codes[v]);
        children.sort_unstable();
        let mut code = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
        code.push(b'(');
        for c in children {
            code.extend(c);
        }
        code.push(b')');
        match parent[v] {
            Some(p) => codes[p].push(code),
            None => result = code,
        }
    }
    result
}

pub fn canonical_form(tree: &Tree) -> CanonicalForm {
    let form = center(tree)
        .into_iter()
        .map(|c| rooted_encoding(tree, c))
        .min()
        .expect("trees are nonempty");
    CanonicalForm(form)
}

pub fn is_isomorphic(a: &Tree, b: &Tree) -> bool {
    a.n() == b.n() && canonical_form(a) == canonical_form(b)
}

/// Lazy stream of one tree per isomorphism class on `n` vertices.
pub fn enumerate_free_trees(n: usize) -> Result<FreeTrees, OracleError> {
    check_order(n, MAX_ENUMERATION_ORDER)?;
    Ok(FreeTrees {
        rooted: RootedTrees::new(n),
    })
}

/// Rooted trees on `n` vertices as canonical level sequences (root at level
/// 0, preorder), from the path down to the star.
#[derive(Debug, Clone)]
pub struct RootedTrees {
    levels: Option<Vec<usize>>,
}

impl RootedTrees {
    pub fn new(n: usize) -> Self {
        RootedTrees {
            levels: (n > 0).then(|| (0..n).collect()),
        }
    }
}

impl Iterator for RootedTrees {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.levels.take()?;
        let mut next = current.clone();
        if let Some(p) = (0..next.len()).rev().find(|&i| next[i] > 1) {
            let q = (0..p)
                .rev()
                .find(|&i| next[i] == next[p] - 1)
                .expect("level sequences are connected");
            let shift = p - q;
            for i in p..next.len() {
                next[i] = next[i - shift];
            }
            self.levels = Some(next);
        }
        Some(current)
    }
}

/// Builds the tree of a level sequence; vertex `i` is the `i`-th in preorder.
pub fn tree_from_levels(levels: &[usize]) -> Tree {
    let mut parents = vec![None; levels.len()];
    let mut last_at_level: Vec<Vertex> = Vec::new();
    for (i, &lvl) in levels.iter().enumerate() {
        if lvl > 0 {
            parents[i] = Some(last_at_level[lvl - 1]);
        }
        last_at_level.truncate(lvl);
        last_at_level.push(i);
    }
    Tree::from_parents(&parents).expect("level sequences describe trees")
}

#[derive(Debug, Clone)]
pub struct FreeTrees {
    rooted: RootedTrees,
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        for levels in self.rooted.by_ref() {
            let tree = tree_from_levels(&levels);
            let centers = center(&tree);
            let keep = match centers.as_slice() {
                [c] => *c == 0,
                [a, b] if *a == 0 || *b == 0 => {
                    let other = if *a == 0 { *b } else { *a };
                    rooted_encoding(&tree, 0) <= rooted_encoding(&tree, other)
                }
                _ => false,
            };
            if keep {
                return Some(tree);
            }
        }
        None
    }
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into a tree.
pub fn tree_from_prufer(code: &[Vertex]) -> Tree {
    let n = code.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in code {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = (0..n).find(|&v| degree[v] == 1).unwrap();
    let mut leaf = ptr;
    for &v in code {
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Tree::from_edges(n, &edges).expect("Prüfer codes decode to trees")
}

/// One tree per isomorphism class, found by decoding all `n^(n-2)` Prüfer
/// sequences; sorted by canonical form.
pub fn prufer_free_trees(n: usize) -> Result<Vec<Tree>, OracleError> {
    check_order(n, MAX_PRUFER_ORDER)?;
    if n == 1 {
        return Ok(vec![Tree::single_vertex()]);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut code = vec![0; n - 2];
    loop {
        let tree = tree_from_prufer(&code);
        let form = canonical_form(&tree);
        if !seen.contains(&form) {
            seen.insert(form.clone());
            out.push((form, tree));
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == code.len() {
                out.sort_by(|a, b| a.0.cmp(&b.0));
                return Ok(out.into_iter().map(|(_, t)| t).collect());
            }
            code[i] += 1;
            if code[i] < n {
                break;
            }
            code[i] = 0;
            i += 1;
        }
    }
}

/// All pairwise non-isomorphic trees whose status sequence is `seq`.
pub fn realize_exhaustive(seq: &StatusSequence) -> Result<Vec<Tree>, OracleError> {
    let n = seq.len();
    check_order(n, MAX_ENUMERATION_ORDER)?;
    if !plausible_tree_sequence(seq) {
        return Ok(Vec::new());
    }
    Ok(enumerate_free_trees(n)?
        .filter(|t| t.status_sequence() == *seq)
        .collect())
}

/// Cheap necessary conditions: even total, statuses within `[n-1, n(n-1)/2]`.
fn plausible_tree_sequence(seq: &StatusSequence) -> bool {
    let n = seq.len() as u64;
    let values = seq.as_slice();
    seq.sum().is_multiple_of(2)
        && values.first().is_some_and(|&s| s >= n - 1)
        && values.last().is_some_and(|&s| s <= n * (n - 1) / 2)
}

/// True iff no tree of the same order that is not isomorphic to `tree`
/// shares its status sequence.
pub fn status_unique_in_trees(tree: &Tree) -> Result<bool, OracleError> {
    check_order(tree.n(), MAX_ENUMERATION_ORDER)?;
    let seq = tree.status_sequence();
    let form = canonical_form(tree);
    Ok(realize_exhaustive(&seq)?
        .iter()
        .all(|t| canonical_form(t) == form))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| RootedTrees::new(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48, 115, 286, 719]);
    }

    #[test]
    fn free_tree_counts() {
        let counts: Vec<usize> = (1..=12)
            .map(|n| enumerate_free_trees(n).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]);
    }

    #[test]
    fn prufer_counts_agree_for_small_orders() {
        for n in 1..=8 {
            let by_prufer: BTreeSet<_> = prufer_free_trees(n)
                .unwrap()
                .iter()
                .map(canonical_form)
                .collect();
            let by_levels: BTreeSet<_> = enumerate_free_trees(n)
                .unwrap()
                .map(|t| canonical_form(&t))
                .collect();
            assert_eq!(by_prufer, by_levels, "n = {n}");
        }
    }

    #[test]
    fn order_caps() {
        assert!(enumerate_free_trees(0).is_err());
        assert!(enumerate_free_trees(MAX_ENUMERATION_ORDER + 1).is_err());
        assert!(prufer_free_trees(MAX_PRUFER_ORDER + 1).is_err());
    }

    #[test]
    fn canonical_forms_of_small_trees() {
        let p4 = Tree::path(4).unwrap();
        let p4b = Tree::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&p4), canonical_form(&p4b));
        assert_ne!(canonical_form(&p4), canonical_form(&Tree::star(3)));
        assert_eq!(canonical_form(&Tree::single_vertex()).to_string(), "()");
    }

    #[test]
    fn prufer_decoding() {
        // 3 3 3 over 0..5 is the star centred at 3
        let t = tree_from_prufer(&[3, 3, 3]);
        assert_eq!(t.degree(3), 4);
        assert_eq!(tree_from_prufer(&[]).edges(), vec![(0, 1)]);
    }

    #[test]
    fn exhaustive_realization() {
        let found = realize_exhaustive(&StatusSequence::new(vec![2, 3, 3])).unwrap();
        assert_eq!(found.len(), 1);
        assert!(is_isomorphic(&found[0], &Tree::path(3).unwrap()));
        let found = realize_exhaustive(&StatusSequence::new(vec![4, 4, 6, 6])).unwrap();
        assert!(found.len() == 1 && is_isomorphic(&found[0], &Tree::path(4).unwrap()));
        assert!(realize_exhaustive(&StatusSequence::new(vec![5, 4, 3]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn paths_and_small_spider_are_status_unique() {
        for n in 1..=10 {
            assert!(status_unique_in_trees(&Tree::path(n).unwrap()).unwrap());
        }
        let spider = Tree::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        assert!(status_unique_in_trees(&spider).unwrap());
    }
}
