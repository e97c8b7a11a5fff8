//! Reduction from 3-Partition to depth-3 tree status recognition.
//!
//! For an instance with elements `a_1..a_n`, `m = n / 3`, `A = sum a_i` and
//! `B = A / m`, the reduced sequence holds
//!
//! | status                      | multiplicity |
//! |-----------------------------|--------------|
//! | `3A + 7m`                   | 1            |
//! | `4A - 2B + 11m - 7`         | m            |
//! | `5A - 2B - 2a_i + 15m - 8`  | 1 per `i`    |
//! | `6A - 2B - 2a_i + 19m - 9`  | `a_i` per `i`|
//!
//! which is exactly the status sequence of the gadget tree: a root, one child
//! per triple, three grandchildren per triple (one per element) and `a_i`
//! leaves under the grandchild for `a_i`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Status, StatusSequence, Tree, Vertex};

/// Largest instance accepted by [`brute_force_3partition`].
pub const MAX_BRUTE_FORCE_ELEMENTS: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error("instance is empty")]
    Empty,
    #[error("elements must be positive")]
    NonPositive,
    #[error("element count {0} is not divisible by 3")]
    NotDivisibleByThree(usize),
    #[error("sum {total} is not divisible by m = {m}")]
    TargetNotIntegral { total: u64, m: u64 },
    #[error("element {value} violates B/4 < a < B/2 for B = {target}")]
    WindowViolated { value: u64, target: u64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("status values overflow 64 bits")]
    Overflow,
    #[error("brute force limited to {max} elements, got {n}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("tree's status sequence differs from the reduced sequence")]
    SequenceMismatch,
    #[error("tree does not have the forced structure: {0}")]
    Structure(String),
    #[error(transparent)]
    Instance(#[from] HardnessError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    elements: Vec<u64>,
    total: u64,
}

impl ThreePartitionInstance {
    pub fn new(elements: Vec<u64>) -> Result<Self, HardnessError> {
        if elements.is_empty() {
            return Err(HardnessError::Empty);
        }
        if elements.contains(&0) {
            return Err(HardnessError::NonPositive);
        }
        if !elements.len().is_multiple_of(3) {
            return Err(HardnessError::NotDivisibleByThree(elements.len()));
        }
        let total = elements
            .iter()
            .try_fold(0u64, |acc, &a| acc.checked_add(a))
            .ok_or(HardnessError::Overflow)?;
        let m = (elements.len() / 3) as u64;
        if total % m != 0 {
            return Err(HardnessError::TargetNotIntegral { total, m });
        }
        Ok(ThreePartitionInstance { elements, total })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Number of triples.
    pub fn m(&self) -> u64 {
        (self.elements.len() / 3) as u64
    }

    /// `A`, the element sum.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// `B = A / m`, the common triple sum.
    pub fn target(&self) -> u64 {
        self.total / self.m()
    }

    /// First element outside the open window `(B/4, B/2)`, if any.
    pub fn window_violation(&self) -> Option<u64> {
        let b = self.target();
        self.elements
            .iter()
            .copied()
            .find(|&a| 4 * a <= b || 2 * a >= b)
    }

    pub fn satisfies_window(&self) -> bool {
        self.window_violation().is_none()
    }

    /// The four closed-form status values of the gadget tree.
    pub fn formulas(&self) -> Result<GadgetStatuses, HardnessError> {
        let (a, b, m) = (self.total as i128, self.target() as i128, self.m() as i128);
        let cast = |v: i128| u64::try_from(v).map_err(|_| HardnessError::Overflow);
        Ok(GadgetStatuses {
            root: cast(3 * a + 7 * m)?,
            triplet: cast(4 * a - 2 * b + 11 * m - 7)?,
            element_base: cast(5 * a - 2 * b + 15 * m - 8)?,
            leaf_base: cast(6 * a - 2 * b + 19 * m - 9)?,
        })
    }
}

/// Status values of the gadget's four vertex kinds. Element and leaf values
/// are `base - 2 a_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetStatuses {
    pub root: Status,
    pub triplet: Status,
    pub element_base: Status,
    pub leaf_base: Status,
}

impl GadgetStatuses {
    pub fn element(&self, a: u64) -> Status {
        self.element_base - 2 * a
    }

    pub fn leaf(&self, a: u64) -> Status {
        self.leaf_base - 2 * a
    }
}

/// Multiset of status values, `A + 4m + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSequence {
    counts: BTreeMap<Status, usize>,
}

impl ReducedSequence {
    pub fn multiplicities(&self) -> &BTreeMap<Status, usize> {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn to_sequence(&self) -> StatusSequence {
        StatusSequence::new(
            self.counts
                .iter()
                .flat_map(|(&s, &c)| std::iter::repeat_n(s, c))
                .collect(),
        )
    }
}

pub fn reduce_3partition(inst: &ThreePartitionInstance) -> Result<ReducedSequence, HardnessError> {
    if let Some(value) = inst.window_violation() {
        return Err(HardnessError::WindowViolated {
            value,
            target: inst.target(),
        });
    }
    let f = inst.formulas()?;
    let mut counts = BTreeMap::new();
    *counts.entry(f.root).or_insert(0) += 1;
    *counts.entry(f.triplet).or_insert(0) += inst.m() as usize;
    for &a in inst.elements() {
        *counts.entry(f.element(a)).or_insert(0) += 1;
        *counts.entry(f.leaf(a)).or_insert(0) += a as usize;
    }
    Ok(ReducedSequence { counts })
}

/// Triples of element indices (0-based), each summing to `B`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TripletPartition {
    triples: Vec<[usize; 3]>,
}

impl TripletPartition {
    /// Validates the triples against `inst`; each triple and the list of
    /// triples are stored sorted.
    pub fn new(
        inst: &ThreePartitionInstance,
        triples: Vec<[usize; 3]>,
    ) -> Result<Self, HardnessError> {
        let n = inst.elements().len();
        if triples.len() as u64 != inst.m() {
            return Err(HardnessError::InvalidPartition(format!(
                "expected {} triples, got {}",
                inst.m(),
                triples.len()
            )));
        }
        let mut used = vec![false; n];
        let mut sorted = Vec::with_capacity(triples.len());
        for mut t in triples {
            for &i in &t {
                if i >= n {
                    return Err(HardnessError::InvalidPartition(format!(
                        "index {i} out of range"
                    )));
                }
                if std::mem::replace(&mut used[i], true) {
                    return Err(HardnessError::InvalidPartition(format!(
                        "index {i} used twice"
                    )));
                }
            }
            let sum: u64 = t.iter().map(|&i| inst.elements()[i]).sum();
            if sum != inst.target() {
                return Err(HardnessError::InvalidPartition(format!(
                    "triple {t:?} sums to {sum}, not {}",
                    inst.target()
                )));
            }
            t.sort_unstable();
            sorted.push(t);
        }
        sorted.sort_unstable();
        Ok(TripletPartition { triples: sorted })
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// Element values of each triple.
    pub fn values(&self, inst: &ThreePartitionInstance) -> Vec<[u64; 3]> {
        self.triples
            .iter()
            .map(|t| t.map(|i| inst.elements()[i]))
            .collect()
    }
}

/// Gadget layout: vertex 0 is the root, `1..=m` the triple vertices, the
/// next `n` vertices the elements in partition order, then the leaves.
pub fn build_gadget_tree(
    inst: &ThreePartitionInstance,
    partition: &TripletPartition,
) -> Result<Tree, HardnessError> {
    let checked = TripletPartition::new(inst, partition.triples().to_vec())?;
    let m = inst.m() as usize;
    let n = inst.elements().len();
    let order = 1 + m + n + inst.total() as usize;
    let mut edges = Vec::with_capacity(order - 1);
    let mut next_leaf = 1 + m + n;
    for (t, triple) in checked.triples().iter().enumerate() {
        let triple_vertex = 1 + t;
        edges.push((0, triple_vertex));
        for (slot, &i) in triple.iter().enumerate() {
            let element_vertex = 1 + m + 3 * t + slot;
            edges.push((triple_vertex, element_vertex));
            for _ in 0..inst.elements()[i] {
                edges.push((element_vertex, next_leaf));
                next_leaf += 1;
            }
        }
    }
    Ok(Tree::from_edges(order, &edges).expect("gadget is a tree"))
}

/// Additive constant `3B + 19m + 9` used to pad every element.
pub fn padding_constant(inst: &ThreePartitionInstance) -> u64 {
    3 * inst.target() + 19 * inst.m() + 9
}

/// Adds [`padding_constant`] to every element. Triple sums all shift by the
/// same amount, so the yes/no answer is unchanged.
pub fn pad_instance(inst: &ThreePartitionInstance) -> ThreePartitionInstance {
    let c = padding_constant(inst);
    ThreePartitionInstance::new(inst.elements().iter().map(|&a| a + c).collect())
        .expect("padding keeps the instance well formed")
}

/// Reads a triplet partition off any tree realizing the reduced sequence,
/// identifying vertex roles from status values and adjacency alone.
pub fn extract_partition(
    tree: &Tree,
    inst: &ThreePartitionInstance,
) -> Result<TripletPartition, ExtractError> {
    let reduced = reduce_3partition(inst)?;
    let statuses = tree.statuses_by_rerooting();
    if StatusSequence::new(statuses.clone()) != reduced.to_sequence() {
        return Err(ExtractError::SequenceMismatch);
    }
    let f = inst.formulas()?;
    let structure = |msg: String| Err(ExtractError::Structure(msg));

    let roots: Vec<Vertex> = (0..tree.n()).filter(|&v| statuses[v] == f.root).collect();
    let root = match roots.as_slice() {
        [r] => *r,
        _ => {
            return structure(format!(
                "{} vertices have the root status {}",
                roots.len(),
                f.root
            ))
        }
    };
    let triplets = tree.neighbors(root);
    if triplets.len() as u64 != inst.m() {
        return structure(format!(
            "root has {} neighbours, expected {}",
            triplets.len(),
            inst.m()
        ));
    }

    let mut unused: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, &a) in inst.elements().iter().enumerate().rev() {
        unused.entry(a).or_default().push(i);
    }
    let mut triples = Vec::with_capacity(triplets.len());
    for &u in triplets {
        if statuses[u] != f.triplet {
            return structure(format!(
                "root neighbour has status {}, expected {}",
                statuses[u], f.triplet
            ));
        }
        let children: Vec<Vertex> = tree
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&v| v != root)
            .collect();
        if children.len() != 3 {
            return structure(format!("triple vertex has {} children", children.len()));
        }
        let mut triple = [0usize; 3];
        for (slot, &v) in children.iter().enumerate() {
            let s = statuses[v];
            if s > f.element_base || !(f.element_base - s).is_multiple_of(2) {
                return structure(format!("status {s} is not an element status"));
            }
            let a = (f.element_base - s) / 2;
            let leaves: Vec<Vertex> = tree
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| w != u)
                .collect();
            if leaves.len() as u64 != a
                || leaves
                    .iter()
                    .any(|&w| tree.degree(w) != 1 || statuses[w] != f.leaf(a))
            {
                return structure(format!(
                    "element vertex for a = {a} does not carry exactly {a} leaves"
                ));
            }
            triple[slot] = match unused.get_mut(&a).and_then(Vec::pop) {
                Some(i) => i,
                None => return structure(format!("no unused element of value {a}")),
            };
        }
        triples.push(triple);
    }
    TripletPartition::new(inst, triples).map_err(ExtractError::from)
}

/// Exhaustive search; returns the lexicographically smallest partition
/// (triples sorted, listed by smallest index) or `None`.
pub fn brute_force_3partition(
    inst: &ThreePartitionInstance,
) -> Result<Option<TripletPartition>, HardnessError> {
    let n = inst.elements().len();
    if n > MAX_BRUTE_FORCE_ELEMENTS {
        return Err(HardnessError::TooLarge {
            n,
            max: MAX_BRUTE_FORCE_ELEMENTS,
        });
    }
    let mut used = vec![false; n];
    let mut triples = Vec::new();
    if search(inst.elements(), inst.target(), &mut used, &mut triples) {
        return TripletPartition::new(inst, triples).map(Some);
    }
    Ok(None)
}

fn search(a: &[u64], target: u64, used: &mut [bool], triples: &mut Vec<[usize; 3]>) -> bool {
    let Some(i) = used.iter().position(|&u| !u) else {
        return true;
    };
    used[i] = true;
    for j in i + 1..a.len() {
        if used[j] || a[i] + a[j] >= target {
            continue;
        }
        used[j] = true;
        for k in j + 1..a.len() {
            if used[k] || a[i] + a[j] + a[k] != target {
                continue;
            }
            used[k] = true;
            triples.push([i, j, k]);
            if search(a, target, used, triples) {
                return true;
            }
            triples.pop();
            used[k] = false;
        }
        used[j] = false;
    }
    used[i] = false;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(v: &[u64]) -> ThreePartitionInstance {
        ThreePartitionInstance::new(v.to_vec()).unwrap()
    }

    #[test]
    fn derived_quantities() {
        let i = inst(&[5, 6, 7, 5, 6, 7]);
        assert_eq!((i.m(), i.total(), i.target()), (2, 36, 18));
        assert!(i.satisfies_window());
    }

    #[test]
    fn instance_errors() {
        assert_eq!(
            ThreePartitionInstance::new(vec![]),
            Err(HardnessError::Empty)
        );
        assert_eq!(
            ThreePartitionInstance::new(vec![1, 2]),
            Err(HardnessError::NotDivisibleByThree(2))
        );
        assert_eq!(
            ThreePartitionInstance::new(vec![0, 1, 2]),
            Err(HardnessError::NonPositive)
        );
        assert_eq!(
            ThreePartitionInstance::new(vec![1, 1, 1, 1, 1, 2]),
            Err(HardnessError::TargetNotIntegral { total: 7, m: 2 })
        );
        assert_eq!(
            reduce_3partition(&inst(&[1, 2, 9])),
            Err(HardnessError::WindowViolated {
                value: 1,
                target: 12
            })
        );
    }

    #[test]
    fn reduced_sequence_of_single_triple() {
        let r = reduce_3partition(&inst(&[5, 6, 7])).unwrap();
        let expected: BTreeMap<Status, usize> = [
            (61, 1),
            (40, 1),
            (51, 1),
            (49, 1),
            (47, 1),
            (72, 5),
            (70, 6),
            (68, 7),
        ]
        .into_iter()
        .collect();
        assert_eq!(r.multiplicities(), &expected);
        assert_eq!(r.len(), 23);
    }

    #[test]
    fn reduced_sequence_size() {
        let r = reduce_3partition(&inst(&[5, 6, 7, 5, 6, 7])).unwrap();
        assert_eq!(r.len(), 36 + 8 + 1);
    }

    #[test]
    fn leaf_minus_element_is_order_minus_two() {
        for v in [
            &[5u64, 6, 7][..],
            &[5, 6, 7, 5, 6, 7],
            &[100, 100, 100, 100, 100, 102],
        ] {
            let i = inst(v);
            let f = i.formulas().unwrap();
            for &a in i.elements() {
                assert_eq!(f.leaf(a) - f.element(a), i.total() + 4 * i.m() - 1);
            }
        }
    }

    #[test]
    fn gadget_statuses_by_bfs() {
        let i = inst(&[5, 6, 7]);
        let p = TripletPartition::new(&i, vec![[0, 1, 2]]).unwrap();
        let t = build_gadget_tree(&i, &p).unwrap();
        assert_eq!(t.n(), 23);
        assert_eq!(t.metrics().diameter, 4);
        let s = t.statuses();
        assert_eq!(s[0], 61);
        assert_eq!(s[1], 40);
        // first leaf hangs under the element 5
        assert_eq!(s[5], 72);
        assert_eq!(
            t.status_sequence(),
            reduce_3partition(&i).unwrap().to_sequence()
        );
    }

    #[test]
    fn padding() {
        let i = inst(&[5, 5, 5, 5, 5, 7]);
        assert_eq!(padding_constant(&i), 95);
        let p = pad_instance(&i);
        assert_eq!(p.elements(), &[100, 100, 100, 100, 100, 102]);
        assert!(p.total() > padding_constant(&i));
        assert!(brute_force_3partition(&p).unwrap().is_none());
        let yes = pad_instance(&inst(&[5, 6, 7]));
        assert!(brute_force_3partition(&yes).unwrap().is_some());
    }

    #[test]
    fn brute_force_examples() {
        let i = inst(&[5, 6, 7]);
        assert_eq!(
            brute_force_3partition(&i).unwrap().unwrap().triples(),
            &[[0, 1, 2]]
        );
        assert!(brute_force_3partition(&inst(&[5, 5, 5, 5, 5, 7]))
            .unwrap()
            .is_none());
        let i = inst(&[5, 6, 7, 5, 6, 7]);
        let p = brute_force_3partition(&i).unwrap().unwrap();
        assert_eq!(p.triples(), &[[0, 1, 2], [3, 4, 5]]);
        let big = ThreePartitionInstance::new(vec![1; 21]).unwrap();
        assert!(matches!(
            brute_force_3partition(&big),
            Err(HardnessError::TooLarge { .. })
        ));
    }

    #[test]
    fn partition_validation() {
        let i = inst(&[5, 6, 7, 5, 6, 7]);
        assert!(TripletPartition::new(&i, vec![[0, 1, 2]]).is_err());
        assert!(TripletPartition::new(&i, vec![[0, 1, 2], [2, 4, 5]]).is_err());
        assert!(TripletPartition::new(&i, vec![[0, 3, 1], [2, 4, 5]]).is_err());
        let p = TripletPartition::new(&i, vec![[5, 4, 0], [3, 2, 1]]).unwrap();
        assert_eq!(p.triples(), &[[0, 4, 5], [1, 2, 3]]);
    }

    #[test]
    fn extract_roundtrip() {
        let i = inst(&[5, 6, 7, 5, 6, 7]);
        let p = TripletPartition::new(&i, vec![[0, 1, 2], [3, 4, 5]]).unwrap();
        let t = build_gadget_tree(&i, &p).unwrap();
        let got = extract_partition(&t, &i).unwrap();
        for triple in got.values(&i) {
            assert_eq!(triple.iter().sum::<u64>(), 18);
        }
        // relabeled trees give the same answer
        let n = t.n();
        let perm: Vec<usize> = (0..n).map(|v| (v * 7 + 3) % n).collect();
        let again = extract_partition(&t.relabel(&perm), &i).unwrap();
        assert_eq!(again.values(&i), got.values(&i));
    }

    #[test]
    fn extract_rejects_wrong_leaf_counts() {
        let i = inst(&[5, 6, 7]);
        let p = TripletPartition::new(&i, vec![[0, 1, 2]]).unwrap();
        let t = build_gadget_tree(&i, &p).unwrap();
        // move one leaf from the element 5 (vertex 2) to the element 7 (vertex 4)
        let edges: Vec<_> = t
            .edges()
            .into_iter()
            .map(|(u, v)| if (u, v) == (2, 5) { (4, 5) } else { (u, v) })
            .collect();
        let bad = Tree::from_edges(t.n(), &edges).unwrap();
        assert_eq!(
            extract_partition(&bad, &i),
            Err(ExtractError::SequenceMismatch)
        );
    }
}
