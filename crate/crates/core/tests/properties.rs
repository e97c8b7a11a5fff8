use std::collections::BTreeMap;

use proptest::prelude::*;
use tree_status::automorphism::orbits;
use tree_status::families::{generate, FamilySpec};
use tree_status::hardness::{
    brute_force_3partition, build_gadget_tree, extract_partition, reduce_3partition,
    ThreePartitionInstance,
};
use tree_status::oracle::{
    canonical_form, enumerate_free_trees, is_isomorphic, realize_exhaustive, tree_from_prufer,
};
use tree_status::partitions::{orbit_partition, refines, status_partition};
use tree_status::realize::{realize_injective, InjectiveSequence};
use tree_status::srt_d3::srt_d3_realize;
use tree_status::{StatusSequence, Tree};

fn random_tree(max_n: usize) -> impl Strategy<Value = Tree> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0..n, n - 2).prop_map(|code| tree_from_prufer(&code))
    })
}

fn tree_and_permutation(max_n: usize) -> impl Strategy<Value = (Tree, Vec<usize>)> {
    random_tree(max_n).prop_flat_map(|t| {
        let ids: Vec<usize> = (0..t.n()).collect();
        (Just(t), Just(ids).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn edge_split_identity(t in random_tree(40)) {
        let s = t.statuses();
        for (u, v) in t.edges() {
            let (tu, tv) = t.edge_split(u, v).unwrap();
            prop_assert_eq!(tu + tv, t.n());
            prop_assert_eq!(s[u] as i64 - s[v] as i64, tv as i64 - tu as i64);
        }
    }

    #[test]
    fn rerooting_matches_bfs(t in random_tree(60)) {
        prop_assert_eq!(t.statuses_by_rerooting(), t.statuses());
    }

    #[test]
    fn status_sequence_invariant_under_relabeling((t, perm) in tree_and_permutation(30)) {
        let r = t.relabel(&perm);
        prop_assert_eq!(r.status_sequence(), t.status_sequence());
        prop_assert_eq!(canonical_form(&r), canonical_form(&t));
        let (a, b) = (orbits(t.graph()).unwrap(), orbits(r.graph()).unwrap());
        prop_assert_eq!(a.group_order, b.group_order);
    }

    #[test]
    fn median_monotone(t in random_tree(40)) {
        prop_assert!(t.median_path_is_increasing());
    }

    #[test]
    fn orbits_refine_statuses(t in random_tree(30)) {
        let o = orbit_partition(t.graph()).unwrap();
        prop_assert!(refines(&o.partition, &status_partition(t.graph())));
        if t.is_status_injective() {
            prop_assert!(o.is_trivial());
            prop_assert_eq!(o.group_order, Some(1));
        }
    }

    #[test]
    fn injective_trees_realize_back(t in random_tree(40)) {
        if !t.is_status_injective() {
            return Ok(());
        }
        let seq = InjectiveSequence::new(t.statuses()).unwrap();
        let r = realize_injective(&seq).unwrap();
        prop_assert!(is_isomorphic(&r.tree, &t));
    }

    #[test]
    fn reduction_roundtrip(parts in prop::collection::vec((8u64..12, 8u64..12), 1..4)) {
        // Each triple (x, y, 30 - x - y) sums to 30 and stays inside (B/4, B/2).
        let mut elements = Vec::new();
        for &(x, y) in &parts {
            elements.extend([x, y, 30 - x - y]);
        }
        let inst = ThreePartitionInstance::new(elements).unwrap();
        prop_assume!(inst.satisfies_window());
        let partition = brute_force_3partition(&inst).unwrap().unwrap();
        let gadget = build_gadget_tree(&inst, &partition).unwrap();
        prop_assert_eq!(gadget.status_sequence(), reduce_3partition(&inst).unwrap().to_sequence());
        let back = extract_partition(&gadget, &inst).unwrap();
        for triple in back.values(&inst) {
            prop_assert_eq!(triple.iter().sum::<u64>(), inst.target());
        }
    }
}

#[test]
fn realize_injective_is_complete_against_exhaustive_search() {
    for n in 1..=8 {
        for t in enumerate_free_trees(n).unwrap() {
            if !t.is_status_injective() {
                continue;
            }
            let all = realize_exhaustive(&t.status_sequence()).unwrap();
            assert_eq!(all.len(), 1);
            let seq = InjectiveSequence::new(t.statuses()).unwrap();
            assert!(is_isomorphic(
                &realize_injective(&seq).unwrap().tree,
                &all[0]
            ));
        }
    }
}

fn has_low_root(t: &Tree, delta: usize) -> bool {
    let ecc = t.eccentricities();
    (0..t.n()).any(|v| ecc[v] <= 3 && t.degree(v) <= delta)
}

#[test]
fn srt_d3_agrees_with_exhaustive_search() {
    let mut by_sequence: BTreeMap<Vec<u64>, Vec<Tree>> = BTreeMap::new();
    for n in 1..=9 {
        for t in enumerate_free_trees(n).unwrap() {
            by_sequence
                .entry(t.status_sequence().into_vec())
                .or_default()
                .push(t);
        }
    }
    for delta in 1..=3 {
        for (values, trees) in &by_sequence {
            let seq = StatusSequence::new(values.clone());
            let expected = trees.iter().any(|t| has_low_root(t, delta));
            let got = srt_d3_realize(&seq, delta).unwrap();
            assert_eq!(
                got.is_some(),
                expected,
                "delta {delta}, sequence {values:?}"
            );
            if let Some(r) = got {
                assert_eq!(r.tree.status_sequence(), seq);
                assert!(has_low_root(&r.tree, delta));
            }
        }
    }
}

#[test]
fn family_t_members_have_three_orbits() {
    let specs = [
        FamilySpec::FamilyTStar { leaves: 2, b: 1 },
        FamilySpec::FamilyTStar { leaves: 4, b: 3 },
        FamilySpec::FamilyTDoubleStar { a: 1, b: 1 },
        FamilySpec::FamilyTDoubleStar { a: 3, b: 2 },
    ];
    for spec in specs {
        let t = generate(&spec).unwrap();
        let o = orbit_partition(t.graph()).unwrap();
        assert_eq!(o.partition.len(), 3, "{spec:?}");
        assert!(o.partition.same_parts(&status_partition(t.graph())));
    }
}

#[test]
fn realization_runs_in_near_linear_time() {
    // A long path with one pendant vertex, placed where the statuses separate.
    let n = 20_000;
    let caterpillar = (n / 2 - 50..n / 2)
        .map(|p| {
            let mut parents: Vec<Option<usize>> = vec![None];
            parents.extend((1..n).map(|v| Some(v - 1)));
            parents.push(Some(p));
            Tree::from_parents(&parents).unwrap()
        })
        .find(|t| {
            let mut s = t.statuses_by_rerooting();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        })
        .expect("some pendant position gives an injective tree");
    let seq = InjectiveSequence::new(caterpillar.statuses_by_rerooting()).unwrap();
    let start = std::time::Instant::now();
    let r = realize_injective(&seq).unwrap();
    assert!(start.elapsed().as_secs() < 5);
    assert!(is_isomorphic(&r.tree, &caterpillar));
}
