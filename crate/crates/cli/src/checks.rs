//! Desk-scale verification sweeps, one per `check` id.

use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use tree_status::families::{check_k_bound, classify_k2, classify_k3};
use tree_status::hardness::{
    build_gadget_tree, extract_partition, reduce_3partition, ThreePartitionInstance,
    TripletPartition,
};
use tree_status::oracle::{
    enumerate_free_trees, is_isomorphic, tree_from_prufer, MAX_ENUMERATION_ORDER,
};
use tree_status::partitions::{orbit_partition, refines, status_partition};
use tree_status::realize::{realize_injective, InjectiveSequence};
use tree_status::Tree;

use crate::report::{CliError, Report, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckId {
    KBound,
    K2Char,
    K3Char,
    InjectiveUnique,
    OrbitRefinesStatus,
    EdgeSplit,
    MedianMonotone,
    ReductionRoundtrip,
}

impl CheckId {
    fn default_max_n(self) -> usize {
        match self {
            CheckId::KBound | CheckId::K2Char | CheckId::K3Char => 12,
            CheckId::InjectiveUnique | CheckId::EdgeSplit | CheckId::MedianMonotone => 10,
            CheckId::OrbitRefinesStatus => 9,
            CheckId::ReductionRoundtrip => 3,
        }
    }

    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

/// Random trees checked in addition to the exhaustive part of a sweep.
const RANDOM_TREES: usize = 200;
const RANDOM_MAX_ORDER: usize = 200;
/// Random yes-instances per number of triples.
const RANDOM_INSTANCES: usize = 20;

struct Counterexample {
    reason: String,
    tree: Option<Tree>,
}

fn fail(reason: impl Into<String>, tree: &Tree) -> Counterexample {
    Counterexample {
        reason: reason.into(),
        tree: Some(tree.clone()),
    }
}

fn all_trees(max_n: usize) -> Result<impl Iterator<Item = Tree>, CliError> {
    if max_n == 0 || max_n > MAX_ENUMERATION_ORDER {
        return Err(CliError(format!(
            "--max-n must be in 1..={MAX_ENUMERATION_ORDER}, got {max_n}"
        )));
    }
    Ok((1..=max_n).flat_map(|n| enumerate_free_trees(n).expect("order checked")))
}

fn random_trees(seed: u64) -> impl Iterator<Item = Tree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..RANDOM_TREES).map(move |_| {
        let n = rng.gen_range(2..=RANDOM_MAX_ORDER);
        let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        tree_from_prufer(&code)
    })
}

/// Runs `test` on every tree, stopping at the first counterexample.
fn sweep(
    trees: impl Iterator<Item = Tree>,
    mut test: impl FnMut(&Tree) -> Result<(), Counterexample>,
) -> Result<usize, Counterexample> {
    let mut count = 0;
    for t in trees {
        test(&t)?;
        count += 1;
    }
    Ok(count)
}

pub fn run(id: CheckId, max_n: Option<usize>, seed: u64) -> Result<Report, CliError> {
    let max_n = max_n.unwrap_or(id.default_max_n());
    let outcome: Result<String, Counterexample> = match id {
        CheckId::KBound => sweep(all_trees(max_n)?, |t| {
            let b = check_k_bound(t);
            if b.holds() {
                Ok(())
            } else {
                Err(fail(format!("k = {} < {}", b.k, b.lower_bound), t))
            }
        })
        .map(|c| format!("all {c} trees with n <= {max_n} satisfy k >= ceil((diam+1)/2)")),
        CheckId::K2Char => sweep(all_trees(max_n)?, |t| {
            let k = t.distinct_status_count();
            if (k == 2) == classify_k2(t) {
                Ok(())
            } else {
                Err(fail(format!("k = {k} but structural test says {}", classify_k2(t)), t))
            }
        })
        .map(|c| format!("k = 2 iff star or balanced double star, {c} trees with n <= {max_n}")),
        CheckId::K3Char => sweep(all_trees(max_n)?, |t| {
            let k = t.distinct_status_count();
            if (k == 3) == classify_k3(t) {
                Ok(())
            } else {
                Err(fail(format!("k = {k} but structural test says {}", classify_k3(t)), t))
            }
        })
        .map(|c| format!("k = 3 iff member of the family T, {c} trees with n <= {max_n}")),
        CheckId::InjectiveUnique => {
            let mut seen = std::collections::BTreeMap::new();
            let mut injective = 0;
            sweep(all_trees(max_n)?, |t| {
                if !t.is_status_injective() {
                    return Ok(());
                }
                injective += 1;
                let seq = t.status_sequence().into_vec();
                if seen.insert(seq.clone(), ()).is_some() {
                    return Err(fail("another tree has the same injective sequence", t));
                }
                let real = realize_injective(&InjectiveSequence::new(seq).expect("injective"))
                    .map_err(|e| fail(e.to_string(), t))?;
                if is_isomorphic(&real.tree, t) {
                    Ok(())
                } else {
                    Err(fail("realization is not isomorphic", t))
                }
            })
            .map(|c| format!("{injective} of {c} trees with n <= {max_n} are injective, each recovered uniquely"))
        }
        CheckId::OrbitRefinesStatus => sweep(all_trees(max_n)?, |t| {
            let orbits = orbit_partition(t.graph()).map_err(|e| fail(e.to_string(), t))?;
            if !refines(&orbits.partition, &status_partition(t.graph())) {
                return Err(fail("orbit partition does not refine the status partition", t));
            }
            if t.is_status_injective() && !orbits.is_trivial() {
                return Err(fail("injective tree with a nontrivial automorphism", t));
            }
            Ok(())
        })
        .map(|c| format!("orbits refine statuses on all {c} trees with n <= {max_n}")),
        CheckId::EdgeSplit => sweep(all_trees(max_n)?.chain(random_trees(seed)), |t| {
            let s = t.statuses();
            for (u, v) in t.edges() {
                let (tu, tv) = t.edge_split(u, v).expect("edge");
                if s[u] as i64 - s[v] as i64 != tv as i64 - tu as i64 {
                    return Err(fail(format!("edge {u}-{v} violates s(u) - s(v) = |T_v| - |T_u|"), t));
                }
            }
            Ok(())
        })
        .map(|c| format!("edge-split identity on {c} trees (n <= {max_n} and {RANDOM_TREES} random, seed {seed})")),
        CheckId::MedianMonotone => sweep(all_trees(max_n)?.chain(random_trees(seed)), |t| {
            if t.median_path_is_increasing() {
                Ok(())
            } else {
                Err(fail("status not increasing along a path from the median", t))
            }
        })
        .map(|c| format!("statuses increase away from the median on {c} trees (n <= {max_n} and {RANDOM_TREES} random, seed {seed})")),
        CheckId::ReductionRoundtrip => {
            if max_n == 0 || max_n > 6 {
                return Err(CliError(format!("--max-n (number of triples) must be in 1..=6, got {max_n}")));
            }
            reduction_roundtrip(max_n, seed)
        }
    };
    let mut r = Report::new("check", Verdict::Pass);
    match outcome {
        Ok(detail) => {
            r.text = format!("PASS ({detail})\n");
            r.witness =
                json!({ "check": id.name(), "max_n": max_n, "seed": seed, "detail": detail });
        }
        Err(ce) => {
            r.verdict = Verdict::Fail;
            r.text = format!("FAIL ({})\n", ce.reason);
            if let Some(t) = &ce.tree {
                r.text
                    .push_str(&tree_status::io::format_edge_list(t.graph(), None));
                r.edges = Some(
                    t.edges()
                        .into_iter()
                        .map(|(u, v)| [u as u64, v as u64])
                        .collect(),
                );
                r.sequence = Some(t.status_sequence().into_vec());
            }
            r.witness =
                json!({ "check": id.name(), "max_n": max_n, "seed": seed, "reason": ce.reason });
        }
    }
    Ok(r)
}

/// A random yes-instance with `m` triples summing to `target`, elements in
/// the open window `(target/4, target/2)`, shuffled; returns it with the
/// planted partition.
fn planted_instance(rng: &mut ChaCha8Rng, m: usize) -> (ThreePartitionInstance, Vec<[usize; 3]>) {
    let target: u64 = rng.gen_range(20..=40);
    let lo = target / 4 + 1;
    let hi = (target - 1) / 2;
    let mut elements = Vec::with_capacity(3 * m);
    while elements.len() < 3 * m {
        let x = rng.gen_range(lo..=hi);
        let y = rng.gen_range(lo..=hi);
        if let Some(z) = target.checked_sub(x + y).filter(|z| (lo..=hi).contains(z)) {
            elements.extend([x, y, z]);
        }
    }
    let mut order: Vec<usize> = (0..3 * m).collect();
    order.shuffle(rng);
    let shuffled: Vec<u64> = order.iter().map(|&i| elements[i]).collect();
    let mut position = vec![0; 3 * m];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let triples = (0..m)
        .map(|t| [position[3 * t], position[3 * t + 1], position[3 * t + 2]])
        .collect();
    (
        ThreePartitionInstance::new(shuffled).expect("valid planted instance"),
        triples,
    )
}

fn reduction_roundtrip(max_m: usize, seed: u64) -> Result<String, Counterexample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for m in 1..=max_m {
        for _ in 0..RANDOM_INSTANCES {
            let (inst, triples) = planted_instance(&mut rng, m);
            let err = |reason: String| Counterexample {
                reason: format!("{:?}: {reason}", inst.elements()),
                tree: None,
            };
            let partition =
                TripletPartition::new(&inst, triples).map_err(|e| err(e.to_string()))?;
            let gadget = build_gadget_tree(&inst, &partition).map_err(|e| err(e.to_string()))?;
            let reduced = reduce_3partition(&inst).map_err(|e| err(e.to_string()))?;
            if gadget.status_sequence() != reduced.to_sequence() {
                return Err(fail(
                    format!(
                        "{:?}: gadget statuses differ from the reduction",
                        inst.elements()
                    ),
                    &gadget,
                ));
            }
            let back = extract_partition(&gadget, &inst).map_err(|e| err(e.to_string()))?;
            if back
                .values(&inst)
                .iter()
                .any(|t| t.iter().sum::<u64>() != inst.target())
            {
                return Err(err("extracted triple misses the target".into()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} planted instances with m <= {max_m} (seed {seed}) reduce, build and extract consistently"))
}
