use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::json;
use tree_status::families::{check_k_bound, classify_k2, classify_k3, generate, FamilySpec};
use tree_status::hardness::{
    build_gadget_tree, extract_partition, pad_instance, padding_constant, reduce_3partition,
    ExtractError, ThreePartitionInstance, TripletPartition,
};
use tree_status::io::{
    self, format_edge_list, format_parts, format_sequence, LabeledGraph, LabeledTree,
};
use tree_status::oracle::{self, canonical_form};
use tree_status::partitions::{
    generate_gm, is_distance_mean_regular, is_equitable, orbit_partition, prop45_report,
    quotient_matrix, status_partition, Base, Partition,
};
use tree_status::realize::{self, InjectiveSequence, RealizeError};
use tree_status::srt_d3::srt_d3_realize;
use tree_status::{Graph, StatusSequence, Tree};

use crate::report::{CliError, Report, Verdict};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<LabeledGraph, CliError> {
    io::parse_edge_list(&read(path)?).map_err(|e| CliError::parse(path, e))
}

fn load_tree(path: &Path) -> Result<LabeledTree, CliError> {
    io::parse_tree(&read(path)?).map_err(|e| CliError::parse(path, e))
}

fn load_integers(path: &Path) -> Result<Vec<u64>, CliError> {
    io::parse_integers(&read(path)?).map_err(|e| CliError::parse(path, e))
}

fn load_instance(path: &Path) -> Result<ThreePartitionInstance, CliError> {
    ThreePartitionInstance::new(load_integers(path)?)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn labeled_edges(g: &Graph, labels: Option<&[u64]>) -> Vec<[u64; 2]> {
    let label = |v: usize| labels.map_or(v as u64, |l| l[v]);
    g.edges()
        .into_iter()
        .map(|(u, v)| [label(u), label(v)])
        .collect()
}

pub fn status(path: &Path) -> Result<Report, CliError> {
    let LabeledTree { tree, labels } = load_tree(path)?;
    let statuses = tree.statuses();
    let seq = tree.status_sequence();
    let mut r = Report::new("status", Verdict::Ok);
    writeln!(r.text, "sequence: {seq}").unwrap();
    writeln!(r.text, "distinct: {}", seq.distinct_count()).unwrap();
    for (v, s) in statuses.iter().enumerate() {
        writeln!(r.text, "{} {s}", labels[v]).unwrap();
    }
    let per_vertex: Vec<_> = (0..tree.n())
        .map(|v| json!({ "vertex": labels[v], "status": statuses[v] }))
        .collect();
    r.witness = json!({
        "statuses": per_vertex,
        "distinct": seq.distinct_count(),
        "injective": seq.is_injective(),
    });
    r.edges = Some(labeled_edges(tree.graph(), Some(&labels)));
    r.sequence = Some(seq.into_vec());
    Ok(r)
}

pub fn realize_injective(path: &Path) -> Result<Report, CliError> {
    let values = load_integers(path)?;
    let seq = match InjectiveSequence::new(values.clone()) {
        Ok(seq) => seq,
        Err(RealizeError::NotInjective(s)) => {
            return Err(CliError(format!(
                "{}: status {s} repeats; realize-injective needs distinct values",
                path.display()
            )))
        }
        Err(e) => return Err(CliError(format!("{}: {e}", path.display()))),
    };
    let sorted = StatusSequence::new(values).into_vec();
    match realize::realize_injective(&seq) {
        Ok(real) => {
            let tree = real.tree;
            if tree.status_sequence().as_slice() != sorted.as_slice() {
                return Err(CliError(
                    "internal error: realization failed re-verification".into(),
                ));
            }
            let labels = tree.statuses();
            let mut r = Report::new("realize-injective", Verdict::Realizable);
            r.text = format_edge_list(tree.graph(), Some(&labels));
            r.edges = Some(labeled_edges(tree.graph(), Some(&labels)));
            r.witness = json!({ "vertex_labels": "status" });
            r.sequence = Some(sorted);
            Ok(r)
        }
        Err(RealizeError::NotRealizable(why)) => {
            let mut r = Report::new("realize-injective", Verdict::NotRealizable);
            r.text = format!("not realizable: {why}\n");
            r.witness = json!({ "reason": why.to_string() });
            r.sequence = Some(sorted);
            Ok(r)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn realize_exhaustive(path: &Path) -> Result<Report, CliError> {
    let seq = StatusSequence::new(load_integers(path)?);
    let trees = oracle::realize_exhaustive(&seq)?;
    let verdict = if trees.is_empty() {
        Verdict::NotRealizable
    } else {
        Verdict::Realizable
    };
    let mut r = Report::new("realize-exhaustive", verdict);
    writeln!(r.text, "{} tree(s)", trees.len()).unwrap();
    for t in &trees {
        r.text.push('\n');
        r.text.push_str(&format_edge_list(t.graph(), None));
    }
    r.edges = trees.first().map(|t| labeled_edges(t.graph(), None));
    r.witness = json!({
        "count": trees.len(),
        "trees": trees.iter().map(|t| labeled_edges(t.graph(), None)).collect::<Vec<_>>(),
    });
    r.sequence = Some(seq.into_vec());
    Ok(r)
}

pub fn status_unique(path: &Path) -> Result<Report, CliError> {
    let LabeledTree { tree, labels } = load_tree(path)?;
    let seq = tree.status_sequence();
    let form = canonical_form(&tree);
    let others: Vec<Tree> = oracle::realize_exhaustive(&seq)?
        .into_iter()
        .filter(|t| canonical_form(t) != form)
        .collect();
    let mut r = Report::new("status-unique", Verdict::from_bool(others.is_empty()));
    if others.is_empty() {
        r.text = "status unique among trees\n".into();
    } else {
        writeln!(
            r.text,
            "not status unique: {} other tree(s) share {seq}",
            others.len()
        )
        .unwrap();
        for t in &others {
            r.text.push('\n');
            r.text.push_str(&format_edge_list(t.graph(), None));
        }
    }
    r.witness = json!({ "others": others.iter().map(|t| labeled_edges(t.graph(), None)).collect::<Vec<_>>() });
    r.edges = Some(labeled_edges(tree.graph(), Some(&labels)));
    r.sequence = Some(seq.into_vec());
    Ok(r)
}

pub fn reduce(path: &Path, pad: bool) -> Result<Report, CliError> {
    let original = load_instance(path)?;
    let inst = if pad {
        pad_instance(&original)
    } else {
        original.clone()
    };
    let reduced =
        reduce_3partition(&inst).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let seq = reduced.to_sequence();
    let mut r = Report::new("reduce", Verdict::Ok);
    r.text = format!("{}\n", format_sequence(seq.as_slice()));
    r.witness = json!({
        "elements": inst.elements(),
        "m": inst.m(),
        "target": inst.target(),
        "padding": pad.then(|| padding_constant(&original)),
    });
    r.sequence = Some(seq.into_vec());
    Ok(r)
}

fn load_partition(
    path: &Path,
    inst: &ThreePartitionInstance,
) -> Result<TripletPartition, CliError> {
    let parts = io::parse_parts(&read(path)?).map_err(|e| CliError::parse(path, e))?;
    let mut triples = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        let triple: [u64; 3] = part.as_slice().try_into().map_err(|_| {
            CliError(format!(
                "{}: part {} has {} indices, expected 3",
                path.display(),
                i + 1,
                part.len()
            ))
        })?;
        triples.push(triple.map(|x| x as usize));
    }
    TripletPartition::new(inst, triples).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

pub fn gadget(instance: &Path, partition: &Path) -> Result<Report, CliError> {
    let inst = load_instance(instance)?;
    let partition = load_partition(partition, &inst)?;
    let tree = build_gadget_tree(&inst, &partition)?;
    let reduced = reduce_3partition(&inst)?.to_sequence();
    if tree.status_sequence() != reduced {
        return Err(CliError(
            "internal error: gadget statuses differ from the reduced sequence".into(),
        ));
    }
    let mut r = Report::new("gadget", Verdict::Ok);
    r.text = format_edge_list(tree.graph(), None);
    r.edges = Some(labeled_edges(tree.graph(), None));
    r.witness = json!({ "root": 0, "triples": partition.triples() });
    r.sequence = Some(reduced.into_vec());
    Ok(r)
}

pub fn extract(tree: &Path, instance: &Path) -> Result<Report, CliError> {
    let LabeledTree { tree, .. } = load_tree(tree)?;
    let inst = load_instance(instance)?;
    match extract_partition(&tree, &inst) {
        Ok(p) => {
            let mut r = Report::new("extract", Verdict::Ok);
            for (idx, vals) in p.triples().iter().zip(p.values(&inst)) {
                writeln!(
                    r.text,
                    "{} {} {}  # {} + {} + {} = {}",
                    idx[0],
                    idx[1],
                    idx[2],
                    vals[0],
                    vals[1],
                    vals[2],
                    inst.target()
                )
                .unwrap();
            }
            r.witness = json!({ "triples": p.triples(), "values": p.values(&inst) });
            r.sequence = Some(tree.status_sequence().into_vec());
            Ok(r)
        }
        Err(ExtractError::Instance(e)) => Err(e.into()),
        Err(e) => {
            let mut r = Report::new("extract", Verdict::False);
            r.text = format!("not a gadget tree: {e}\n");
            r.witness = json!({ "reason": e.to_string() });
            Ok(r)
        }
    }
}

pub fn srt_d3(path: &Path, delta: usize) -> Result<Report, CliError> {
    let seq = StatusSequence::new(load_integers(path)?);
    let found = srt_d3_realize(&seq, delta)?;
    let mut r = match found {
        Some(real) => {
            let mut r = Report::new("srt-d3", Verdict::Realizable);
            r.text = format_edge_list(real.tree.graph(), None);
            r.edges = Some(labeled_edges(real.tree.graph(), None));
            r.witness = json!({
                "root": 0,
                "root_status": real.config.root_status,
                "neighbor_statuses": real.config.neighbor_statuses,
                "branches": real.system.variables.iter().zip(&real.assignment)
                    .filter(|(_, &x)| x > 0)
                    .map(|(v, &x)| json!({
                        "neighbor_status": v.profile.parent_status,
                        "child_status": v.profile.child_status,
                        "leaves": v.profile.leaf_count,
                        "count": x,
                    }))
                    .collect::<Vec<_>>(),
            });
            r
        }
        None => {
            let mut r = Report::new("srt-d3", Verdict::NotRealizable);
            r.text = format!("not realizable by a depth-3 tree with root degree at most {delta}\n");
            r
        }
    };
    r.sequence = Some(seq.into_vec());
    Ok(r)
}

pub fn family(kind: &str, params: &[usize]) -> Result<Report, CliError> {
    let spec = FamilySpec::parse(kind, params)?;
    let tree = generate(&spec)?;
    let seq = tree.status_sequence();
    let bound = check_k_bound(&tree);
    let mut r = Report::new("family", Verdict::Ok);
    writeln!(r.text, "# sequence: {seq}").unwrap();
    writeln!(r.text, "# k = {}, bound = {}", bound.k, bound.lower_bound).unwrap();
    r.text.push_str(&format_edge_list(tree.graph(), None));
    r.witness = json!({
        "spec": spec,
        "k": bound.k,
        "k_lower_bound": bound.lower_bound,
        "k2_structure": classify_k2(&tree),
        "k3_structure": classify_k3(&tree),
    });
    r.edges = Some(labeled_edges(tree.graph(), None));
    r.sequence = Some(seq.into_vec());
    Ok(r)
}

pub fn gm(m: usize) -> Result<Report, CliError> {
    let gm = generate_gm(m)?;
    let hub = gm.hub_partition();
    let statuses = gm.graph.statuses();
    let equitable = is_equitable(&gm.graph, &hub, Base::Adjacency);
    let is_status = hub.same_parts(&status_partition(&gm.graph));
    let mut r = Report::new("gm", Verdict::Ok);
    writeln!(
        r.text,
        "# G_{m}: {} vertices, {} edges",
        gm.graph.n(),
        gm.graph.edge_count()
    )
    .unwrap();
    writeln!(r.text, "# hub partition adjacency-equitable: {equitable}").unwrap();
    writeln!(
        r.text,
        "# hub partition is the status partition: {is_status}"
    )
    .unwrap();
    for (v, s) in statuses.iter().enumerate() {
        writeln!(r.text, "# {v} = {} status {s}", gm.label(v)).unwrap();
    }
    r.text.push_str(&format_edge_list(&gm.graph, None));
    r.witness = json!({
        "labels": (0..gm.graph.n()).map(|v| gm.label(v)).collect::<Vec<_>>(),
        "statuses": statuses,
        "hub_partition": hub.parts(),
        "hub_equitable": equitable,
        "hub_is_status_partition": is_status,
    });
    r.edges = Some(labeled_edges(&gm.graph, None));
    r.sequence = Some(gm.graph.status_sequence().into_vec());
    Ok(r)
}

fn quotient_strings(g: &Graph, p: &Partition, base: Base) -> Vec<Vec<String>> {
    quotient_matrix(g, p, base)
        .entries
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}

pub fn partitions(path: &Path, base: Base) -> Result<Report, CliError> {
    let LabeledGraph { graph, labels } = load_graph(path)?;
    let sp = status_partition(&graph);
    let orbits = orbit_partition(&graph)?;
    let sp_equitable = is_equitable(&graph, &sp, base);
    let orbit_equitable = is_equitable(&graph, &orbits.partition, base);
    let quotient = quotient_matrix(&graph, &sp, base);
    let report = prop45_report(&graph);
    let dmr = is_distance_mean_regular(&graph);
    let base_name = match base {
        Base::Adjacency => "adjacency",
        Base::Distance => "distance",
    };
    let mut r = Report::new("partitions", Verdict::Ok);
    writeln!(
        r.text,
        "status partition ({} parts, equitable over {base_name}: {sp_equitable}):",
        sp.len()
    )
    .unwrap();
    r.text.push_str(&format_parts(sp.parts(), Some(&labels)));
    let order = orbits
        .group_order
        .map_or("overflow".to_string(), |o| o.to_string());
    writeln!(
        r.text,
        "orbit partition ({} parts, group order {order}, equitable over {base_name}: {orbit_equitable}):",
        orbits.partition.len()
    )
    .unwrap();
    r.text
        .push_str(&format_parts(orbits.partition.parts(), Some(&labels)));
    writeln!(
        r.text,
        "quotient matrix of the status partition ({base_name}):"
    )
    .unwrap();
    r.text.push_str(&quotient.to_string());
    writeln!(
        r.text,
        "equal-status distance quotients match: {} ({} pairs)",
        report.all_pairs_match, report.pairs_checked
    )
    .unwrap();
    writeln!(r.text, "distance mean-regular: {dmr}").unwrap();
    let relabel = |p: &Partition| -> Vec<Vec<u64>> {
        p.parts()
            .iter()
            .map(|part| part.iter().map(|&v| labels[v]).collect())
            .collect()
    };
    r.witness = json!({
        "base": base,
        "status_partition": relabel(&sp),
        "status_partition_equitable": sp_equitable,
        "orbit_partition": relabel(&orbits.partition),
        "orbit_partition_equitable": orbit_equitable,
        "group_order": orbits.group_order.map(|o| o.to_string()),
        "quotient_matrix": quotient_strings(&graph, &sp, base),
        "equal_status_quotients_match": report.all_pairs_match,
        "status_partition_adjacency_equitable": report.status_partition_equitable,
        "distance_mean_regular": dmr,
    });
    r.edges = Some(labeled_edges(&graph, Some(&labels)));
    r.sequence = Some(graph.status_sequence().into_vec());
    Ok(r)
}
