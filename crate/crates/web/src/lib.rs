//! Browser bindings. Each operation returns a JSON document; the plain Rust
//! functions are tested natively and wrapped by `#[wasm_bindgen]` exports.

use serde::Serialize;
use tree_status::families::{check_k_bound, classify_k2, classify_k3, generate, FamilySpec};
use tree_status::io::parse_integers;
use tree_status::partitions::{generate_gm, is_equitable, orbit_partition, status_partition, Base};
use tree_status::realize::{realize_injective, InjectiveSequence, RealizeError};
use tree_status::{Graph, Tree};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest generated family member the page will draw.
pub const MAX_DRAWN_ORDER: usize = 400;

#[derive(Debug, Serialize)]
pub struct Node {
    pub id: usize,
    pub label: String,
    pub status: u64,
    /// Layout coordinates in `[0, 1]`.
    pub x: f64,
    pub y: f64,
    /// Index of the vertex's status class, for colouring.
    pub class: usize,
}

#[derive(Debug, Serialize)]
pub struct Drawing {
    pub ok: bool,
    pub message: String,
    pub sequence: Vec<u64>,
    pub nodes: Vec<Node>,
    pub edges: Vec<[usize; 2]>,
    pub facts: Vec<(String, String)>,
}

impl Drawing {
    fn error(message: impl Into<String>) -> Self {
        Drawing {
            ok: false,
            message: message.into(),
            sequence: Vec::new(),
            nodes: Vec::new(),
            edges: Vec::new(),
            facts: Vec::new(),
        }
    }

    fn to_json(&self) -> String {
        serde_json::to_string(self).expect("drawing serializes")
    }
}

fn status_classes(g: &Graph) -> Vec<usize> {
    let p = status_partition(g);
    (0..g.n()).map(|v| p.part_of(v)).collect()
}

/// Layered layout rooted at a median vertex: leaves spread left to right in
/// preorder, parents centred over their children.
pub fn tree_layout(t: &Tree) -> Vec<(f64, f64)> {
    let statuses = t.statuses();
    let root = (0..t.n()).min_by_key(|&v| (statuses[v], v)).unwrap_or(0);
    let parents = t.parents_from(root);
    let order = t.preorder_from(root);
    let mut children = vec![Vec::new(); t.n()];
    let mut depth = vec![0usize; t.n()];
    for &v in &order {
        if let Some(p) = parents[v] {
            children[p].push(v);
            depth[v] = depth[p] + 1;
        }
    }
    let mut x = vec![0f64; t.n()];
    let mut next_leaf = 0f64;
    for &v in &order {
        if children[v].is_empty() {
            x[v] = next_leaf;
            next_leaf += 1.0;
        }
    }
    for &v in order.iter().rev() {
        if !children[v].is_empty() {
            x[v] = children[v].iter().map(|&c| x[c]).sum::<f64>() / children[v].len() as f64;
        }
    }
    let width = (next_leaf - 1.0).max(1.0);
    let height = depth.iter().copied().max().unwrap_or(0).max(1) as f64;
    (0..t.n())
        .map(|v| {
            let px = if t.n() == 1 { 0.5 } else { x[v] / width };
            (px, depth[v] as f64 / height)
        })
        .collect()
}

fn tree_drawing(t: &Tree, labels: impl Fn(usize) -> String) -> Drawing {
    let statuses = t.statuses();
    let classes = status_classes(t.graph());
    let layout = tree_layout(t);
    Drawing {
        ok: true,
        message: String::new(),
        sequence: t.status_sequence().into_vec(),
        nodes: (0..t.n())
            .map(|v| Node {
                id: v,
                label: labels(v),
                status: statuses[v],
                x: layout[v].0,
                y: layout[v].1,
                class: classes[v],
            })
            .collect(),
        edges: t.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        facts: Vec::new(),
    }
}

/// Rebuilds the tree of an injective status sequence typed by the user.
pub fn realize_sequence(text: &str) -> Drawing {
    let values = match parse_integers(text) {
        Ok(v) => v,
        Err(e) => return Drawing::error(e.to_string()),
    };
    let seq = match InjectiveSequence::new(values) {
        Ok(s) => s,
        Err(RealizeError::NotInjective(s)) => {
            return Drawing::error(format!("{s} occurs twice; the sequence must be injective"))
        }
        Err(e) => return Drawing::error(e.to_string()),
    };
    match realize_injective(&seq) {
        Ok(real) => {
            let statuses = real.tree.statuses();
            let mut d = tree_drawing(&real.tree, |v| statuses[v].to_string());
            d.message = format!("realizable: unique tree on {} vertices", real.tree.n());
            d.facts.push((
                "root (largest status)".into(),
                statuses[real.root()].to_string(),
            ));
            d
        }
        Err(e) => Drawing::error(e.to_string()),
    }
}

/// Builds a named family member, e.g. `("family-t-star", "3 2")`.
pub fn family_tree(kind: &str, params: &str) -> Drawing {
    let params: Result<Vec<usize>, _> = params
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect();
    let Ok(params) = params else {
        return Drawing::error("parameters must be nonnegative integers");
    };
    let tree = match FamilySpec::parse(kind, &params).and_then(|s| generate(&s)) {
        Ok(t) => t,
        Err(e) => return Drawing::error(e.to_string()),
    };
    if tree.n() > MAX_DRAWN_ORDER {
        return Drawing::error(format!(
            "{} vertices; the demo draws at most {MAX_DRAWN_ORDER}",
            tree.n()
        ));
    }
    let statuses = tree.statuses();
    let mut d = tree_drawing(&tree, |v| statuses[v].to_string());
    let bound = check_k_bound(&tree);
    d.message = format!("{} vertices, {} distinct statuses", tree.n(), bound.k);
    d.facts = vec![
        ("k (distinct statuses)".into(), bound.k.to_string()),
        (
            "lower bound ceil((diam+1)/2)".into(),
            bound.lower_bound.to_string(),
        ),
        (
            "star or balanced double star".into(),
            classify_k2(&tree).to_string(),
        ),
        ("member of family T".into(), classify_k3(&tree).to_string()),
    ];
    d
}

/// `G_m` coloured by status, with its hub partition facts.
pub fn gm_partitions(m: usize) -> Drawing {
    if m > 8 {
        return Drawing::error("m must be at most 8 in the demo");
    }
    let gm = match generate_gm(m) {
        Ok(g) => g,
        Err(e) => return Drawing::error(e.to_string()),
    };
    let g = &gm.graph;
    let statuses = g.statuses();
    let classes = status_classes(g);
    let mm = (m * m) as f64;
    let position = |v: usize| -> (f64, f64) {
        if v == gm.a() {
            (0.05, 0.5)
        } else if v == gm.b() {
            (0.95, 0.5)
        } else if v <= m * m {
            (0.35, (v - 1) as f64 / (mm - 1.0))
        } else {
            (0.65, (v - 1 - m * m) as f64 / (mm - 1.0))
        }
    };
    let hub = gm.hub_partition();
    let orbits = orbit_partition(g).map(|o| o.group_order).ok().flatten();
    Drawing {
        ok: true,
        message: format!("G_{m}: {} vertices, {} edges", g.n(), g.edge_count()),
        sequence: g.status_sequence().into_vec(),
        nodes: (0..g.n())
            .map(|v| {
                let (x, y) = position(v);
                Node {
                    id: v,
                    label: gm.label(v),
                    status: statuses[v],
                    x,
                    y,
                    class: classes[v],
                }
            })
            .collect(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        facts: vec![
            (
                "{a}, A, B, {b} adjacency-equitable".into(),
                is_equitable(g, &hub, Base::Adjacency).to_string(),
            ),
            (
                "{a}, A, B, {b} is the status partition".into(),
                hub.same_parts(&status_partition(g)).to_string(),
            ),
            (
                "status classes".into(),
                status_partition(g).len().to_string(),
            ),
            (
                "automorphism group order".into(),
                orbits.map_or("unknown".into(), |o| o.to_string()),
            ),
        ],
    }
}

#[wasm_bindgen(js_name = realizeSequence)]
pub fn realize_sequence_js(text: &str) -> String {
    realize_sequence(text).to_json()
}

#[wasm_bindgen(js_name = familyTree)]
pub fn family_tree_js(kind: &str, params: &str) -> String {
    family_tree(kind, params).to_json()
}

#[wasm_bindgen(js_name = gmPartitions)]
pub fn gm_partitions_js(m: usize) -> String {
    gm_partitions(m).to_json()
}

#[wasm_bindgen(js_name = familyKinds)]
pub fn family_kinds_js() -> String {
    serde_json::to_string(&FamilySpec::KINDS).expect("kinds serialize")
}
