use serde_json::Value;
use tree_status_web::{
    family_kinds_js, family_tree, family_tree_js, gm_partitions, realize_sequence,
    realize_sequence_js,
};

#[test]
fn realizes_the_seven_vertex_example() {
    let d = realize_sequence("19 18 15 14 13 11 10");
    assert!(d.ok, "{}", d.message);
    assert_eq!(d.sequence, vec![10, 11, 13, 14, 15, 18, 19]);
    assert_eq!(d.edges.len(), 6);
    for node in &d.nodes {
        assert_eq!(node.label, node.status.to_string());
        assert!((0.0..=1.0).contains(&node.x) && (0.0..=1.0).contains(&node.y));
    }
    let root = d.nodes.iter().min_by_key(|n| n.status).unwrap();
    assert_eq!(root.y, 0.0);
}

#[test]
fn reports_errors_as_documents() {
    assert!(!realize_sequence("5 4 3").ok);
    assert!(!realize_sequence("5 5 3").ok);
    assert!(!realize_sequence("5 x").ok);
    let doc: Value = serde_json::from_str(&realize_sequence_js("")).unwrap();
    assert_eq!(doc["ok"], false);
    assert!(!family_tree("wheel", "3").ok);
    assert!(!family_tree("star", "a").ok);
    assert!(!family_tree("star", "1000").ok);
    assert!(!gm_partitions(2).ok);
}

#[test]
fn family_members_carry_classification() {
    let d = family_tree("family-t-double-star", "2 1");
    assert!(d.ok);
    let facts: std::collections::HashMap<_, _> = d.facts.iter().cloned().collect();
    assert_eq!(facts["k (distinct statuses)"], "3");
    assert_eq!(facts["member of family T"], "true");
    let doc: Value = serde_json::from_str(&family_tree_js("path", "5")).unwrap();
    assert_eq!(doc["sequence"], serde_json::json!([6, 7, 7, 10, 10]));
    let kinds: Vec<String> = serde_json::from_str(&family_kinds_js()).unwrap();
    assert!(kinds.contains(&"spider".to_string()));
}

#[test]
fn gm_demo_shows_equitable_non_status_partition() {
    let d = gm_partitions(3);
    assert!(d.ok);
    assert_eq!(d.nodes.len(), 20);
    assert_eq!(d.edges.len(), 45);
    let facts: std::collections::HashMap<_, _> = d.facts.iter().cloned().collect();
    assert_eq!(facts["{a}, A, B, {b} adjacency-equitable"], "true");
    assert_eq!(facts["{a}, A, B, {b} is the status partition"], "false");
    assert_eq!(facts["automorphism group order"], "1");
}
