use hyperchrom_wasm::{bounded_expo_profile, chromatic_roots, decompose, family};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn family_then_roots() {
    let h = family("tight_cycle", 6, 3, 0.0, 0);
    let doc = parse(&chromatic_roots(&h));
    assert_eq!(doc["roots"].as_array().unwrap().len(), 6);
    assert_eq!(doc["ok_cr"], true);
    assert!(doc["display"].as_str().unwrap().starts_with("x^6 - 6x^4"));
}

#[test]
fn decomposition_of_two_edges() {
    let doc = parse(&decompose(r#"{"num_vertices":4,"edges":[[0,1],[2,3]]}"#));
    assert_eq!(doc["decomposition"], serde_json::json!([[0, 1], [2, 3]]));
    assert_eq!(doc["partition_connected"], false);
}

#[test]
fn bounded_expo_rows() {
    let doc = parse(&bounded_expo_profile(r#"{"num_vertices":3,"edges":[[0,1],[0,2],[1,2]]}"#));
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["lhs"], "2");
    assert!(rows.iter().all(|r| r["ok"] == true));
}

#[test]
fn errors_are_reported_as_json() {
    assert!(parse(&decompose("not json"))["error"].is_string());
    assert!(parse(&family("nope", 3, 2, 0.0, 0))["error"].is_string());
    assert!(parse(&chromatic_roots(r#"{"num_vertices":3,"edges":[[0,1],[0,1]]}"#))["error"].is_string());
}
