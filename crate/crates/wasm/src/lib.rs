//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes and returns JSON strings. Failures come back as
//! `{"error": "..."}` so the page can show them next to the input.

use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use hyperchrom::chromatic::{chromatic_polynomial_auto, induced_a1_table};
use hyperchrom::generate::{generate, Family};
use hyperchrom::hypergraph::{parse_hypergraph, to_json};
use hyperchrom::matroid::{is_partition_connected, maximal_bad_partition, partition_connected_decomposition};
use hyperchrom::penrose::bounded_expo_check_with;
use hyperchrom::roots::check_root_bound;
use hyperchrom::{Caps, Hypergraph};

/// Demo limits: small enough to keep the page responsive.
fn demo_caps() -> Caps {
    Caps {
        edges: 20,
        partition: 10,
        colorings: 10_000_000,
        structure_edges: 10,
    }
}

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn parse(text: &str) -> Result<Hypergraph, String> {
    parse_hypergraph(text).map_err(|e| e.to_string())
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Hypergraph JSON for a named family.
pub fn family_json(name: &str, n: usize, t: usize, p: f64, seed: u64) -> Result<Value, String> {
    let family = match name {
        "single_edge" => Family::SingleEdge { t },
        "complete_uniform" => Family::CompleteUniform { n, t },
        "tight_cycle" => Family::TightCycle { n, t },
        "loose_path" => Family::LoosePath { k: n, t },
        "random_uniform" => Family::RandomUniform { n, t, p, seed },
        "random_instance" => Family::RandomInstance { seed },
        other => return Err(format!("unknown family {other:?}")),
    };
    let h = generate(&family).map_err(|e| e.to_string())?;
    serde_json::from_str(&to_json(&h)).map_err(|e| e.to_string())
}

/// Chromatic polynomial, its roots and the two root-radius bounds.
pub fn roots_json(hypergraph: &str) -> Result<Value, String> {
    let h = parse(hypergraph)?;
    let report = check_root_bound(&h, 1e-8, &demo_caps()).map_err(|e| e.to_string())?;
    let p = chromatic_polynomial_auto(&h, &demo_caps()).map_err(|e| e.to_string())?;
    let mut v = to_value(&report);
    v["display"] = json!(p.to_string());
    Ok(v)
}

/// Partition connectivity, maximal bad partition and decomposition.
pub fn decomposition_json(hypergraph: &str) -> Result<Value, String> {
    let h = parse(hypergraph)?;
    let caps = demo_caps();
    let err = |e: hyperchrom::Error| e.to_string();
    Ok(json!({
        "num_vertices": h.num_vertices(),
        "edges": h.edges(),
        "partition_connected": is_partition_connected(&h, &caps).map_err(err)?,
        "maximal_bad_partition": maximal_bad_partition(&h, &caps).map_err(err)?,
        "decomposition": partition_connected_decomposition(&h, &caps).map_err(err)?,
    }))
}

/// For each subset size `s`, the largest left side over all vertices `v` of
/// `sum_{v in S, |S| = s} |a_1(H[S])|` against `(etD)^{s-1}`.
pub fn bounded_expo_json(hypergraph: &str) -> Result<Value, String> {
    let h = parse(hypergraph)?;
    let table = induced_a1_table(&h, &demo_caps()).map_err(|e| e.to_string())?;
    let n = h.num_vertices();
    let mut rows = Vec::new();
    for s in 1..=n {
        let mut worst: Option<Value> = None;
        let mut worst_ratio = -1.0f64;
        let mut all_ok = true;
        for v in 0..n {
            let r = bounded_expo_check_with(&h, &table, v, s).map_err(|e| e.to_string())?;
            let bound = r.bound_rhs.as_ref().expect("bound present");
            all_ok &= r.ok;
            let lhs: f64 = r.lhs.to_string().parse().unwrap_or(f64::INFINITY);
            let ratio = if bound.rhs_approx > 0.0 { lhs / bound.rhs_approx } else { lhs };
            if ratio > worst_ratio {
                worst_ratio = ratio;
                worst = Some(json!({
                    "v": v,
                    "lhs": bound.lhs,
                    "lhs_approx": lhs,
                    "rhs": bound.rhs,
                    "rhs_approx": bound.rhs_approx,
                }));
            }
        }
        let mut row = worst.expect("n >= 1");
        row["s"] = json!(s);
        row["ok"] = json!(all_ok);
        rows.push(row);
    }
    Ok(json!({ "t": h.uniformity(), "max_degree": h.max_degree(), "rows": rows }))
}

#[wasm_bindgen]
pub fn family(name: &str, n: usize, t: usize, p: f64, seed: u64) -> String {
    respond(family_json(name, n, t, p, seed))
}

#[wasm_bindgen]
pub fn chromatic_roots(hypergraph: &str) -> String {
    respond(roots_json(hypergraph))
}

#[wasm_bindgen]
pub fn decompose(hypergraph: &str) -> String {
    respond(decomposition_json(hypergraph))
}

#[wasm_bindgen]
pub fn bounded_expo_profile(hypergraph: &str) -> String {
    respond(bounded_expo_json(hypergraph))
}
