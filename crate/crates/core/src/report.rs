//! JSON and text renderings of a [`BoundsReport`].

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::analyzer::{Bound, BoundsReport};
use crate::vass::Vass;

pub const SCHEMA_VERSION: u64 = 1;

fn bound_json(b: Bound) -> Value {
    match b {
        Bound::Finite(k) => json!(k),
        Bound::Inf => json!("inf"),
    }
}

/// The versioned JSON document. Key order is fixed, so equal reports
/// serialize to identical bytes.
pub fn to_json(v: &Vass, r: &BoundsReport) -> Value {
    let mut variables = serde_json::Map::new();
    for (name, b) in v.vars().iter().zip(&r.vexp) {
        variables.insert(name.clone(), bound_json(*b));
    }
    let transitions: Vec<Value> = v
        .transitions()
        .iter()
        .zip(&r.texp)
        .map(|(t, b)| {
            json!({
                "id": t.id,
                "src": v.state_name(t.src),
                "dst": v.state_name(t.dst),
                "update": t.update,
                "exp": bound_json(*b),
            })
        })
        .collect();
    json!({
        "schema": SCHEMA_VERSION,
        "status": r.status.to_string(),
        "complexity_exponent": r.complexity_exponent,
        "exponential_layer": r.exponential_layer,
        "variables": variables,
        "transitions": transitions,
        "layers": r.layers,
    })
}

pub fn to_json_string(v: &Vass, r: &BoundsReport) -> String {
    serde_json::to_string_pretty(&to_json(v, r)).expect("reports serialize")
}

pub fn to_text(v: &Vass, r: &BoundsReport) -> String {
    let mut out = String::new();
    writeln!(out, "status: {}", r.status).unwrap();
    match (r.complexity_exponent, r.exponential_layer) {
        (Some(k), _) => writeln!(out, "complexity: N^{k}").unwrap(),
        (None, Some(l)) => writeln!(out, "complexity: at least exponential (detected at layer {l})").unwrap(),
        (None, None) => {}
    }
    writeln!(out, "variables:").unwrap();
    for (name, b) in v.vars().iter().zip(&r.vexp) {
        writeln!(out, "  {name:<8} {b}").unwrap();
    }
    writeln!(out, "transitions:").unwrap();
    for (t, b) in v.transitions().iter().zip(&r.texp) {
        writeln!(out, "  t{:<3} {:<16} {b}", t.id, v.transition_label(t.id)).unwrap();
    }
    out
}
