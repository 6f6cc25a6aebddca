//! Browser bindings: E_P of a finite poset, A and R with property checks on
//! a ray poset, and truncation Hasse diagrams.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use spectra::graph::DEFAULT_VERTEX_CAP;
use spectra::ray::PropertyCheck;
use spectra::spectrum::{build_ep, SpecPoset};
use spectra::{catalog, FinitePoset, RayPoset};

/// Largest truncation depth the page will draw.
pub const MAX_DEPTH: usize = 12;

#[derive(Serialize)]
struct EpOut {
    dot: String,
    spectrum_dot: String,
    isomorphic: bool,
}

/// `E_P` as DOT plus the Hasse diagram of its spectrum.
pub fn ep_graph(poset_json: &str) -> Result<String, String> {
    let p = FinitePoset::from_json(poset_json).map_err(|e| e.to_string())?;
    let g = build_ep(&p);
    let sp = SpecPoset::new(&g, DEFAULT_VERTEX_CAP).map_err(|e| e.to_string())?;
    let out = EpOut {
        dot: g.to_dot(),
        spectrum_dot: sp.as_finite().to_dot(),
        isomorphic: spectra::poset::order_iso(sp.as_finite(), &p).is_some(),
    };
    Ok(serde_json::to_string(&out).expect("serializes"))
}

#[derive(Serialize)]
struct RayOut {
    properties: Vec<PropertyCheck>,
    a: serde_json::Value,
    added: Vec<String>,
    r: Option<serde_json::Value>,
    removed: Vec<String>,
    r_error: Option<String>,
}

/// Property checks, `A(P)` and `R(P)` for a ray poset.
pub fn ray_report(ray_json: &str) -> Result<String, String> {
    let p = RayPoset::from_json(ray_json).map_err(|e| e.to_string())?;
    let (a, details) = p.apply_a();
    let value = |q: &RayPoset| serde_json::from_str(&q.to_json()).expect("valid json");
    let (r, removed, r_error) = match p.apply_r() {
        Ok((r, removed)) => (Some(value(&r)), removed, None),
        Err(e) => (None, Vec::new(), Some(e.to_string())),
    };
    let out = RayOut {
        properties: p.check_all(),
        a: value(&a),
        added: details
            .added
            .iter()
            .map(|&(_, x)| a.label(x).to_string())
            .collect(),
        r,
        removed,
        r_error,
    };
    Ok(serde_json::to_string(&out).expect("serializes"))
}

/// Hasse diagram of the truncation at `depth`, in DOT.
pub fn truncation(ray_json: &str, depth: usize) -> Result<String, String> {
    if depth == 0 || depth > MAX_DEPTH {
        return Err(format!("depth must be between 1 and {MAX_DEPTH}"));
    }
    let p = RayPoset::from_json(ray_json).map_err(|e| e.to_string())?;
    Ok(p.truncate(depth).to_dot())
}

/// JSON of a worked example's object, for prefilling the inputs.
pub fn example_object(name: &str) -> Result<String, String> {
    let ex = catalog::example(name).map_err(|e| e.to_string())?;
    let v: serde_json::Value = serde_json::from_str(&ex.to_json()).expect("valid json");
    Ok(serde_json::to_string_pretty(&v["object"]).expect("serializes"))
}

#[wasm_bindgen(js_name = epGraph)]
pub fn ep_graph_js(poset_json: &str) -> Result<String, JsValue> {
    ep_graph(poset_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = rayReport)]
pub fn ray_report_js(ray_json: &str) -> Result<String, JsValue> {
    ray_report(ray_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = truncation)]
pub fn truncation_js(ray_json: &str, depth: usize) -> Result<String, JsValue> {
    truncation(ray_json, depth).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = exampleObject)]
pub fn example_object_js(name: &str) -> Result<String, JsValue> {
    example_object(name).map_err(|e| JsValue::from_str(&e))
}
