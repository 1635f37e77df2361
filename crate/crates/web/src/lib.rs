//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes XNF text and returns a JSON string; errors surface as
//! JavaScript exceptions carrying the message. The `*_json` functions hold
//! the logic so it can be tested natively.

use std::ops::ControlFlow;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use xorsig::flashlight::{enumerate_all, FlashlightOptions};
use xorsig::formula::{emit_xnf, parse_xnf, Signature, XorCnf};
use xorsig::maxgen::{self, MaxEngine, MaxSigRecord};
use xorsig::{gen, gf2, rb2xor};

fn load(xnf: &str) -> Result<XorCnf, String> {
    parse_xnf(xnf).map_err(|e| format!("parse error: {e}"))
}

/// All signatures, at most `limit` of them, in flashlight order.
pub fn all_json(xnf: &str, limit: usize) -> Result<Value, String> {
    let phi = load(xnf)?;
    let mut rows = Vec::new();
    let mut truncated = false;
    enumerate_all(&phi, FlashlightOptions { witness: true }, |s, w| {
        if rows.len() == limit {
            truncated = true;
            return ControlFlow::Break(());
        }
        rows.push(json!({ "signature": s.to_string(), "witness": w.map(ToString::to_string) }));
        ControlFlow::Continue(())
    });
    Ok(json!({ "rows": rows, "truncated": truncated }))
}

/// Maximal (`kind = "max"`) or minimal (`"min"`) signatures with witnesses.
/// `engine` is `exact`, `supergraph` or `proximity`.
pub fn extreme_json(xnf: &str, kind: &str, engine: &str, limit: usize) -> Result<Value, String> {
    let phi = load(xnf)?;
    let minimal = match kind {
        "max" => false,
        "min" => true,
        other => return Err(format!("unknown kind {other:?}")),
    };
    let mut rows = Vec::new();
    let mut truncated = false;
    let mut sink = |r: &MaxSigRecord| {
        if rows.len() == limit {
            truncated = true;
            return ControlFlow::Break(());
        }
        rows.push(json!({ "signature": r.signature.to_string(), "witness": r.witness.to_string() }));
        ControlFlow::Continue(())
    };
    match engine {
        "exact" | "supergraph" => {
            let engine = engine.parse::<MaxEngine>().map_err(|e| e.to_string())?;
            let run = if minimal {
                maxgen::enumerate_min(&phi, engine, &mut sink)
            } else {
                maxgen::enumerate_max(&phi, engine, &mut sink)
            };
            run.map_err(|e| e.to_string())?;
        }
        "proximity" => {
            let run = if minimal {
                rb2xor::enumerate_min_2xor(&phi, &mut sink)
            } else {
                rb2xor::enumerate_max_2xor(&phi, &mut sink)
            };
            run.map_err(|e| e.to_string())?;
        }
        other => return Err(format!("unknown engine {other:?}")),
    }
    Ok(json!({ "rows": rows, "truncated": truncated }))
}

/// Membership, maximality and minimality of a candidate bit string.
pub fn check_json(xnf: &str, sig: &str) -> Result<Value, String> {
    let phi = load(xnf)?;
    let sigma: Signature = sig.trim().parse().map_err(|e| format!("{e}"))?;
    if sigma.len() != phi.num_clauses() {
        return Err(format!("expected {} bits, got {}", phi.num_clauses(), sigma.len()));
    }
    let v = |r: Result<bool, _>| r.map_err(|e: xorsig::formula::FormulaError| e.to_string());
    Ok(json!({
        "signature": v(maxgen::is_signature(&phi, &sigma))?,
        "maximal": v(maxgen::is_maximal(&phi, &sigma))?,
        "minimal": v(maxgen::is_minimal(&phi, &sigma))?,
    }))
}

/// Size figures shown next to the editor.
pub fn stats_json(xnf: &str) -> Result<Value, String> {
    let phi = load(xnf)?;
    Ok(json!({
        "n": phi.num_vars(),
        "m": phi.num_clauses(),
        "rank": gf2::rank(&phi),
        "components": phi.component_count(),
        "max_width": phi.max_width(),
    }))
}

/// A seeded random formula in XNF; `two_xor` restricts widths to 1 and 2.
pub fn random_xnf(seed: u64, n: usize, m: usize, two_xor: bool) -> String {
    let mut rng = gen::rng(seed);
    let n = n.clamp(1, 24);
    let phi = if two_xor && n >= 2 {
        let shape = gen::TwoXorShape { n, m, groups: if n >= 4 { 2 } else { 1 }, unit_prob: 0.15, parallel_prob: 0.2 };
        gen::random_2xor(&mut rng, shape)
    } else {
        gen::random_xor_cnf(&mut rng, n, m, 4)
    };
    emit_xnf(&phi)
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = allSignatures)]
pub fn all_signatures(xnf: &str, limit: usize) -> Result<String, JsError> {
    to_js(all_json(xnf, limit))
}

#[wasm_bindgen(js_name = extremeSignatures)]
pub fn extreme_signatures(xnf: &str, kind: &str, engine: &str, limit: usize) -> Result<String, JsError> {
    to_js(extreme_json(xnf, kind, engine, limit))
}

#[wasm_bindgen(js_name = checkSignature)]
pub fn check_signature(xnf: &str, sig: &str) -> Result<String, JsError> {
    to_js(check_json(xnf, sig))
}

#[wasm_bindgen(js_name = formulaStats)]
pub fn formula_stats(xnf: &str) -> Result<String, JsError> {
    to_js(stats_json(xnf))
}

#[wasm_bindgen(js_name = randomFormula)]
pub fn random_formula(seed: u32, n: usize, m: usize, two_xor: bool) -> String {
    random_xnf(u64::from(seed), n, m, two_xor)
}
