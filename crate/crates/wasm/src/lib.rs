//! Browser bindings. Each export takes and returns plain strings so the page
//! needs no glue beyond the generated loader.

use flatres::surfaces::render_svg;
use flatres::{build_witness, decide_realizable, enumerate_excluded_rays, ResidueTuple, StratumSignature, WitnessError};
use serde::Deserialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

const FORMAT_VERSION: u32 = 1;

#[derive(Deserialize)]
struct Request {
    #[serde(default)]
    format_version: Option<u32>,
    stratum: StratumSignature,
    residues: ResidueTuple,
}

fn parse(request: &str) -> Result<Request, String> {
    let req: Request = serde_json::from_str(request).map_err(|e| format!("request: {e}"))?;
    match req.format_version {
        None | Some(FORMAT_VERSION) => Ok(req),
        Some(v) => Err(format!("unsupported format_version {v}")),
    }
}

/// Verdict document for a request `{"stratum": .., "residues": ..}`.
pub fn decide_json(request: &str) -> Result<String, String> {
    let req = parse(request)?;
    let verdict = decide_realizable(&req.stratum, &req.residues).map_err(|e| e.to_string())?;
    let doc = json!({ "format_version": FORMAT_VERSION, "stratum": req.stratum, "residues": req.residues, "verdict": verdict });
    serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())
}

pub fn excluded_rays_json(s: usize, max_zero: u32) -> Result<String, String> {
    if !(2..=12).contains(&s) || max_zero == 0 || max_zero > 24 {
        return Err("need 2 <= s <= 12 and 1 <= max_zero <= 24".into());
    }
    let rays: Vec<Vec<i64>> = enumerate_excluded_rays(s, max_zero).into_iter().map(|r| r.integers).collect();
    let doc = json!({ "format_version": FORMAT_VERSION, "s": s, "max_zero": max_zero, "count": rays.len(), "rays": rays });
    serde_json::to_string(&doc).map_err(|e| e.to_string())
}

/// SVG drawing of a verified witness, or the reason none exists.
pub fn witness_svg_string(request: &str) -> Result<String, String> {
    let req = parse(request)?;
    match build_witness(&req.stratum, &req.residues) {
        Ok(cert) => Ok(render_svg(&cert)),
        Err(WitnessError::NotRealizable(reason)) => Err(format!("not realizable: {}", reason.as_str())),
        Err(e) => Err(e.to_string()),
    }
}

#[wasm_bindgen]
pub fn decide(request: &str) -> Result<String, JsValue> {
    decide_json(request).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn excluded_rays(s: usize, max_zero: u32) -> Result<String, JsValue> {
    excluded_rays_json(s, max_zero).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn witness_svg(request: &str) -> Result<String, JsValue> {
    witness_svg_string(request).map_err(|e| JsValue::from_str(&e))
}
