//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string; errors surface as JS exceptions.

use polar_mwd::{
    analysis::{aub_curve, db_grid},
    construct_ga, construct_pw, min_weight_lower_bound, pc_scem, screm, CodeSpec, ConcatSpec,
    CrcPolynomial, Mapping, Mode,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `log2 N` the page will search; keeps a tab responsive.
pub const MAX_LOG_LEN: u32 = 10;

fn build(n: u32, k: usize, construction: &str, design_snr_db: f64) -> Result<CodeSpec, String> {
    if !(1..=MAX_LOG_LEN).contains(&n) {
        return Err(format!("n must be in 1..={MAX_LOG_LEN}"));
    }
    let spec = match construction {
        "pw" => construct_pw(n, k),
        "ga" => construct_ga(n, k, design_snr_db, k as f64 / (1usize << n) as f64),
        other => return Err(format!("unknown construction {other:?}")),
    };
    spec.map_err(|e| e.to_string())
}

pub fn mwd_json(n: u32, k: usize, construction: &str, design_snr_db: f64) -> Result<Value, String> {
    let spec = build(n, k, construction, design_snr_db)?;
    let bound = min_weight_lower_bound(&spec).map_err(|e| e.to_string())?;
    let r = screm(&spec, bound, Mode::Collect).map_err(|e| e.to_string())?;
    let words: Vec<String> = r
        .codewords
        .unwrap_or_default()
        .iter()
        .take(64)
        .map(|c| c.to_hex())
        .collect();
    Ok(json!({
        "N": spec.len(),
        "K": spec.dimension(),
        "info_set_A": spec.info_set_a(),
        "d_min": r.d_min,
        "a_dmin": r.a_dmin,
        "avn": r.avn,
        "flags": r.flags,
        "codewords": words,
    }))
}

pub fn concat_json(n: u32, k_i: usize, crc_hex: &str) -> Result<Value, String> {
    let crc: CrcPolynomial = crc_hex
        .trim()
        .parse()
        .map_err(|e: polar_mwd::Error| e.to_string())?;
    let inner = build(n, k_i + crc.degree() as usize, "pw", 0.0)?;
    let concat = ConcatSpec::new(inner, crc, Mapping::Ascending).map_err(|e| e.to_string())?;
    let r = pc_scem(&concat, Mode::Count).map_err(|e| e.to_string())?;
    Ok(json!({
        "N": concat.inner().len(),
        "K_I": k_i,
        "crc_hex": crc.to_hex(),
        "d_min": r.d_min,
        "a_dmin": r.a_dmin,
        "avn": r.avn,
        "flags": r.flags,
    }))
}

pub fn bound_json(
    d_min: u32,
    a_dmin: u64,
    rate: f64,
    from_db: f64,
    to_db: f64,
    step_db: f64,
) -> Result<Value, String> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err("rate must be in (0, 1]".into());
    }
    let grid = db_grid(from_db, to_db, step_db).map_err(|e| e.to_string())?;
    let points: Vec<[f64; 2]> = aub_curve(d_min, a_dmin, rate, &grid)
        .into_iter()
        .map(|p| [p.eb_n0_db, p.value])
        .collect();
    Ok(json!(points))
}

fn to_js(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

/// Constructs a polar code and enumerates its minimum-weight shell.
#[wasm_bindgen]
pub fn mwd(n: u32, k: usize, construction: &str, design_snr_db: f64) -> Result<String, JsError> {
    to_js(mwd_json(n, k, construction, design_snr_db))
}

/// Minimum-weight shell of a CRC-polar code on a PW inner code.
#[wasm_bindgen]
pub fn concat(n: u32, k_i: usize, crc_hex: &str) -> Result<String, JsError> {
    to_js(concat_json(n, k_i, crc_hex))
}

/// `[[eb_n0_db, value], ...]` of the minimum-weight union bound.
#[wasm_bindgen]
pub fn bound(
    d_min: u32,
    a_dmin: f64,
    rate: f64,
    from_db: f64,
    to_db: f64,
    step_db: f64,
) -> Result<String, JsError> {
    to_js(bound_json(
        d_min,
        a_dmin as u64,
        rate,
        from_db,
        to_db,
        step_db,
    ))
}
