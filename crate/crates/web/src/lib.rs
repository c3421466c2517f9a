//! Browser bindings. Every export takes the text of an algebra definition
//! and returns a JSON string; errors surface as JavaScript exceptions.

use wasm_bindgen::prelude::*;

pub mod api;

fn to_js(r: Result<serde_json::Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = builtinIds)]
pub fn builtin_ids() -> String {
    api::builtin_ids().to_string()
}

#[wasm_bindgen(js_name = builtinSource)]
pub fn builtin_source(id: &str) -> Result<String, JsError> {
    api::builtin_source(id).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ricci(source: &str, sample: &str) -> Result<String, JsError> {
    to_js(api::ricci(source, sample))
}

#[wasm_bindgen]
pub fn system(source: &str) -> Result<String, JsError> {
    to_js(api::system(source))
}

#[wasm_bindgen]
pub fn check(source: &str, sample: &str) -> Result<String, JsError> {
    to_js(api::check(source, sample))
}
