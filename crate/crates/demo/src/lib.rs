//! Browser front end: three calls from the page, each taking the spec as JSON
//! text and returning a JSON report (or throwing the error message).
//!
//! The plain functions are what the native tests exercise; the `#[wasm_bindgen]`
//! shims only translate the error type.

use color_euler::cec::variant_series;
use color_euler::characteristic::{abel_exact_with_module, abel_numeric_complex, Variant};
use color_euler::io::{self, SpecFile};
use color_euler::numeric::AbelSchedule;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Tables past this order stop being readable in a page.
pub const MAX_TABLE_ORDER: usize = 64;

fn parse(spec: &str, variant: &str) -> Result<(color_euler::cec::AlgebraSpec, Variant), String> {
    let spec = SpecFile::from_json(spec).and_then(|f| f.to_spec()).map_err(|e| e.to_string())?;
    let variant = variant.parse().map_err(|e: color_euler::Error| e.to_string())?;
    Ok((spec, variant))
}

/// Coefficients of the cochain series, one row per degree, with rationals as strings.
pub fn series_table(spec: &str, variant: &str, order: usize) -> Result<Value, String> {
    let (spec, v) = parse(spec, variant)?;
    let order = order.min(MAX_TABLE_ORDER);
    let s = variant_series(&spec, v, order);
    let elements: Vec<String> = s.group().elements().map(|a| a.to_string()).collect();
    let rows: Vec<Value> = s
        .coeffs()
        .iter()
        .map(|c| Value::Array(s.group().elements().map(|a| json!(c.coeff(&a).to_string())).collect()))
        .collect();
    Ok(json!({ "variant": v.name(), "order": order, "elements": elements, "rows": rows }))
}

/// Exact characteristic or divergence witnesses.
pub fn characteristic(spec: &str, variant: &str) -> Result<Value, String> {
    let (spec, v) = parse(spec, variant)?;
    Ok(io::char_result(&abel_exact_with_module(&spec, v)))
}

/// `f(-1 + δ)` per component along the dyadic schedule, plus the numeric verdict.
pub fn abel_curve(spec: &str, variant: &str) -> Result<Value, String> {
    let (spec, v) = parse(spec, variant)?;
    let report = abel_numeric_complex(&spec, v, &AbelSchedule::dyadic(2, 12));
    let curves: serde_json::Map<String, Value> =
        report.values.iter().map(|(a, vals)| (a.to_string(), json!(vals))).collect();
    Ok(json!({
        "offsets_numeric": report.offsets,
        "values_numeric": curves,
        "verdict": io::numeric_report(&report)["verdict"].clone(),
    }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = seriesTable)]
pub fn series_table_js(spec: &str, variant: &str, order: usize) -> Result<String, JsValue> {
    to_js(series_table(spec, variant, order))
}

#[wasm_bindgen(js_name = characteristic)]
pub fn characteristic_js(spec: &str, variant: &str) -> Result<String, JsValue> {
    to_js(characteristic(spec, variant))
}

#[wasm_bindgen(js_name = abelCurve)]
pub fn abel_curve_js(spec: &str, variant: &str) -> Result<String, JsValue> {
    to_js(abel_curve(spec, variant))
}
