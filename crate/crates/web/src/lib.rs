//! WebAssembly bindings behind `www/index.html`.
//!
//! Each exported function has a plain Rust twin returning
//! `Result<String, String>` so it can be tested off the browser.

use timevalue::curves::Figure;
use timevalue::stream_io::{parse_stream, StreamFormat};
use timevalue::{irr, limit_probe, pv_of_stream, Bracket, Error, Rate, ValuationResult};
use wasm_bindgen::prelude::*;

fn text(e: Error) -> String {
    e.to_string()
}

/// Title and default parameters of a figure as JSON.
pub fn figure_info(id: u8) -> Result<String, String> {
    let fig = Figure::from_id(id).map_err(text)?;
    let grid = fig.default_grid();
    Ok(serde_json::json!({
        "id": fig.id(),
        "title": fig.title(),
        "start": grid.start,
        "end": grid.end,
        "steps": grid.steps,
        "params": fig.default_params(),
    })
    .to_string())
}

/// Figure table as CSV. `params` is `name=value` pairs separated by commas.
pub fn figure_csv(id: u8, params: &str) -> Result<String, String> {
    let overrides = params
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (name, value) = p
                .split_once('=')
                .ok_or_else(|| format!("expected name=value, got `{p}`"))?;
            let value = value
                .trim()
                .parse::<f64>()
                .map_err(|_| format!("`{value}` is not a number"))?;
            Ok((name.trim().to_owned(), value))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let fig = Figure::from_id(id).map_err(text)?;
    Ok(fig.table(None, &overrides).map_err(text)?.to_csv())
}

/// Verdict of a divergence probe as JSON.
pub fn probe(base: f64, k: f64, threshold: f64, n_max: u32) -> Result<String, String> {
    let rate = Rate::knowledge(k).map_err(text)?;
    let out = match limit_probe(base, rate, threshold, u64::from(n_max)) {
        Ok(ValuationResult::Divergent(c)) => serde_json::json!({
            "verdict": "divergent",
            "crossing": c.crossing_period(),
            "value": c.value_at(c.crossing_period()),
        }),
        Ok(ValuationResult::Finite(v)) => serde_json::json!({ "verdict": "finite", "value": v }),
        Err(Error::Inconclusive { value_at_n_max }) => {
            serde_json::json!({ "verdict": "inconclusive", "value": value_at_n_max })
        }
        Err(e) => return Err(e.to_string()),
    };
    Ok(out.to_string())
}

/// NPV at `rate` and IRR over the default bracket for a CSV or JSON stream.
/// The IRR entry is null with an explanation when no root is found.
pub fn analyze_stream(source: &str, rate: f64) -> Result<String, String> {
    let format = if source.trim_start().starts_with('[') {
        StreamFormat::Json
    } else {
        StreamFormat::Csv
    };
    let stream = parse_stream(source, format).map_err(text)?;
    let npv = pv_of_stream(&stream, Rate::interest(rate).map_err(text)?);
    let (irr_value, irr_note) = match irr(&stream, Bracket::default(), 1e-12) {
        Ok(r) => (Some(r.value()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(serde_json::json!({
        "flows": stream.len(),
        "npv": npv,
        "irr": irr_value,
        "irr_note": irr_note,
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = figureInfo)]
pub fn figure_info_js(id: u8) -> Result<String, JsError> {
    js(figure_info(id))
}

#[wasm_bindgen(js_name = figureCsv)]
pub fn figure_csv_js(id: u8, params: &str) -> Result<String, JsError> {
    js(figure_csv(id, params))
}

#[wasm_bindgen(js_name = probe)]
pub fn probe_js(base: f64, k: f64, threshold: f64, n_max: u32) -> Result<String, JsError> {
    js(probe(base, k, threshold, n_max))
}

#[wasm_bindgen(js_name = analyzeStream)]
pub fn analyze_stream_js(source: &str, rate: f64) -> Result<String, JsError> {
    js(analyze_stream(source, rate))
}
