//! JSON-returning entry points behind the browser demo in `www/`.
//!
//! Every export takes the text as a JS string and encodes it as UTF-8, so
//! positions are byte positions.

use mcs_core::borders::{border_array, oc_array, p_array};
use mcs_core::extremal::{bound_report, Source};
use mcs_core::mcs::mcs_fast;
use mcs_core::oracle::mcs_oracle;
use mcs_core::Text;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Longest text the demo sends to the quadratic oracle.
pub const ORACLE_LIMIT: usize = 5_000;
/// Longest length the bound chart goes up to.
pub const SERIES_LIMIT: usize = 20_000;

fn text_of(s: &str) -> Result<Text, String> {
    if s.is_empty() {
        return Err("enter a nonempty text".into());
    }
    Ok(Text::from(s))
}

/// `{"b": [...], "p": [...], "oc": [...]}`.
pub fn arrays_json(s: &str) -> Result<String, String> {
    let t = text_of(s)?;
    let b = border_array(&t);
    let p = p_array(&b);
    let oc = oc_array(&t).map_err(|e| e.to_string())?;
    Ok(json!({
        "b": b.as_slice(),
        "p": p.as_slice(),
        "oc": oc.to_digits(),
        "one_runs": oc.one_runs(),
    })
    .to_string())
}

/// `{"spans": [[start, end], ...], "checked": bool}`, 1-based inclusive.
/// Short texts are also run through the oracle and `checked` is set.
pub fn spans_json(s: &str) -> Result<String, String> {
    let t = text_of(s)?;
    let spans = mcs_fast(&t).map_err(|e| e.to_string())?;
    let checked = t.len() <= ORACLE_LIMIT;
    if checked && mcs_oracle(&t).map_err(|e| e.to_string())? != spans {
        return Err("fast and oracle enumerations disagree".into());
    }
    let pairs: Vec<[usize; 2]> = spans.iter().map(|s| [s.start, s.end]).collect();
    Ok(json!({ "spans": pairs, "checked": checked }).to_string())
}

/// Bound report rows for `steps` lengths spread evenly up to `max_len`, on
/// the extremal string (`source == "extremal"`) or seeded random binary text.
pub fn series_json(source: &str, max_len: usize, steps: usize, seed: u64) -> Result<String, String> {
    if max_len == 0 || max_len > SERIES_LIMIT {
        return Err(format!("length must be between 1 and {SERIES_LIMIT}"));
    }
    let source = match source {
        "extremal" => Source::Extremal,
        "random" => Source::Random { seed, sigma: 2 },
        other => return Err(format!("unknown source {other:?}")),
    };
    let steps = steps.clamp(1, max_len);
    let lengths: Vec<usize> = (1..=steps).map(|k| (k * max_len).div_ceil(steps)).collect();
    let report = bound_report(&lengths, source).map_err(|e| e.to_string())?;
    let rows: Vec<_> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "mcs_count": r.mcs_count,
                "oc_one_runs": r.oc_one_runs,
                "suffix_run_total": r.suffix_run_total,
                "bound_sqrt": r.bound_sqrt,
                "bound_mcs": r.bound_mcs,
            })
        })
        .collect();
    Ok(json!({ "rows": rows, "all_hold": report.all_hold() }).to_string())
}

#[wasm_bindgen]
pub fn arrays(text: &str) -> Result<String, JsError> {
    arrays_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn spans(text: &str) -> Result<String, JsError> {
    spans_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn series(source: &str, max_len: usize, steps: usize, seed: u64) -> Result<String, JsError> {
    series_json(source, max_len, steps, seed).map_err(|e| JsError::new(&e))
}
