//! Browser bindings. Every entry point takes text and returns a JSON string, either
//! the result or `{"error": "..."}`, so the page never has to handle exceptions.

use normalhst::curves::{check_348, decompose_pattern, CurvePattern};
use normalhst::hst::{splitting_complexity, underlying_splitting, AbstractSplitting};
use normalhst::thin::{induced_splitting, legal_exchanges, width, MorsePresentation};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn reply(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Width profile of a Morse presentation, its induced splitting and every legal exchange.
#[wasm_bindgen]
pub fn width_profile(presentation: &str) -> String {
    reply((|| {
        let p = MorsePresentation::parse(presentation).map_err(|e| e.to_string())?;
        let profile = width(&p).map_err(|e| e.to_string())?;
        let splitting = induced_splitting(&p).ok();
        let exchanges: Vec<Value> = legal_exchanges(&p)
            .into_iter()
            .map(|(birth, x)| {
                json!({
                    "birth": birth,
                    "result": x.presentation.to_text(),
                    "width_before": x.width_before,
                    "width_after": x.width_after,
                })
            })
            .collect();
        Ok(json!({ "profile": profile, "splitting": splitting, "exchanges": exchanges }))
    })())
}

/// Loop decomposition and octagon check of twelve arc counts, face by face.
#[wasm_bindgen]
pub fn curve_decompose(counts: &str) -> String {
    reply((|| {
        let values: Vec<u64> = counts
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u64>().map_err(|_| format!("not a count: {s}")))
            .collect::<Result<_, _>>()?;
        let flat: [u64; 12] =
            values.try_into().map_err(|v: Vec<u64>| format!("expected 12 counts, got {}", v.len()))?;
        let pattern = CurvePattern::from_flat(flat);
        let decomposition = decompose_pattern(&pattern).map_err(|e| e.to_string())?;
        let check = check_348(&pattern).map_err(|e| e.to_string())?;
        Ok(json!({ "decomposition": decomposition, "check_348": check }))
    })())
}

/// Complexity and underlying splitting of an abstract splitting given as JSON.
#[wasm_bindgen]
pub fn splitting_summary(splitting: &str, relative: bool) -> String {
    reply((|| {
        let s = AbstractSplitting::from_json(splitting).map_err(|e| e.to_string())?;
        let complexity = splitting_complexity(&s, relative);
        let underlying = underlying_splitting(&s);
        Ok(json!({
            "complexity": complexity.to_string(),
            "entries": complexity.0,
            "underlying": underlying.splitting,
            "degenerate": underlying.degenerate,
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn width_of_two_bridges() {
        let v = parse(&width_profile("B 0\nB 0\nD 0\nD 0"));
        assert_eq!(v["profile"]["width"], 8);
        assert_eq!(v["exchanges"].as_array().unwrap().len(), 0);
        let v = parse(&width_profile("B 0\nB 2\nD 0\nD 0"));
        assert_eq!(v["exchanges"][0]["width_after"].as_u64().unwrap() + 4, v["profile"]["width"].as_u64().unwrap());
    }

    #[test]
    fn octagon_pattern() {
        let v = parse(&curve_decompose("0 1 1 0 1 1 1 1 0 1 1 0"));
        assert_eq!(v["decomposition"]["lengths"], json!([8]));
        assert_eq!(v["check_348"]["pass"], true);
        assert!(parse(&curve_decompose("1 2 3")).get("error").is_some());
    }

    #[test]
    fn genus_two_complexity() {
        let v = parse(&splitting_summary("[[],[[-2,0]],[]]", false));
        assert_eq!(v["complexity"], "(16)");
        assert!(parse(&splitting_summary("[[", false)).get("error").is_some());
    }
}
