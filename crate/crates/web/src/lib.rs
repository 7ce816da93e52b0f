//! Browser bindings for three operations: evaluating formulas in a sphere
//! model, checking a V-algebra, and searching for a countermodel.
//!
//! Each operation has a plain Rust function returning a JSON string, which
//! the `#[wasm_bindgen]` wrappers expose to JavaScript. Errors come back as
//! `{"error": "..."}` so the page needs a single code path.

use lewis_core::algebra::{VAlgebra, Variety};
use lewis_core::proofs::Calculus;
use lewis_core::spheres::{countermodel, SearchConfig, SearchOutcome, SphereModel};
use lewis_core::syntax::UReading;
use lewis_core::{parse, Formula};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest model size the page may ask the countermodel search for.
pub const MAX_SEARCH_WORLDS: usize = 4;

fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty())
}

fn formulas(text: &str) -> Result<Vec<Formula>, String> {
    lines(text)
        .map(|l| parse(l).map_err(|e| format!("cannot parse `{l}`: {e}")))
        .collect()
}

fn render(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Evaluates each line of `formulas` in the model and lists the worlds
/// where it holds.
pub fn evaluate(model: &str, formulas_text: &str) -> Result<Value, String> {
    let m = SphereModel::from_json(model).map_err(|e| e.to_string())?;
    let fs = formulas(formulas_text)?;
    if fs.is_empty() {
        return Err("no formula given".into());
    }
    let rows: Vec<Value> = fs
        .iter()
        .map(|f| {
            let v = m.eval(f);
            let worlds: Vec<&str> = (0..m.len())
                .filter(|&w| v >> w & 1 == 1)
                .map(|w| m.worlds()[w].as_str())
                .collect();
            json!({ "formula": f.to_string(), "worlds": worlds, "valid": v == m.universe() })
        })
        .collect();
    Ok(json!({ "rows": rows }))
}

/// Checks C1-C4 and membership in each whitespace-separated variety.
pub fn check_algebra(algebra: &str, varieties: &str) -> Result<Value, String> {
    let a = VAlgebra::from_json(algebra).map_err(|e| e.to_string())?;
    let vs = varieties
        .split_whitespace()
        .map(|v| v.parse::<Variety>())
        .collect::<Result<Vec<_>, _>>()?;
    let axioms = a.check_axioms();
    let members: Vec<Value> = vs
        .iter()
        .map(|v| {
            let failure = match &axioms {
                Err(_) => Some("not a V-algebra".to_string()),
                Ok(()) => a.check_variety(v.exts, UReading::default()).err().map(|e| {
                    let h: Vec<String> = e
                        .assignment
                        .iter()
                        .map(|(k, &m)| format!("{k}={}", a.show(m)))
                        .collect();
                    format!("axiom {} fails at {}", e.ext.letter(), h.join(", "))
                }),
            };
            json!({ "variety": v.name, "member": failure.is_none(), "failure": failure })
        })
        .collect();
    let boxes: Vec<Value> = a.elements().map(|x| json!([a.show(x), a.show(a.boxed(x))])).collect();
    Ok(json!({
        "table": a.to_string(),
        "axioms": axioms.err().map(|e| e.to_string()),
        "varieties": members,
        "box": boxes,
    }))
}

/// Searches for the least countermodel to `premises ⊨ formula` in the
/// given calculus (`GV`/`LV` plus extension letters).
pub fn find_countermodel(premises: &str, formula: &str, logic: &str, max_worlds: usize) -> Result<Value, String> {
    let c: Calculus = logic.trim().parse()?;
    if !(1..=MAX_SEARCH_WORLDS).contains(&max_worlds) {
        return Err(format!("worlds must be between 1 and {MAX_SEARCH_WORLDS}"));
    }
    let gamma = formulas(premises)?;
    let phi = parse(formula.trim()).map_err(|e| format!("cannot parse `{}`: {e}", formula.trim()))?;
    Ok(
        match countermodel(&gamma, &phi, &SearchConfig::new(c.mode(), c.exts, max_worlds)) {
            SearchOutcome::Found { model, world } => json!({
                "found": true,
                "world": world.map(|w| model.worlds()[w].clone()),
                "text": model.to_string(),
            }),
            SearchOutcome::NotFound { exhaustive_up_to, .. } => json!({
                "found": false,
                "max_worlds": max_worlds,
                "exhaustive_up_to": exhaustive_up_to,
            }),
        },
    )
}

#[wasm_bindgen(js_name = evaluate)]
pub fn evaluate_js(model: &str, formulas: &str) -> String {
    render(evaluate(model, formulas))
}

#[wasm_bindgen(js_name = checkAlgebra)]
pub fn check_algebra_js(algebra: &str, varieties: &str) -> String {
    render(check_algebra(algebra, varieties))
}

#[wasm_bindgen(js_name = findCountermodel)]
pub fn find_countermodel_js(premises: &str, formula: &str, logic: &str, max_worlds: usize) -> String {
    render(find_countermodel(premises, formula, logic, max_worlds))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_WORLD: &str = include_str!("../../core/fixtures/two_world.json");
    const B: &str = include_str!("../../core/fixtures/B.json");

    #[test]
    fn evaluates_each_line() {
        let out = evaluate(TWO_WORLD, "p\n\n~p |> p\n").unwrap();
        let rows = out["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0]["worlds"], json!(["w1"]));
        assert_eq!(rows[0]["valid"], json!(false));
    }

    #[test]
    fn algebra_b_is_weakly_centered_but_not_centered() {
        let out = check_algebra(B, "VW VC").unwrap();
        assert_eq!(out["axioms"], Value::Null);
        assert_eq!(out["varieties"][0]["member"], json!(true));
        assert_eq!(out["varieties"][1]["member"], json!(false));
        assert_eq!(out["box"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn countermodel_for_rule_c_under_local_consequence() {
        let out = find_countermodel("p -> q", "(r |> p) -> (r |> q)", "LV", 3).unwrap();
        assert_eq!(out["found"], json!(true));
        let out = find_countermodel("p -> q", "(r |> p) -> (r |> q)", "GV", 2).unwrap();
        assert_eq!(out["found"], json!(false));
    }

    #[test]
    fn errors_are_reported_as_json() {
        let v: Value = serde_json::from_str(&evaluate_js(TWO_WORLD, "p &")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("cannot parse"));
        let v: Value = serde_json::from_str(&check_algebra_js(B, "XYZ")).unwrap();
        assert!(v["error"].is_string());
        assert!(find_countermodel("", "p", "LV", 9).is_err());
    }
}
