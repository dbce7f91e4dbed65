//! JSON entry points behind the browser demo in `www/`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use zerohecke::coinvariant::coinvariant_module;
use zerohecke::combinat::{descent_class, Composition};
use zerohecke::flagvar::{flag_characteristic, flag_composition_factors};
use zerohecke::qtarith::{ribbon_number_q, ribbon_number_t, QtContext};
use zerohecke::Limits;

const MAX_RIBBON_N: usize = 7;
const MAX_COINVARIANT_N: usize = 5;

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn check_n(n: usize, cap: usize) -> Result<(), String> {
    if n == 0 || n > cap {
        return Err(format!("n must be between 1 and {cap}"));
    }
    Ok(())
}

/// The descent class of `α` as a left weak order interval, with its ribbon numbers.
pub fn ribbon_explorer_json(alpha: &str, q: u64) -> Result<String, String> {
    let limits = Limits::default();
    let alpha = Composition::parse(alpha).map_err(err)?;
    check_n(alpha.size(), MAX_RIBBON_N)?;
    let class = descent_class(&alpha, &limits).map_err(err)?;
    let nodes: Vec<Value> = class
        .iter()
        .map(|w| json!({"word": w.images(), "inv": w.inv()}))
        .collect();
    let mut edges = Vec::new();
    for (a, w) in class.iter().enumerate() {
        for i in 1..alpha.size() {
            let v = w.left_mul_s(i);
            if v.inv() == w.inv() + 1 {
                if let Some(b) = class.iter().position(|u| *u == v) {
                    edges.push(json!({"from": a, "to": b, "i": i}));
                }
            }
        }
    }
    let ctx = QtContext::new(q).map_err(err)?;
    let out = json!({
        "alpha": alpha,
        "n": alpha.size(),
        "q": q,
        "nodes": nodes,
        "edges": edges,
        "r_alpha": class.len(),
        "r_alpha_q": ribbon_number_q(&alpha, &limits).map_err(err)?.to_string(),
        "r_alpha_t": ribbon_number_t(&alpha, &limits).map_err(err)?.to_string(),
        "r_alpha_qt": ctx.ribbon_number_qt(&alpha, &limits).map_err(err)?.to_string(),
    });
    Ok(out.to_string())
}

/// `Ch_{q,t}` of the coinvariant algebra with its block decomposition.
pub fn coinvariant_bigraded_json(n: usize) -> Result<String, String> {
    check_n(n, MAX_COINVARIANT_N)?;
    let m = coinvariant_module(n).map_err(err)?;
    let ch = m.bigraded_characteristic().map_err(err)?;
    let (reports, _) = m.decomposition(1).map_err(err)?;
    let terms: Vec<Value> = ch
        .terms()
        .map(|(a, c)| json!({"alpha": a.to_string(), "coeff": c.to_string()}))
        .collect();
    let out = json!({
        "n": n,
        "characteristic": ch.to_string(),
        "terms": terms,
        "blocks": reports,
    });
    Ok(out.to_string())
}

/// Composition factors of the flag module over `F_q`.
pub fn flag_factors_json(n: usize, q: u64) -> Result<String, String> {
    let limits = Limits::default();
    check_n(n, limits.max_n)?;
    let rows = flag_composition_factors(n, q, &limits).map_err(err)?;
    let ch = flag_characteristic(n, q, &limits).map_err(err)?;
    let out = json!({
        "n": n,
        "q": q,
        "rows": rows,
        "characteristic": ch.to_string(),
    });
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn ribbon_explorer(alpha: &str, q: u32) -> Result<String, JsValue> {
    ribbon_explorer_json(alpha, q as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn coinvariant_bigraded(n: u32) -> Result<String, JsValue> {
    coinvariant_bigraded_json(n as usize).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn flag_factors(n: u32, q: u32) -> Result<String, JsValue> {
    flag_factors_json(n as usize, q as u64).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ribbon_121() {
        let v: Value = serde_json::from_str(&ribbon_explorer_json("1,2,1", 2).unwrap()).unwrap();
        assert_eq!(v["r_alpha"], 5);
        assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
        // the interval [w_0, w_1] is connected
        assert!(v["edges"].as_array().unwrap().len() >= 4);
    }

    #[test]
    fn coinvariant_three() {
        let v: Value = serde_json::from_str(&coinvariant_bigraded_json(3).unwrap()).unwrap();
        assert_eq!(v["terms"].as_array().unwrap().len(), 4);
        assert_eq!(v["blocks"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn flags_two() {
        let v: Value = serde_json::from_str(&flag_factors_json(2, 2).unwrap()).unwrap();
        assert_eq!(v["rows"][1]["multiplicity"], 2);
    }

    #[test]
    fn rejects_large_input() {
        assert!(ribbon_explorer_json("4,4", 2).is_err());
        assert!(coinvariant_bigraded_json(6).is_err());
    }
}
