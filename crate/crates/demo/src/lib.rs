//! Browser bindings for three idealval operations.
//!
//! Build with `wasm-pack build --target web crates/demo` and serve
//! `crates/demo/www` next to the generated `pkg/` directory.

use std::sync::Arc;

use idealval::conversion::{fv_chain, gv_eval};
use idealval::gallery::{lebesgue_staircase, nu_s};
use idealval::oracle::cantor::{BitString, CantorCoin};
use idealval::oracle::line::{encode_interval, LineRelation};
use idealval::oracle::CodeEnumeration;
use idealval::rational::{format_rational, int, parse_rational};
use idealval::relation::sierpinski;
use idealval::simple::{prec_v, DEFAULT_GUARD};
use idealval::text::{parse_plain_code, parse_simple_valuation};
use idealval::Rational;
use num_traits::ToPrimitive;
use wasm_bindgen::prelude::*;

fn js(e: impl ToString) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Decides `r ≺_V s` on the Sierpinski space. Each side is `code p/q` lines,
/// with `;` allowed as a line break.
pub fn sierpinski_prec(r: &str, s: &str) -> Result<bool, String> {
    let parse = |t: &str| parse_simple_valuation(&t.replace(';', "\n"), &parse_plain_code).map_err(|e| e.to_string());
    let (r, s) = (parse(r)?, parse(s)?);
    prec_v(&sierpinski(), &r, &s, DEFAULT_GUARD).map_err(|e| e.to_string())
}

/// The first `steps` lower bounds of a named stream:
/// `sierpinski-top` is g_V∘f_V of ½δ_⊤ + ½δ_⊥ on the open {⊤},
/// `lebesgue-unit` is the dyadic staircase on (0, 1).
pub fn convergence(stream: &str, steps: usize) -> Result<Vec<f64>, String> {
    let values = match stream {
        "sierpinski-top" => {
            let rel = Arc::new(sierpinski());
            let chain = fv_chain(rel.clone(), Arc::new(nu_s()), DEFAULT_GUARD).map_err(|e| e.to_string())?;
            gv_eval(rel, chain, CodeEnumeration::Finite(vec![1])).prefix(steps)
        }
        "lebesgue-unit" => {
            let unit = encode_interval(&int(0), &int(1)).map_err(|e| e.to_string())?;
            gv_eval(Arc::new(LineRelation), lebesgue_staircase(), CodeEnumeration::Finite(vec![unit])).prefix(steps)
        }
        other => return Err(format!("unknown stream {other:?}")),
    };
    Ok(values.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect())
}

/// Mass of a union of cylinders under the coin with `P(0) = bias`.
pub fn cantor_mass(bias: &str, strings: &str) -> Result<String, String> {
    let bias: Rational = parse_rational(bias).ok_or_else(|| format!("bad bias {bias:?}"))?;
    let coin = CantorCoin::new(bias).map_err(|e| e.to_string())?;
    let cover = strings
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| if t == "ε" { Ok(BitString::EMPTY) } else { t.parse::<BitString>().map_err(|e| e.to_string()) })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format_rational(&coin.cover(cover)))
}

#[wasm_bindgen(js_name = sierpinskiPrec)]
pub fn sierpinski_prec_js(r: &str, s: &str) -> Result<bool, JsValue> {
    sierpinski_prec(r, s).map_err(js)
}

#[wasm_bindgen(js_name = convergence)]
pub fn convergence_js(stream: &str, steps: usize) -> Result<Vec<f64>, JsValue> {
    convergence(stream, steps).map_err(js)
}

#[wasm_bindgen(js_name = cantorMass)]
pub fn cantor_mass_js(bias: &str, strings: &str) -> Result<String, JsValue> {
    cantor_mass(bias, strings).map_err(js)
}
