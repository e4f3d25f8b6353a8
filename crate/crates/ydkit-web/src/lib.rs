//! Browser bindings: classify a tuple, build its module, and compute graded dimensions.
//! Parameters arrive as JSON with scalar literals, e.g.
//! `{"n":2,"w":2,"gamma":"-1","alpha":"-1","beta":"-1","r":1,"i":0}`.

use std::time::Duration;

use num_integer::Integer;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use ydkit::hopf::Liu;
use ydkit::nichols::companion_space;
use ydkit::{braiding_from_yd, classify, construct, graded_dims, verify_all, Budget, Literal, ModuleParams};

/// Highest degree the page may request.
pub const MAX_DEGREE: usize = 8;

fn parse_params(text: &str) -> Result<ModuleParams, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("malformed JSON: {e}"))?;
    let int = |k: &str| v.get(k).and_then(Value::as_i64).ok_or_else(|| format!("missing integer {k:?}"));
    let lit = |k: &str| -> Result<Literal, String> {
        let s = match v.get(k) {
            Some(Value::String(s)) => s.clone(),
            Some(Value::Number(n)) => n.to_string(),
            _ => return Err(format!("missing literal {k:?}")),
        };
        Literal::parse(&s).map_err(|e| e.to_string())
    };
    let n = u32::try_from(int("n")?).map_err(|_| "n out of range".to_string())?;
    let w = u32::try_from(int("w")?).map_err(|_| "w out of range".to_string())?;
    let (gamma, alpha, beta) = (lit("gamma")?, lit("alpha")?, lit("beta")?);
    let conductor = [n, gamma.root_order, alpha.root_order, beta.root_order].iter().fold(2u32, |c, m| c.lcm(m.max(&1)));
    let scalar = |l: &Literal| l.to_scalar(conductor).map_err(|e| e.to_string());
    let liu = Liu::new(n, w, scalar(&gamma)?).map_err(|e| e.to_string())?;
    ModuleParams::new(liu, scalar(&alpha)?, scalar(&beta)?, int("r")?, int("i")?).map_err(|e| e.to_string())
}

pub fn classify_value(params: &str) -> Result<Value, String> {
    let p = parse_params(params)?;
    Ok(classify(&p).map_err(|e| e.to_string())?.to_json())
}

pub fn construct_value(params: &str) -> Result<Value, String> {
    let p = parse_params(params)?;
    let v = construct(&p).map_err(|e| e.to_string())?;
    let report = verify_all(&v, &p).map_err(|e| e.to_string())?;
    let coaction: Vec<Vec<String>> =
        v.coaction.iter().map(|row| row.iter().map(|(h, l)| format!("({h}) ⊗ v{l}")).collect()).collect();
    Ok(json!({
        "dim": v.dim,
        "x_action": v.x_action.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "g_action": v.g_action.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "coaction": coaction,
        "verified": report.passed(),
        "failures": report.failures,
    }))
}

pub fn hilbert_value(params: &str, degree: usize, companion: bool) -> Result<Value, String> {
    let p = parse_params(params)?;
    let space = if companion {
        companion_space(&p).map_err(|e| e.to_string())?
    } else {
        braiding_from_yd(&construct(&p).map_err(|e| e.to_string())?, &p).map_err(|e| e.to_string())?
    };
    let budget = Budget { max_rows: 4096, max_time: Some(Duration::from_secs(20)) };
    Ok(graded_dims(&space, degree.min(MAX_DEGREE), budget).to_json())
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = classifyTuple)]
pub fn classify_tuple(params: &str) -> Result<String, JsError> {
    to_js(classify_value(params))
}

#[wasm_bindgen(js_name = constructModule)]
pub fn construct_module(params: &str) -> Result<String, JsError> {
    to_js(construct_value(params))
}

#[wasm_bindgen(js_name = hilbertPrefix)]
pub fn hilbert_prefix(params: &str, degree: u32, companion: bool) -> Result<String, JsError> {
    to_js(hilbert_value(params, degree as usize, companion))
}
