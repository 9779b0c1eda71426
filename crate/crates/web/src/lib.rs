//! Browser bindings: quadratic field data, a single theta valuation and
//! discriminant sweeps, each returned as a JSON string.

use std::cell::RefCell;
use std::collections::HashMap;

use eistwist::arith::LogMap;
use eistwist::eisenstein::DEFAULT_N_MAX;
use eistwist::harness::{even_row, odd_row, sweep_even_on, sweep_odd_on, LevelData};
use eistwist::modsym::Sign;
use eistwist::quadfield::{class_number, profile, Discriminant};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

thread_local! {
    static LEVELS: RefCell<HashMap<(u64, u64, Sign), LevelData>> = RefCell::new(HashMap::new());
}

fn with_level<T>(
    n: u64,
    p: u64,
    sign: Sign,
    f: impl FnOnce(&LevelData) -> eistwist::Result<T>,
) -> eistwist::Result<T> {
    LEVELS.with(|cell| {
        let mut map = cell.borrow_mut();
        if let std::collections::hash_map::Entry::Vacant(e) = map.entry((n, p, sign)) {
            let level = LevelData::build(n, p, sign, DEFAULT_N_MAX)?;
            e.insert(level);
        }
        f(&map[&(n, p, sign)])
    })
}

fn to_js(r: eistwist::Result<Value>) -> Result<String, JsError> {
    r.map(|v| v.to_string())
        .map_err(|e| JsError::new(&e.to_string()))
}

pub fn quad_field_json(n: u64, p: u64, d: i64) -> eistwist::Result<Value> {
    let disc = Discriminant::new(d)?;
    if d < 0 {
        let h = class_number(disc);
        return Ok(json!({ "D": d, "h": h, "h_mod_p": h % p }));
    }
    let log = LogMap::new(n, p)?;
    Ok(serde_json::to_value(profile(d, n, p, &log)?)?)
}

pub fn theta_json(n: u64, p: u64, d: i64) -> eistwist::Result<Value> {
    let sign = if d > 0 { Sign::Plus } else { Sign::Minus };
    with_level(n, p, sign, |level| {
        let row = match sign {
            Sign::Plus => even_row(level, d)?,
            Sign::Minus => odd_row(level, d)?,
        };
        let theta = level.space.theta_element(Discriminant::new(d)?)?;
        let mut v = row.to_json();
        v["theta_coords"] = json!(theta
            .coords
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>());
        v["g_p"] = json!(level.g_p);
        Ok(v)
    })
}

pub fn sweep_json(n: u64, p: u64, d_min: i64, d_max: i64) -> eistwist::Result<Value> {
    let sign = if d_max > 0 { Sign::Plus } else { Sign::Minus };
    with_level(n, p, sign, |level| {
        let rep = match sign {
            Sign::Plus => sweep_even_on(level, d_min.max(1), d_max, Some(1))?,
            Sign::Minus => sweep_odd_on(level, d_min, d_max, Some(1))?,
        };
        Ok(rep.to_json())
    })
}

/// Class number, unit residues and logarithms for `Q(sqrt D)`.
#[wasm_bindgen]
pub fn quad_field(n: u32, p: u32, d: i32) -> Result<String, JsError> {
    to_js(quad_field_json(n.into(), p.into(), d.into()))
}

/// Sweep row for a single discriminant, with the theta coordinates.
#[wasm_bindgen]
pub fn theta_valuation(n: u32, p: u32, d: i32) -> Result<String, JsError> {
    to_js(theta_json(n.into(), p.into(), d.into()))
}

/// Even sweep when `d_max > 0`, odd sweep otherwise.
#[wasm_bindgen]
pub fn sweep(n: u32, p: u32, d_min: i32, d_max: i32) -> Result<String, JsError> {
    to_js(sweep_json(n.into(), p.into(), d_min.into(), d_max.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_outputs() {
        let q = quad_field_json(11, 5, 12).unwrap();
        assert_eq!(q["h"], 1);
        let t = theta_json(11, 5, 12).unwrap();
        assert_eq!(t["eis_valuation"], "1");
        assert_eq!(t["consistent"], true);
        let s = sweep_json(11, 5, 1, 100).unwrap();
        assert_eq!(s["summary"]["total"], 9);
        let o = sweep_json(11, 5, -50, -1).unwrap();
        assert_eq!(o["summary"]["failed"], 0);
        assert!(theta_json(13, 5, 12).is_err());
    }
}
