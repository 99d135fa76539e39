//! Browser bindings. Every export returns a JSON string; failures come back
//! as `{"error": "..."}` rather than exceptions.

use std::cell::OnceCell;

use carlitz_codes::dirichlet::{admissible, check_bounds, find_prime, COUNT_GUARD};
use carlitz_codes::repro::{example_code, example_message, format_fqm};
use carlitz_codes::{BaseField, CodeInstance, PolyRing, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

thread_local! {
    static EXAMPLE: OnceCell<std::result::Result<CodeInstance, String>> = const { OnceCell::new() };
}

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn ring(q: u32) -> Result<PolyRing> {
    Ok(PolyRing::new(BaseField::with_order(q as u64)?))
}

/// Smallest `P = u h + a` of degree `m` in the search order.
#[wasm_bindgen]
pub fn search_prime(q: u32, h: &str, m: u32, a: &str) -> String {
    respond((|| {
        let ring = ring(q)?;
        let h = ring.parse(h)?;
        let a = ring.parse(a)?;
        let rep = find_prime(&ring, &h, m as usize, &a)?;
        let adm = admissible(q as u64, m as usize, h.degree().unwrap_or(0)).ok();
        Ok(json!({
            "found": rep.found.as_ref().map(|p| ring.display(p)),
            "u": rep.u.as_ref().map(|u| ring.display(u)),
            "tested": rep.tested.to_string(),
            "admissible": adm.as_ref().map(|a| a.admissible),
            "rhs": adm.as_ref().map(|a| a.rhs),
        }))
    })())
}

/// Encodes a message of the q = 5, m = 10 instance (seed 0 is the fixed
/// message, others are random), erases the 1-based `columns` and recovers.
#[wasm_bindgen]
pub fn erase_recover(seed: u32, columns: &str) -> String {
    EXAMPLE.with(|cell| {
        let code = cell.get_or_init(|| example_code().map_err(|e| e.to_string()));
        match code {
            Ok(code) => respond(run_erase_recover(code, seed, columns)),
            Err(e) => json!({ "error": e }).to_string(),
        }
    })
}

fn run_erase_recover(code: &CodeInstance, seed: u32, columns: &str) -> Result<Value> {
    let msg = if seed == 0 {
        example_message(code)?
    } else {
        code.random_message(&mut ChaCha8Rng::seed_from_u64(seed as u64))
    };
    let mut cols = Vec::new();
    for c in columns.split(',').map(str::trim).filter(|c| !c.is_empty()) {
        match c.parse::<usize>() {
            Ok(i) if (1..=code.n()).contains(&i) => cols.push(i - 1),
            _ => {
                return Err(carlitz_codes::Error::Parse(format!(
                    "column {c:?} is not in 1..={}",
                    code.n()
                )))
            }
        }
    }
    let word = code.encode(&msg)?;
    let erased = word.erase(&cols)?;
    let show = |w: &carlitz_codes::Codeword| -> Vec<Option<String>> {
        w.entries
            .iter()
            .map(|e| e.as_ref().map(|x| format_fqm(&code.tower, x)))
            .collect()
    };
    let (recovered, error) = match code.recover(&erased) {
        Ok(w) => (Some(show(&w)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(json!({
        "groups": code.locality_sets.iter()
            .map(|s| s.iter().map(|i| i + 1).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "codeword": show(&word),
        "erased": show(&erased),
        "recovered": recovered,
        "matches": recovered.as_ref().map(|r| *r == show(&word)),
        "error": error,
    }))
}

/// Progression counts against the explicit bound for `m = 1..=max_m`,
/// stopping once enumeration would exceed the guard.
#[wasm_bindgen]
pub fn dirichlet_curve(q: u32, h: &str, a: &str, max_m: u32) -> String {
    respond((|| {
        let ring = ring(q)?;
        let h = ring.parse(h)?;
        let a = ring.parse(a)?;
        let dh = h.degree().unwrap_or(0);
        let mut points = Vec::new();
        for m in 1..=max_m as usize {
            if m > dh && (q as f64).powi((m - dh) as i32) > COUNT_GUARD as f64 {
                break;
            }
            let rep = check_bounds(&ring, &h, m, &a)?;
            let p = &rep.progression;
            points.push(json!({
                "m": m,
                "count": p.count.to_string(),
                "main": p.main_term,
                "deviation": p.deviation,
                "bound": p.bound,
                "pass": rep.pass(),
            }));
        }
        Ok(json!({ "totient": ring.totient(&h)?.to_string(), "points": points }))
    })())
}
