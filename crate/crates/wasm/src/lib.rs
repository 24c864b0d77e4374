//! Browser bindings: orbit data, the SU(2) theorem residuals and the
//! commutator curve. Every function returns a JSON string.

use serde_json::json;
use wasm_bindgen::prelude::*;

use orbitq::orbit::build_orbit;
use orbitq::quantize::{build_su2_quadrature, verify_theorem, RuleSpec, Shift};
use orbitq::repr::build_lie_basis;
use orbitq::rootsys::{build_root_system, weyl_dim, WeightVec};
use orbitq::star::commutator_defect;
use orbitq::OrbitSpec;

// Keeps the page responsive; the core default cap is far larger.
const MAX_DIM: u64 = 200;

fn err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn orbit(n: usize, weight: &[i64]) -> Result<OrbitSpec, JsError> {
    let rs = build_root_system(n).map_err(err)?;
    let basis = build_lie_basis(n).map_err(err)?;
    if weight.len() + 1 != n {
        return Err(JsError::new(&format!("SU({n}) weights have {} coordinates", n - 1)));
    }
    build_orbit(&rs, &basis, &WeightVec::from_ints(weight)).map_err(err)
}

fn strings(w: &WeightVec) -> Vec<String> {
    w.coords.iter().map(|c| c.to_string()).collect()
}

#[wasm_bindgen]
pub fn orbit_info(n: usize, weight: Vec<i64>, max_level: u32) -> Result<String, JsError> {
    let spec = orbit(n, &weight)?;
    let mut levels = Vec::new();
    for m in 1..=max_level.max(1) {
        let level = spec.at_level(m).map_err(err)?;
        let dim = weyl_dim(&level.rs, &level.xi).map_err(err)?;
        levels.push(json!({ "level": m, "dim": dim, "shifted_weight": strings(&level.karabegov_shift) }));
    }
    Ok(json!({
        "xi": strings(&spec.xi),
        "real_dim": spec.real_dim(),
        "complementary_roots": spec.complementary_roots.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "delta": strings(&spec.delta),
        "two_delta": strings(&spec.two_delta()),
        "einstein_lambda": spec.einstein_lambda.map(|l| l.to_string()),
        "levels": levels,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn theorem_residuals(k: i64, m: u32, plain: bool) -> Result<String, JsError> {
    let spec = orbit(2, &[k])?;
    let dim = (k as u64) * (m as u64) + 1;
    if dim > MAX_DIM {
        return Err(JsError::new(&format!("dimension {dim} is above the demo limit {MAX_DIM}")));
    }
    let rule = build_su2_quadrature(2 * (dim as usize + 1)).map_err(err)?;
    let shift = if plain { Shift::Plain } else { Shift::Karabegov };
    let r = verify_theorem(&spec, m, &rule, 1e-8, shift).map_err(err)?;
    let rows: Vec<_> = r
        .records
        .iter()
        .map(|d| json!({ "direction": d.direction, "residual": d.residual, "beta_norm": d.beta_norm }))
        .collect();
    let eta = shift.eta(&spec.at_level(m).map_err(err)?);
    Ok(json!({ "dim": r.dim, "eta": strings(&eta), "rule": r.rule, "pass": r.pass, "rows": rows }).to_string())
}

#[wasm_bindgen]
pub fn star_curve(k: i64, max_level: u32) -> Result<String, JsError> {
    let spec = orbit(2, &[k])?;
    let levels: Vec<u32> = (1..=max_level).collect();
    if (k as u64) * (max_level as u64) + 1 > MAX_DIM {
        return Err(JsError::new(&format!("levels above {} exceed the demo limit", (MAX_DIM - 1) / k.max(1) as u64)));
    }
    let (x, y) = (spec.basis.unit_vector(1), spec.basis.unit_vector(2));
    let rule = RuleSpec::Su2Euler { order: None, reduced: false };
    let s = commutator_defect(&spec, &x, &y, &levels, &rule, true).map_err(err)?;
    Ok(json!({ "levels": s.levels, "dims": s.dims, "defects": s.norms, "slope": s.fitted_slope }).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outputs_are_json() {
        let info: serde_json::Value = serde_json::from_str(&orbit_info(3, vec![1, 0], 2).unwrap()).unwrap();
        assert_eq!(info["levels"][1]["dim"], 6);
        let t: serde_json::Value = serde_json::from_str(&theorem_residuals(1, 2, false).unwrap()).unwrap();
        assert_eq!(t["pass"], true);
        let c: serde_json::Value = serde_json::from_str(&star_curve(1, 4).unwrap()).unwrap();
        assert_eq!(c["defects"].as_array().unwrap().len(), 4);
    }
}
