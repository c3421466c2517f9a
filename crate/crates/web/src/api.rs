//! Demo operations as plain functions from definition text to JSON.

use serde_json::{json, Value};

use nilsoliton_core::algebra_file::{parse_algebra_file, print_algebra, AlgebraFile};
use nilsoliton_core::catalog::{builtin, classification_entry, AlgebraId};
use nilsoliton_core::curvature::{CurvatureData, Formula};
use nilsoliton_core::liealg::{Matrix, Sample};
use nilsoliton_core::soliton::{numeric_soliton_oracle, obstruction_system};

type Result<T> = std::result::Result<T, String>;

fn load(source: &str) -> Result<AlgebraFile> {
    parse_algebra_file(source).map_err(|e| e.to_string())
}

/// A non-blank `sample` overrides the file's own `sample` lines.
fn sample_for(file: &AlgebraFile, sample: &str) -> Result<Option<Sample>> {
    if sample.trim().is_empty() {
        Ok(file.sample.clone())
    } else {
        Sample::parse(sample).map(Some).map_err(|e| e.to_string())
    }
}

fn rows<T>(m: &Matrix<T>, show: impl Fn(&T) -> String) -> Value {
    m.rows()
        .map(|r| r.iter().map(&show).collect::<Vec<_>>())
        .collect()
}

pub fn builtin_ids() -> Value {
    AlgebraId::ALL
        .iter()
        .map(|id| json!({ "id": id.as_str(), "verdict": classification_entry(*id).verdict.as_str() }))
        .collect()
}

pub fn builtin_source(id: &str) -> Result<String> {
    builtin(id).map(|g| print_algebra(&g)).map_err(|e| e.to_string())
}

/// `{label, dim, symbolic, matrix, scalar}`; symbolic when no sample is given.
pub fn ricci(source: &str, sample: &str) -> Result<Value> {
    let file = load(source)?;
    let g = &file.algebra;
    let out = match sample_for(&file, sample)? {
        None => {
            let d = CurvatureData::compute(g.lie(), Formula::Nilpotent);
            (true, rows(&d.ricci_operator, |p| p.pretty()), d.scalar.pretty())
        }
        Some(s) => {
            let lie = g.evaluate(&s).map_err(|e| e.to_string())?;
            let d = CurvatureData::compute(&lie, Formula::Nilpotent);
            (false, rows(&d.ricci_operator, ToString::to_string), d.scalar.to_string())
        }
    };
    Ok(json!({
        "label": g.label(),
        "dim": g.dim(),
        "symbolic": out.0,
        "matrix": out.1,
        "scalar": out.2,
    }))
}

/// `{label, generators: [{equation, pair, coordinate}]}`, 1-based indices.
pub fn system(source: &str) -> Result<Value> {
    let file = load(source)?;
    let sys = obstruction_system(&file.algebra);
    let generators: Vec<Value> = sys
        .iter()
        .map(|(p, origin)| {
            json!({
                "equation": p.pretty(),
                "pair": [origin.pair.0 + 1, origin.pair.1 + 1],
                "coordinate": origin.coordinate + 1,
            })
        })
        .collect();
    Ok(json!({ "label": file.algebra.label(), "generators": generators }))
}

/// `{status, mu, residual, derivation}`; `derivation` is null when infeasible.
pub fn check(source: &str, sample: &str) -> Result<Value> {
    let file = load(source)?;
    let s = sample_for(&file, sample)?.unwrap_or_default();
    let v = numeric_soliton_oracle(&file.algebra, &s).map_err(|e| e.to_string())?;
    Ok(json!({
        "status": v.status.as_str(),
        "mu": v.best_mu.to_string(),
        "mu_approx": nilsoliton_core::ratpoly::Field::to_f64(&v.best_mu),
        "residual": v.residual_norm,
        "derivation": v.witness_d.as_ref().map(|d| rows(d, ToString::to_string)),
    }))
}
