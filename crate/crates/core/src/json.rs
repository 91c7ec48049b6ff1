//! JSON encodings of spaces, measures, functions, maps and reports.
//!
//! Measures: `{"space": [...], "kind": "idempotent"|"classical", "weights":
//! {"a": 0.0, "b": "-inf"}}`, with an optional `"renormalize": true` to shift
//! (idempotent) or rescale (classical) the weights instead of rejecting them.
//! Functions: `{"space": [...], "values": {...}}`. Maps: `{"domain": [...],
//! "codomain": [...], "map": {"a": "a", ...}}`. Piecewise-linear functions on
//! `[0, 1]`: `{"breakpoints": [[0.0, 0.0], [1.0, -1.0]], "lipschitz": 1.0}`.
//!
//! Output numbers are rounded to 12 significant digits; integral values print
//! without a fractional part. `Bottom` is the string `"-inf"`.

use serde_json::{json, Map, Number, Value};

use crate::counterexample::CounterexampleReport;
use crate::density::{ConvergenceReport, PiecewiseLinear};
use crate::error::{Error, Result};
use crate::functor::PointMap;
use crate::maxplus::MaxPlus;
use crate::measure::{normalize_idempotent, ClassicalMeasure, IdempotentMeasure, Measure};
use crate::space::{FiniteSpace, TestFunction};

const BOTTOM: &str = "-inf";

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::schema(path, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::schema(join(path, k), "unknown field")),
        None => Ok(()),
    }
}

fn number(v: &Value, path: &str) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::schema(path, "expected a finite number"))
}

fn maxplus(v: &Value, path: &str) -> Result<MaxPlus> {
    match v {
        Value::String(s) if s == BOTTOM => Ok(MaxPlus::Bottom),
        Value::Number(_) => Ok(MaxPlus::Finite(number(v, path)?)),
        _ => Err(Error::schema(path, "expected a number or \"-inf\"")),
    }
}

pub fn space_from_json(v: &Value, path: &str) -> Result<FiniteSpace> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::schema(path, "expected an array of labels"))?;
    let labels = items
        .iter()
        .enumerate()
        .map(|(i, l)| {
            l.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::schema(format!("{path}[{i}]"), "expected a string"))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteSpace::new(labels).map_err(|e| Error::schema(path, e.to_string()))
}

/// One entry per space point, looked up by label.
fn per_point<T>(
    space: &FiniteSpace,
    v: &Value,
    path: &str,
    parse: impl Fn(&Value, &str) -> Result<T>,
) -> Result<Vec<T>> {
    let obj = object(v, path)?;
    if let Some(k) = obj.keys().find(|k| !space.contains(k)) {
        return Err(Error::schema(join(path, k), "label not in space"));
    }
    space
        .labels()
        .iter()
        .map(|l| {
            let p = join(path, l);
            let item = obj
                .get(l)
                .ok_or_else(|| Error::schema(&p, "missing weight"))?;
            parse(item, &p)
        })
        .collect()
}

pub fn measure_from_json(v: &Value) -> Result<Measure> {
    let obj = object(v, "")?;
    reject_unknown(obj, &["space", "kind", "weights", "renormalize"], "")?;
    let space = space_from_json(field(obj, "space", "")?, "space")?;
    let renormalize = match obj.get("renormalize") {
        None => false,
        Some(b) => b
            .as_bool()
            .ok_or_else(|| Error::schema("renormalize", "expected a boolean"))?,
    };
    let weights = field(obj, "weights", "")?;
    let wrap = |e: Error| match e {
        e @ Error::Schema { .. } => e,
        e => Error::schema("weights", e.to_string()),
    };
    match field(obj, "kind", "")?.as_str() {
        Some("idempotent") => {
            let w = per_point(&space, weights, "weights", maxplus)?;
            let m = if renormalize {
                normalize_idempotent(space, w)
            } else {
                IdempotentMeasure::new(space, w)
            };
            Ok(m.map_err(wrap)?.into())
        }
        Some("classical") => {
            let w = per_point(&space, weights, "weights", number)?;
            let m = if renormalize {
                ClassicalMeasure::renormalized(space, w)
            } else {
                ClassicalMeasure::new(space, w)
            };
            Ok(m.map_err(wrap)?.into())
        }
        _ => Err(Error::schema(
            "kind",
            "expected \"idempotent\" or \"classical\"",
        )),
    }
}

pub fn function_from_json(v: &Value) -> Result<TestFunction> {
    let obj = object(v, "")?;
    reject_unknown(obj, &["space", "values"], "")?;
    let space = space_from_json(field(obj, "space", "")?, "space")?;
    let values = per_point(&space, field(obj, "values", "")?, "values", number)?;
    TestFunction::new(space, values).map_err(|e| Error::schema("values", e.to_string()))
}

pub fn map_from_json(v: &Value) -> Result<PointMap> {
    let obj = object(v, "")?;
    reject_unknown(obj, &["domain", "codomain", "map"], "")?;
    let domain = space_from_json(field(obj, "domain", "")?, "domain")?;
    let codomain = space_from_json(field(obj, "codomain", "")?, "codomain")?;
    let image = per_point(&domain, field(obj, "map", "")?, "map", |t, p| {
        let label = t
            .as_str()
            .ok_or_else(|| Error::schema(p, "expected a label"))?;
        codomain
            .index_of(label)
            .map_err(|_| Error::schema(p, format!("{label:?} is not in the codomain")))
    })?;
    PointMap::new(domain, codomain, image)
}

pub fn piecewise_from_json(v: &Value) -> Result<PiecewiseLinear> {
    let obj = object(v, "")?;
    reject_unknown(obj, &["breakpoints", "lipschitz"], "")?;
    let pts = field(obj, "breakpoints", "")?
        .as_array()
        .ok_or_else(|| Error::schema("breakpoints", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let path = format!("breakpoints[{i}]");
            match p.as_array().map(Vec::as_slice) {
                Some([x, y]) => Ok((
                    number(x, &format!("{path}[0]"))?,
                    number(y, &format!("{path}[1]"))?,
                )),
                _ => Err(Error::schema(path, "expected a pair [x, y]")),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let lipschitz = number(field(obj, "lipschitz", "")?, "lipschitz")?;
    PiecewiseLinear::new(pts, lipschitz).map_err(|e| Error::schema("breakpoints", e.to_string()))
}

/// Rounds to 12 significant digits for output.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(
            if x.is_nan() {
                "nan"
            } else if x > 0.0 {
                "inf"
            } else {
                BOTTOM
            }
            .into(),
        );
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    if rounded == 0.0 {
        return json!(0);
    }
    if rounded.fract() == 0.0 && rounded.abs() < 1e15 {
        return Value::Number(Number::from(rounded as i64));
    }
    Value::Number(Number::from_f64(rounded).expect("finite"))
}

fn maxplus_value(w: MaxPlus) -> Value {
    match w {
        MaxPlus::Finite(x) => num(x),
        MaxPlus::Bottom => Value::String(BOTTOM.into()),
    }
}

pub fn measure_to_json(m: &Measure) -> Value {
    let space = m.space();
    let weights: Map<String, Value> = match m {
        Measure::Idempotent(m) => space
            .labels()
            .iter()
            .cloned()
            .zip(m.weights().iter().map(|&w| maxplus_value(w)))
            .collect(),
        Measure::Classical(m) => space
            .labels()
            .iter()
            .cloned()
            .zip(m.weights().iter().map(|&w| num(w)))
            .collect(),
    };
    json!({
        "kind": m.kind(),
        "space": space.labels(),
        "weights": weights,
    })
}

pub fn counterexample_to_json(r: &CounterexampleReport) -> Value {
    let w = &r.idempotent_witness;
    json!({
        "classical_injective": r.classical_injective,
        "system_rank": r.system_rank,
        "random_pairs": r.random_pairs,
        "grid_pairs": r.grid_pairs,
        "idempotent_witness": {
            "mu": measure_to_json(&w.mu.clone().into()),
            "nu": measure_to_json(&w.nu.clone().into()),
            "image": [
                measure_to_json(&w.image.0.clone().into()),
                measure_to_json(&w.image.1.clone().into()),
            ],
            "images_equal": r.witness_images_equal,
        },
        "naturality_gap": num(r.naturality_gap),
    })
}

pub fn convergence_to_json(r: &ConvergenceReport) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| json!({"n": row.n, "error": num(row.error), "bound": num(row.bound)}))
        .collect();
    json!({
        "rows": rows,
        "oracle_value": num(r.oracle_value),
        "within_bound": r.within_bound,
        "non_increasing": r.non_increasing,
    })
}
