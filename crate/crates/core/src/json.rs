//! JSON documents for triple systems, circle tables and tripotents.
//!
//! Every document carries `"schema": "1"`. Scalars are arrays of four
//! rationals `[1, √2, √3, √6]`, each a string `"p/q"` or an integer.
//! Parse errors name the offending location, e.g. `constants[3].value[1]`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::left_unit::{CircleAlgebra, GradedSpace};
use crate::linalg::Vector;
use crate::scalar::{parse_rational, Scalar};
use crate::triple::TripleSystem;

pub const SCHEMA_VERSION: &str = "1";

pub fn scalar_to_json(s: &Scalar) -> Value {
    json!(s.to_text())
}

pub fn vector_to_json(v: &Vector) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn system_to_json(s: &TripleSystem) -> Value {
    let constants: Vec<Value> = s
        .constants()
        .map(|((i, j, k), v)| json!({"i": i, "j": j, "k": k, "value": vector_to_json(&v)}))
        .collect();
    json!({
        "schema": SCHEMA_VERSION,
        "dim": s.dim(),
        "label": s.label(),
        "constants": constants,
    })
}

pub fn circle_to_json(c: &CircleAlgebra, unit: Option<&Vector>) -> Value {
    let g = c.space();
    let circle: Vec<Value> = c
        .constants()
        .map(|((i, j), v)| json!({"i": i, "j": j, "value": vector_to_json(&v)}))
        .collect();
    let mut doc = json!({
        "schema": SCHEMA_VERSION,
        "dims": {"u11p": g.u11p, "u11m": g.u11m, "u13p": g.u13p, "u13m": g.u13m},
        "circle": circle,
    });
    if let Some(u) = unit {
        doc["unit"] = vector_to_json(u);
    }
    doc
}

fn parse_value(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::schema(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(path, "expected an array"))
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

fn index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::schema(path, "expected a nonnegative integer"))
}

fn check_schema(obj: &Map<String, Value>) -> Result<()> {
    match field(obj, "schema", "")? {
        Value::String(s) if s == SCHEMA_VERSION => Ok(()),
        other => Err(Error::schema("schema", format!("unsupported schema version {other}, expected \"1\""))),
    }
}

fn parse_coefficient(v: &Value, path: &str) -> Result<crate::scalar::Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(Error::schema(path, "expected a rational string \"p/q\" or an integer")),
    };
    parse_rational(&text).map_err(|_| Error::schema(path, format!("invalid rational {text:?}")))
}

pub fn parse_scalar(v: &Value, path: &str) -> Result<Scalar> {
    let parts = array(v, path)?;
    if parts.len() != 4 {
        return Err(Error::schema(path, format!("expected 4 coefficients, found {}", parts.len())));
    }
    let mut c = Vec::with_capacity(4);
    for (i, p) in parts.iter().enumerate() {
        c.push(parse_coefficient(p, &format!("{path}[{i}]"))?);
    }
    let [a, b, cc, d]: [_; 4] = c.try_into().expect("length checked");
    Ok(Scalar::new(a, b, cc, d))
}

pub fn parse_vector(v: &Value, dim: usize, path: &str) -> Result<Vector> {
    let entries = array(v, path)?;
    if entries.len() != dim {
        return Err(Error::schema(path, format!("expected {dim} entries, found {}", entries.len())));
    }
    entries
        .iter()
        .enumerate()
        .map(|(i, e)| parse_scalar(e, &format!("{path}[{i}]")))
        .collect()
}

fn bounded(v: &Value, dim: usize, path: &str) -> Result<usize> {
    let i = index(v, path)?;
    if i >= dim {
        return Err(Error::schema(path, format!("index {i} out of range for dimension {dim}")));
    }
    Ok(i)
}

pub fn parse_system(text: &str) -> Result<TripleSystem> {
    let doc = parse_value(text)?;
    let obj = object(&doc, "")?;
    check_schema(obj)?;
    let dim = index(field(obj, "dim", "")?, "dim")?;
    if dim == 0 {
        return Err(Error::schema("dim", "dimension must be positive"));
    }
    let label = match obj.get("label") {
        None => "input".to_string(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(Error::schema("label", "expected a string")),
    };
    let mut s = TripleSystem::zero(dim, label);
    for (n, entry) in array(field(obj, "constants", "")?, "constants")?.iter().enumerate() {
        let path = format!("constants[{n}]");
        let e = object(entry, &path)?;
        let mut ijk = [0usize; 3];
        for (slot, key) in ijk.iter_mut().zip(["i", "j", "k"]) {
            *slot = bounded(field(e, key, &path)?, dim, &join(&path, key))?;
        }
        let value = parse_vector(field(e, "value", &path)?, dim, &join(&path, "value"))?;
        s.set_constant(ijk[0], ijk[1], ijk[2], &value)?;
    }
    Ok(s)
}

/// A circle table document, with the optional tripotent in graded coordinates.
pub fn parse_circle(text: &str) -> Result<(CircleAlgebra, Option<Vector>)> {
    let doc = parse_value(text)?;
    let obj = object(&doc, "")?;
    check_schema(obj)?;
    let dims = object(field(obj, "dims", "")?, "dims")?;
    let mut d = [0usize; 4];
    for (slot, key) in d.iter_mut().zip(["u11p", "u11m", "u13p", "u13m"]) {
        *slot = index(field(dims, key, "dims")?, &join("dims", key))?;
    }
    let space = GradedSpace::new(d[0], d[1], d[2], d[3]);
    let n = space.dim();
    if n == 0 {
        return Err(Error::schema("dims", "total dimension must be positive"));
    }
    let mut c = CircleAlgebra::zero(space);
    for (m, entry) in array(field(obj, "circle", "")?, "circle")?.iter().enumerate() {
        let path = format!("circle[{m}]");
        let e = object(entry, &path)?;
        let i = index(field(e, "i", &path)?, &join(&path, "i"))?;
        let j = index(field(e, "j", &path)?, &join(&path, "j"))?;
        let value = parse_vector(field(e, "value", &path)?, n, &join(&path, "value"))?;
        c.set_constant(i, j, &value)?;
    }
    let unit = obj.get("unit").map(|u| parse_vector(u, n, "unit")).transpose()?;
    Ok((c, unit))
}

/// A tripotent given either as a bare array of scalars or as `{"tripotent": [...]}`.
pub fn parse_tripotent(text: &str, dim: usize) -> Result<Vector> {
    let doc = parse_value(text)?;
    match &doc {
        Value::Array(_) => parse_vector(&doc, dim, ""),
        Value::Object(obj) => parse_vector(field(obj, "tripotent", "")?, dim, "tripotent"),
        _ => Err(Error::schema("", "expected an array of scalars or an object with \"tripotent\"")),
    }
}
