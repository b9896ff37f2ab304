//! JSON report fragments. Rationals are written as strings (`"p/q"`),
//! matrices densely, row-major.

use faithful_core::bounds::MuEstimate;
use faithful_core::lie::{verify_representation, LieAlgebra, Representation};
use faithful_core::linalg::{Matrix, Scalar};
use serde_json::{json, Value};

use crate::format::{parse_rational, AlgebraFile, Bracket};

pub fn rational(c: &Scalar) -> Value {
    Value::String(c.to_string())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(rational).collect()))
            .collect(),
    )
}

pub fn algebra(file: &AlgebraFile) -> Value {
    let brackets: Vec<Value> = file
        .brackets
        .iter()
        .map(|b| {
            let terms: Vec<Value> = b
                .terms
                .iter()
                .map(|(k, c)| json!({"k": k, "c": rational(c)}))
                .collect();
            json!({"i": b.i, "j": b.j, "terms": terms})
        })
        .collect();
    json!({
        "dim": file.dim,
        "labels": file.labels,
        "brackets": brackets,
    })
}

pub fn module(names: &[String], rho: &Representation) -> Value {
    json!({
        "dim": rho.dim(),
        "basis": names,
        "matrices": rho.matrices().iter().map(matrix).collect::<Vec<_>>(),
    })
}

pub fn verification(l: &LieAlgebra, rho: &Representation) -> Value {
    let v = verify_representation(l, rho);
    json!({
        "is_module": v.is_module,
        "failing_pair": v.failing_pair.map(|(i, j)| vec![i, j]),
        "kernel_dim": v.kernel.dim(),
        "faithful": v.is_faithful_module(),
    })
}

pub fn mu(est: &MuEstimate) -> Value {
    let sources: Vec<Value> = est
        .sources
        .iter()
        .map(|s| json!({"name": s.name, "value": s.value.to_string(), "rule": s.rule}))
        .collect();
    json!({
        "lower": est.lower.to_string(),
        "upper": est.upper.as_ref().map(|u| u.to_string()),
        "consistent": est.is_consistent(),
        "sources": sources,
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, String> {
    v.get(key).ok_or_else(|| format!("missing field '{key}'"))
}

fn usize_field(v: &Value, key: &str) -> Result<usize, String> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| format!("field '{key}' is not a non-negative integer"))
}

fn rational_value(v: &Value) -> Result<Scalar, String> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(format!("not a rational: {v}")),
    }
}

/// Inverse of [`algebra`].
pub fn algebra_from_json(v: &Value) -> Result<AlgebraFile, String> {
    let dim = usize_field(v, "dim")?;
    let labels = match v.get("labels") {
        None | Some(Value::Null) => None,
        Some(Value::Array(a)) => Some(
            a.iter()
                .map(|x| {
                    x.as_str()
                        .map(String::from)
                        .ok_or("label is not a string".to_string())
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Some(_) => return Err("labels must be an array".into()),
    };
    let mut brackets = Vec::new();
    for b in field(v, "brackets")?
        .as_array()
        .ok_or("brackets must be an array")?
    {
        let (i, j) = (usize_field(b, "i")?, usize_field(b, "j")?);
        if !(1 <= i && i < j && j <= dim) {
            return Err(format!("bad bracket pair [{i},{j}]"));
        }
        let mut terms = Vec::new();
        for t in field(b, "terms")?.as_array().ok_or("terms must be an array")? {
            let k = usize_field(t, "k")?;
            if !(1..=dim).contains(&k) {
                return Err(format!("term index {k} out of range"));
            }
            terms.push((k, rational_value(field(t, "c")?)?));
        }
        brackets.push(Bracket { i, j, terms });
    }
    Ok(AlgebraFile {
        dim,
        labels,
        brackets,
    })
}

/// Inverse of [`module`]: `(names, representation)`.
pub fn module_from_json(v: &Value) -> Result<(Vec<String>, Representation), String> {
    let dim = usize_field(v, "dim")?;
    let names = match v.get("basis") {
        Some(Value::Array(a)) => a
            .iter()
            .map(|x| {
                x.as_str()
                    .map(String::from)
                    .ok_or("basis name is not a string".to_string())
            })
            .collect::<Result<Vec<_>, _>>()?,
        _ => (1..=dim).map(|k| format!("e{k}")).collect(),
    };
    let mut matrices = Vec::new();
    for m in field(v, "matrices")?
        .as_array()
        .ok_or("matrices must be an array")?
    {
        let rows = m.as_array().ok_or("matrix must be an array of rows")?;
        let parsed: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or("row must be an array".to_string())?
                    .iter()
                    .map(rational_value)
                    .collect()
            })
            .collect::<Result<_, String>>()?;
        if parsed.len() != dim || parsed.iter().any(|r| r.len() != dim) {
            return Err(format!("matrix is not {dim}x{dim}"));
        }
        matrices.push(Matrix::from_rows_with_cols(parsed, dim));
    }
    let rho = Representation::new(dim, matrices).map_err(|e| e.to_string())?;
    Ok((names, rho))
}
