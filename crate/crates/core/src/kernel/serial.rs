//! Exact-string JSON encodings: rationals as `"p/q"`, Gaussian rationals as
//! `{"re": .., "im": ..}`, matrices as row-major arrays.

use serde_json::{json, Value};

use super::matrix::Matrix;
use super::scalar::{format_rational, parse_rational, Rational, Scalar};
use crate::error::{Error, Result};

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    json!({ "re": format_rational(s.re()), "im": format_rational(s.im()) })
}

/// Real scalars are written as bare rational strings, others as objects.
pub fn scalar_to_json_compact(s: &Scalar) -> Value {
    if s.is_real() {
        rational_to_json(s.re())
    } else {
        scalar_to_json(s)
    }
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(Scalar::real(parse_rational(s)?)),
        Value::Number(n) => Ok(Scalar::real(parse_rational(&n.to_string())?)),
        Value::Object(map) => {
            let part = |k: &str| -> Result<Rational> {
                match map.get(k) {
                    None => Ok(Rational::from_integer(0.into())),
                    Some(Value::String(s)) => parse_rational(s),
                    Some(Value::Number(n)) => parse_rational(&n.to_string()),
                    Some(other) => Err(Error::Parse(format!("bad scalar part {other}"))),
                }
            };
            Ok(Scalar::new(part("re")?, part("im")?))
        }
        other => Err(Error::Parse(format!("bad scalar {other}"))),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(scalar_to_json_compact).collect()))
            .collect(),
    )
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json_compact).collect())
}

/// Row-major JSON array into a matrix; reports the offending position on failure.
pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("matrix row {r} is not an array")))?;
        let mut parsed = Vec::with_capacity(row.len());
        for (c, x) in row.iter().enumerate() {
            parsed.push(
                scalar_from_json(x)
                    .map_err(|e| Error::Parse(format!("matrix entry ({r}, {c}): {e}")))?,
            );
        }
        out.push(parsed);
    }
    Matrix::from_rows(out)
}
