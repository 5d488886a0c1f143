//! JSON encodings of exact scalars and matrices.

use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Cyclotomic, Quaternion, Rational, Scalar, ScalarKind};

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("invalid rational {s:?}"))),
        Value::Number(n) => n.as_i64().map(Rational::from_integer).ok_or_else(|| Error::Parse(format!("non-integer number {n}"))),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

/// Rationals as "a/b", cyclotomics as {"N", "coeffs"}, quaternions as {"q"}.
pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Cyc(c) => match c.as_rational() {
            Some(q) => rational_to_json(&q),
            None => json!({"N": c.conductor(), "coeffs": c.coeffs().iter().map(rational_to_json).collect::<Vec<_>>()}),
        },
        Scalar::Quat(q) => json!({"q": q.coords().iter().map(rational_to_json).collect::<Vec<_>>()}),
    }
}

pub fn scalar_from_json(v: &Value, kind: ScalarKind) -> Result<Scalar> {
    if let Some(obj) = v.as_object() {
        if let Some(q) = obj.get("q") {
            let c = rational_list(q)?;
            if c.len() != 4 || kind != ScalarKind::Quaternion {
                return Err(Error::Parse("quaternion needs four coordinates in a quaternion matrix".into()));
            }
            return Ok(Scalar::Quat(Quaternion::new(c[0], c[1], c[2], c[3])));
        }
        let n = obj.get("N").and_then(Value::as_u64).ok_or_else(|| Error::Parse("cyclotomic scalar needs \"N\"".into()))?;
        let coeffs = rational_list(obj.get("coeffs").ok_or_else(|| Error::Parse("cyclotomic scalar needs \"coeffs\"".into()))?)?;
        if kind != ScalarKind::Cyclotomic || n == 0 || n > 1 << 16 {
            return Err(Error::Parse(format!("invalid cyclotomic scalar with N = {n}")));
        }
        return Ok(Scalar::Cyc(Cyclotomic::from_coeffs(n as u32, coeffs)));
    }
    let q = rational_from_json(v)?;
    Ok(match kind {
        ScalarKind::Cyclotomic => Scalar::rational(1, q),
        ScalarKind::Quaternion => Scalar::Quat(Quaternion::new(q, 0.into(), 0.into(), 0.into())),
    })
}

fn rational_list(v: &Value) -> Result<Vec<Rational>> {
    v.as_array().ok_or_else(|| Error::Parse("expected an array of rationals".into()))?.iter().map(rational_from_json).collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.rows().iter().map(|r| Value::Array(r.iter().map(scalar_to_json).collect())).collect())
}

/// Reads a row-major matrix; cyclotomic entries are lifted to `conductor`.
pub fn matrix_from_json(v: &Value, kind: ScalarKind, conductor: u32) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(|x| scalar_from_json(x, kind))
                .collect()
        })
        .collect::<Result<_>>()?;
    let m = Matrix::from_rows(rows)?;
    let c = m.conductor();
    if !conductor.is_multiple_of(c) {
        return Err(Error::Parse(format!("entry conductor {c} does not divide the space conductor {conductor}")));
    }
    Ok(m.lift(conductor))
}

/// Parses text as JSON, reporting line and column on failure.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse({
        let msg = e.to_string();
        let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
        format!("line {} column {}: {msg}", e.line(), e.column())
    }))
}
