//! JSON encoding of scalars and matrices shared by parameter files and
//! transcripts.
//!
//! Matrices are nested arrays of rows. Entries encode as: integers for `Z_m`,
//! coefficient arrays for group rings, integers or `"inf"` for tropical
//! values, and `"0"/"1"` text for bitstrings.

use serde_json::Value;

use super::{BitString, GroupRingElement, GroupRingParams, Matrix, Semiring, Tropical, ZMod};
use crate::error::{Error, Result};

pub trait JsonScalar: Semiring {
    fn to_json(&self) -> Value;
    fn from_json(params: &Self::Params, v: &Value) -> Result<Self>;
}

fn bad(what: &str, v: &Value) -> Error {
    Error::InvalidParameter(format!("expected {what}, found {v}"))
}

impl JsonScalar for ZMod {
    fn to_json(&self) -> Value {
        Value::from(self.value())
    }

    fn from_json(modulus: &u64, v: &Value) -> Result<Self> {
        if let Some(u) = v.as_u64() {
            Ok(ZMod::new(u, *modulus))
        } else if let Some(i) = v.as_i64() {
            Ok(ZMod::from_i64(i, *modulus))
        } else {
            Err(bad("integer", v))
        }
    }
}

impl JsonScalar for GroupRingElement {
    fn to_json(&self) -> Value {
        Value::from(self.coeffs().to_vec())
    }

    fn from_json(params: &GroupRingParams, v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| bad("coefficient array", v))?;
        let coeffs = arr
            .iter()
            .map(|c| ZMod::from_json(&params.modulus, c).map(|z| z.value()))
            .collect::<Result<Vec<_>>>()?;
        GroupRingElement::new(params, coeffs)
    }
}

impl JsonScalar for Tropical {
    fn to_json(&self) -> Value {
        match self {
            Tropical::Finite(x) => Value::from(*x),
            Tropical::Infinity => Value::from("inf"),
        }
    }

    fn from_json(_: &(), v: &Value) -> Result<Self> {
        match v {
            Value::String(s) if s == "inf" => Ok(Tropical::Infinity),
            _ => v.as_i64().map(Tropical::Finite).ok_or_else(|| bad("integer or \"inf\"", v)),
        }
    }
}

impl JsonScalar for BitString {
    fn to_json(&self) -> Value {
        Value::from(self.to_string())
    }

    fn from_json(len: &u32, v: &Value) -> Result<Self> {
        let s: BitString = v.as_str().ok_or_else(|| bad("bit string", v))?.parse()?;
        if s.len() != *len {
            return Err(Error::InvalidParameter(format!("bit string {s} should have length {len}")));
        }
        Ok(s)
    }
}

pub fn matrix_to_json<S: JsonScalar>(m: &Matrix<S>) -> Value {
    Value::Array(
        m.entries()
            .chunks(m.cols())
            .map(|row| Value::Array(row.iter().map(JsonScalar::to_json).collect()))
            .collect(),
    )
}

/// Decodes a matrix, optionally insisting on a shape.
pub fn matrix_from_json<S: JsonScalar>(
    params: &S::Params,
    v: &Value,
    shape: Option<(usize, usize)>,
) -> Result<Matrix<S>> {
    let rows = v.as_array().ok_or_else(|| bad("array of rows", v))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("row array", r))?
                .iter()
                .map(|e| S::from_json(params, e))
                .collect::<Result<Vec<S>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_rows(rows).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    if let Some((r, c)) = shape {
        if (m.rows(), m.cols()) != (r, c) {
            return Err(Error::InvalidParameter(format!(
                "expected a {r}x{c} matrix, found {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(m)
}
