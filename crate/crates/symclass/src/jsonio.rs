//! JSON encoding of exact numbers.
//!
//! Rationals appear as `[num, den]` pairs. Integers that fit in an i64 are
//! emitted as JSON numbers; larger ones fall back to decimal strings, and
//! both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::scalar::{Rational, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("expected {expected} at {context}")]
    Shape {
        expected: &'static str,
        context: String,
    },
    #[error("zero denominator at {0}")]
    ZeroDenominator(String),
    #[error("zero coefficient stored in term {0}")]
    ZeroCoefficient(usize),
    #[error("{0}")]
    Other(String),
}

pub fn int_to_value(v: &BigInt) -> Value {
    match i64::try_from(v.clone()) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

pub fn int_from_value(v: &Value, context: &str) -> Result<BigInt, JsonError> {
    if let Some(n) = v.as_i64() {
        return Ok(BigInt::from(n));
    }
    if let Some(s) = v.as_str() {
        return s.parse::<BigInt>().map_err(|_| JsonError::Shape {
            expected: "integer",
            context: context.to_string(),
        });
    }
    Err(JsonError::Shape {
        expected: "integer (number or decimal string)",
        context: context.to_string(),
    })
}

pub fn rational_to_value(r: &Rational) -> Value {
    Value::Array(vec![int_to_value(r.numer()), int_to_value(r.denom())])
}

pub fn rational_from_value(v: &Value, context: &str) -> Result<Rational, JsonError> {
    let arr = v.as_array().ok_or(JsonError::Shape {
        expected: "[num, den] pair",
        context: context.to_string(),
    })?;
    if arr.len() != 2 {
        return Err(JsonError::Shape {
            expected: "[num, den] pair",
            context: context.to_string(),
        });
    }
    let num = int_from_value(&arr[0], context)?;
    let den = int_from_value(&arr[1], context)?;
    if den.is_zero() {
        return Err(JsonError::ZeroDenominator(context.to_string()));
    }
    Ok(Rational::new(num, den))
}

pub fn scalar_to_value(s: &Scalar) -> Value {
    json!({
        "re": rational_to_value(&s.re),
        "im": rational_to_value(&s.im),
    })
}

pub fn scalar_from_value(v: &Value, context: &str) -> Result<Scalar, JsonError> {
    let obj = v.as_object().ok_or(JsonError::Shape {
        expected: "{re, im} object",
        context: context.to_string(),
    })?;
    let re = obj.get("re").ok_or(JsonError::Shape {
        expected: "re field",
        context: context.to_string(),
    })?;
    let im = obj.get("im").ok_or(JsonError::Shape {
        expected: "im field",
        context: context.to_string(),
    })?;
    Ok(Scalar::new(
        rational_from_value(re, context)?,
        rational_from_value(im, context)?,
    ))
}
