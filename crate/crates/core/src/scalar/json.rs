use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::{PolyT, Rational, RationalFunctionT};

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn poly_to_json(p: &PolyT) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn poly_from_json(v: &Value) -> Result<PolyT> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("polynomial must be an array".into()))?;
    let coeffs = arr
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| Error::Parse("coefficient must be a string".into()))
                .and_then(parse_rational)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyT::new(coeffs))
}

pub fn ratfunc_to_json(f: &RationalFunctionT) -> Value {
    json!({ "num": poly_to_json(f.num()), "den": poly_to_json(f.den()) })
}

pub fn ratfunc_from_json(v: &Value) -> Result<RationalFunctionT> {
    let num = poly_from_json(&v["num"])?;
    let den = poly_from_json(&v["den"])?;
    RationalFunctionT::normalize(num, den)
}
