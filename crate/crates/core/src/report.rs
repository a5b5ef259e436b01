//! JSON encodings shared by the reports: exact integers as decimal strings,
//! rationals as `{"num", "den"}`, floats rounded to 12 significant digits.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

pub fn rational(r: &BigRational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn sig12(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

pub fn rational_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `x` formatted for CSV with 12 significant digits, empty when absent.
pub fn csv_f64(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_finite() => {
            let r: f64 = format!("{v:.11e}").parse().unwrap_or(v);
            r.to_string()
        }
        _ => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encodings() {
        assert_eq!(big(&BigUint::from(10u32).pow(30)), json!("1000000000000000000000000000000"));
        let r = BigRational::new(6.into(), 4.into());
        assert_eq!(rational(&r), json!({"num": "3", "den": "2"}));
        assert_eq!(sig12(1.0 / 3.0), json!(0.333333333333));
        assert_eq!(sig12(f64::NAN), Value::Null);
        assert_eq!(csv_f64(Some(2.0)), "2");
        assert_eq!(csv_f64(None), "");
    }
}
