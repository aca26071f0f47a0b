//! Deterministic JSON output: insertion-ordered keys and every float printed
//! with 17 significant digits.

use std::fmt::Write;

/// `{:.16e}`, or `null` for non-finite values (JSON has no NaN/inf).
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialise")
}

/// A JSON value rendered on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Json(String);

impl Json {
    pub fn num(v: f64) -> Json {
        Json(fmt_f64(v))
    }

    pub fn int(v: usize) -> Json {
        Json(v.to_string())
    }

    pub fn bool(v: bool) -> Json {
        Json(v.to_string())
    }

    pub fn str(s: &str) -> Json {
        Json(quote(s))
    }

    pub fn array(items: impl IntoIterator<Item = Json>) -> Json {
        let parts: Vec<String> = items.into_iter().map(|j| j.0).collect();
        Json(format!("[{}]", parts.join(",")))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Builder for an object with keys in insertion order.
#[derive(Debug, Default, Clone)]
pub struct Object {
    buf: String,
}

impl Object {
    pub fn new() -> Self {
        Object::default()
    }

    pub fn field(mut self, key: &str, value: Json) -> Self {
        if !self.buf.is_empty() {
            self.buf.push(',');
        }
        let _ = write!(self.buf, "{}:{}", quote(key), value.0);
        self
    }

    pub fn num(self, key: &str, v: f64) -> Self {
        self.field(key, Json::num(v))
    }

    pub fn int(self, key: &str, v: usize) -> Self {
        self.field(key, Json::int(v))
    }

    pub fn bool(self, key: &str, v: bool) -> Self {
        self.field(key, Json::bool(v))
    }

    pub fn str(self, key: &str, v: &str) -> Self {
        self.field(key, Json::str(v))
    }

    pub fn build(self) -> Json {
        Json(format!("{{{}}}", self.buf))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_valid_ordered_json() {
        let j = Object::new()
            .num("x", 0.1)
            .int("n", 3)
            .str("msg", "a \"quoted\"\nline")
            .field("list", Json::array([Json::num(1.0), Json::bool(false)]))
            .num("bad", f64::NAN)
            .build();
        let v: serde_json::Value = serde_json::from_str(j.as_str()).unwrap();
        assert_eq!(v["x"].as_f64(), Some(0.1));
        assert_eq!(v["msg"].as_str(), Some("a \"quoted\"\nline"));
        assert!(v["bad"].is_null());
        assert!(j.as_str().starts_with("{\"x\":1.0000000000000001e-1,"));
    }

    #[test]
    fn floats_round_trip() {
        for v in [std::f64::consts::PI, 1e-300, -2.5e17, 0.0] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }
}
